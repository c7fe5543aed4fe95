/* Copyright 2026 The RECAP Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#pragma once

#include <memory>
#include <optional>
#include <string>

#include "recap/artifact/config.hpp"

namespace recap::artifact {

struct SandboxRun {
  std::string command;  // run with /bin/sh -c inside the sandbox
  fs::path work_dir;    // the only writable host path
  double limit_s = 300;
};

struct SandboxOutcome {
  bool established = false;  // false: isolation could not be set up
  std::string error;
  bool timed_out = false;
  int exit_code = -1;
  int term_signal = 0;
  double duration_s = 0;
  std::string output;
};

class SandboxRuntime {
 public:
  virtual ~SandboxRuntime() = default;
  virtual std::string name() const = 0;
  // nullopt when usable, else the reason it is not.
  virtual std::optional<std::string> unavailable_reason() const = 0;
  // Work that must not count against the execution budget (image builds).
  virtual std::optional<std::string> prepare(const SandboxConfig&) { return std::nullopt; }
  virtual SandboxOutcome run(const SandboxRun& run, const SandboxConfig& config) = 0;
};

// Namespace runtime: fresh mount, PID, network, IPC and UTS namespaces; every
// mount read-only; private tmpfs /tmp; the work dir bound read-write at
// /tmp/work; runs as nobody. Needs root.
std::unique_ptr<SandboxRuntime> make_namespace_runtime();

// Container runtime through the docker CLI with --network none and
// cpu/memory/pids caps; the image is built from config.image_recipe when
// missing.
std::unique_ptr<SandboxRuntime> make_docker_runtime();

// Resolves config.runtime (auto tries docker, then namespace). Returns a
// runtime whose unavailable_reason() explains the failure when none works.
std::unique_ptr<SandboxRuntime> make_runtime(const SandboxConfig& config);

inline constexpr const char* kSandboxWorkDir = "/tmp/work";

}  // namespace recap::artifact
