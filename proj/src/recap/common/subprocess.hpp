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

#include <chrono>
#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace recap {

struct ResourceLimits {
  std::optional<size_t> address_space_bytes;
  std::optional<unsigned> cpu_seconds;
  std::optional<unsigned> max_processes;
  std::optional<size_t> file_size_bytes;
};

// Runs in the forked child before exec. Must restrict itself to system calls
// (no allocation): the parent may be multi-threaded. Returns 0 on success or
// an errno value, which is reported back to the parent.
using ChildSetupFn = int (*)(void* context);

struct ProcessSpec {
  std::vector<std::string> argv;
  std::filesystem::path cwd;
  std::optional<std::vector<std::string>> env;  // nullopt inherits
  std::chrono::milliseconds timeout{0};         // 0 = unbounded
  ResourceLimits limits;
  size_t max_output_bytes = 64 * 1024;
  ChildSetupFn child_setup = nullptr;
  void* child_setup_context = nullptr;
};

struct ProcessResult {
  bool started = false;
  int setup_errno = 0;       // errno from child_setup or exec
  bool timed_out = false;
  int exit_code = -1;        // valid when exited normally
  int term_signal = 0;       // nonzero when killed by a signal
  std::chrono::duration<double> elapsed{0};
  std::string output;        // merged stdout+stderr, head-truncated to max_output_bytes
  bool output_truncated = false;

  bool ok() const { return started && !timed_out && term_signal == 0 && exit_code == 0; }
};

ProcessResult run_process(const ProcessSpec& spec);

// Looks up an executable on PATH.
std::optional<std::filesystem::path> find_executable(const std::string& name);

}  // namespace recap
