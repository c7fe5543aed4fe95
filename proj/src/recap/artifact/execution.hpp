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

#include <optional>
#include <string>

#include "recap/artifact/config.hpp"
#include "recap/artifact/sandbox.hpp"
#include "recap/artifact/snapshot.hpp"

namespace recap::artifact {

enum class EntrypointSource { kReadme, kMainFile, kBuildScript };

std::string_view to_string(EntrypointSource s);

struct Entrypoint {
  EntrypointSource source = EntrypointSource::kMainFile;
  std::string command;  // shell command, run from the repository root
  std::string origin;   // README line or file that justified it
};

// Priority: a run command in a root README whose script exists; a
// conventional main file at the root; a build script followed by the binary
// it produced. nullopt when none applies.
std::optional<Entrypoint> find_entrypoint(const RepositorySnapshot& snapshot);

// Runs the chosen entrypoint once in a sandbox built over snapshot.local_dir.
// The log goes to config.log_dir (or next to the work dir) as execution.log.
ExecutionResult attempt_execution(const RepositorySnapshot& snapshot, double limit_s, const SandboxConfig& config);
ExecutionResult attempt_execution(const RepositorySnapshot& snapshot, double limit_s, const SandboxConfig& config,
                                  SandboxRuntime& runtime);

}  // namespace recap::artifact
