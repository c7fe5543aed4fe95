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
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace recap::artifact {

namespace fs = std::filesystem;

inline constexpr uint64_t kDefaultSizeCeiling = 512ull << 20;

struct SandboxConfig {
  fs::path root;                     // sandbox instances are created below this
  std::string runtime = "auto";      // auto, docker, namespace
  std::string image = "recap-sandbox:latest";
  fs::path image_recipe;             // Dockerfile; built on first use when the image is missing
  uint64_t size_ceiling_bytes = kDefaultSizeCeiling;
  size_t per_file_token_budget = 1000;
  double chars_per_token = 4.0;
  double cpu_cores = 2.0;
  uint64_t memory_bytes = 4ull << 30;
  unsigned max_processes = 256;
  uint64_t max_file_bytes = 1ull << 30;
  double limit_s = 300;
  double fetch_timeout_s = 600;
  double link_timeout_s = 20;
  int max_redirects = 10;
  std::string zenodo_api = "https://zenodo.org/api";
  fs::path log_dir;                  // per-execution logs; defaults to the instance directory
  size_t log_excerpt_bytes = 4096;
  std::vector<std::string> persistent_hosts;  // added to the built-in allowlist
};

}  // namespace recap::artifact
