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

#include <filesystem>
#include <optional>
#include <string>

#include "recap/artifact/config.hpp"
#include "recap/evaluator/evaluate.hpp"

namespace recap::app {

namespace fs = std::filesystem;

struct ProviderSettings {
  std::string kind = "openai";  // openai (any compatible endpoint) or stub
  std::string endpoint = "https://api.openai.com/v1";
  std::string model;
  std::string api_key_env = "OPENAI_API_KEY";
  double rate_limit_per_s = 0;  // 0: no ceiling
  double timeout_s = 300;
  unsigned transient_retries = 3;
  std::optional<double> temperature;
  size_t context_limit_tokens = 400000;
  double chars_per_token = 4.0;
  size_t max_response_tokens = 1024;
  fs::path stub_path;  // script file or directory of assessments
};

struct RunConfig {
  fs::path schema_path;  // empty: bundled checklist
  fs::path manifest_path;
  fs::path cache_dir;
  fs::path documents_root;
  fs::path output_dir;
  fs::path preamble_path;  // empty: bundled answer rules
  double alpha = 0.05;
  unsigned workers = 1;
  ProviderSettings provider;
  evaluator::RetryPolicy retry;
  bool artifacts = true;
  bool execute = true;
  bool check_links = true;
  unsigned max_parallel_executions = 1;
  artifact::SandboxConfig sandbox;
};

// JSON document. Relative paths resolve against `base_dir`. Unknown keys,
// wrong types and out-of-range values throw Error(kConfig).
RunConfig parse_run_config(std::string_view document, const fs::path& base_dir);
RunConfig load_run_config(const fs::path& path);

}  // namespace recap::app
