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
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "recap/analysis/agreement.hpp"
#include "recap/analysis/corpus.hpp"
#include "recap/app/run_config.hpp"
#include "recap/app/run_state.hpp"

namespace recap::app {

using LogFn = std::function<void(const std::string&)>;

inline constexpr const char* kAssessmentsDir = "assessments";
inline constexpr const char* kRunReportFile = "run_report.json";

struct AssessRequest {
  RunConfig config;
  bool force = false;
  std::optional<unsigned> workers;  // overrides config.workers
  std::filesystem::path stub;       // overrides the configured provider
  LogFn log;
};

struct AssessSummary {
  std::vector<std::string> processed;         // assessed by this invocation
  std::vector<std::string> skipped_existing;  // already assessed, not redone
  std::vector<std::pair<std::string, UnprocessedPaper>> unprocessed;
  size_t sentinels = 0;
  size_t provider_calls = 0;
  size_t retries = 0;

  int exit_code() const { return unprocessed.empty() ? 0 : 2; }
};

// Ingests the manifest, assesses every paper not yet processed (all with
// force) and writes <output_dir>/assessments/<paper_id>.json, run_state.json
// after every paper and run_report.json at the end. Per-paper failures are
// recorded as unprocessed; configuration and provider set-up failures throw.
AssessSummary cmd_assess(const AssessRequest& request);

// Agreement tables for two directories of assessments. Throws
// Error(kNoMatchingPapers) naming both directories when no paper id matches.
analysis::AgreementReport cmd_compare(const std::filesystem::path& human_dir, const std::filesystem::path& auto_dir,
                                      const std::filesystem::path& schema_path, const std::filesystem::path& out_dir);

struct ReportRequest {
  std::filesystem::path assess_dir;
  std::filesystem::path manifest;
  std::filesystem::path schema_path;
  std::filesystem::path cache_dir;
  std::filesystem::path out_dir;
  double alpha = 0.05;
};

analysis::CorpusAnalytics cmd_report(const ReportRequest& request);

// Probes one link with the configured harness; returns the findings JSON
// with rendered context.
nlohmann::ordered_json cmd_probe_artifact(const std::string& url, const artifact::SandboxConfig& sandbox,
                                          bool execute);

const checklist::ChecklistSchema& schema_for(const std::filesystem::path& schema_path,
                                             std::optional<checklist::ChecklistSchema>& storage);

}  // namespace recap::app
