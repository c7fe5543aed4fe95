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
#include <map>
#include <string>

#include <json.hpp>

#include "recap/common/files.hpp"

namespace recap::app {

struct ProcessedPaper {
  size_t provider_calls = 0;
  size_t retries = 0;
  size_t sentinels = 0;
  std::string finished_at;
};

struct UnprocessedPaper {
  std::string reason;  // error code name
  std::string message;
};

// Per-paper progress of `assess`, rewritten after every paper. A paper is in
// at most one of the two maps.
class RunState {
 public:
  static constexpr const char* kFileName = "run_state.json";

  static RunState load(const std::filesystem::path& output_dir);
  void save(const std::filesystem::path& output_dir) const;

  void mark_processed(const std::string& paper_id, ProcessedPaper info);
  void mark_unprocessed(const std::string& paper_id, UnprocessedPaper info);

  bool processed(const std::string& paper_id) const { return processed_.count(paper_id) > 0; }
  const std::map<std::string, ProcessedPaper>& processed_papers() const { return processed_; }
  const std::map<std::string, UnprocessedPaper>& unprocessed_papers() const { return unprocessed_; }

  std::string updated_at;

  nlohmann::ordered_json to_json() const;

 private:
  std::map<std::string, ProcessedPaper> processed_;
  std::map<std::string, UnprocessedPaper> unprocessed_;
};

}  // namespace recap::app
