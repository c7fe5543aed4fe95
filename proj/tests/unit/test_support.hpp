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
#include <random>
#include <string>
#include <vector>

#include "recap/checklist/assessment.hpp"
#include "recap/checklist/schema.hpp"

namespace recap::testing {

inline std::filesystem::path fixtures_dir() { return RECAP_FIXTURES_DIR; }

// Schema of `n` counting ternary items named item00, item01, ...
inline checklist::ChecklistSchema ternary_schema(size_t n, std::string dimension = "Methodology") {
  std::vector<checklist::ChecklistItem> items;
  for (size_t i = 0; i < n; ++i) {
    checklist::ChecklistItem item;
    item.id = (i < 10 ? "item0" : "item") + std::to_string(i);
    item.dimension = dimension;
    item.title = item.id;
    item.domain = checklist::ValueDomain::ternary();
    items.push_back(item);
  }
  return checklist::ChecklistSchema("test/1", {dimension}, std::move(items));
}

inline checklist::Assessment make_assessment(const std::string& paper_id, checklist::Rater rater,
                                             const std::vector<std::pair<std::string, std::string>>& values) {
  checklist::Assessment a;
  a.paper_id = paper_id;
  a.rater = rater;
  for (const auto& [id, v] : values) a.add({id, v, ""});
  return a;
}

inline std::string random_ternary(std::mt19937_64& rng) {
  static const char* kValues[] = {"Y", "N", "NA"};
  return kValues[std::uniform_int_distribution<int>(0, 2)(rng)];
}

// Random assessment over a schema: every item answered, occasionally left
// unanswered when `allow_missing`.
inline checklist::Assessment random_assessment(const checklist::ChecklistSchema& schema, const std::string& paper_id,
                                               std::mt19937_64& rng, bool allow_missing = false) {
  checklist::Assessment a;
  a.paper_id = paper_id;
  for (const auto& item : schema.items()) {
    if (allow_missing && std::uniform_int_distribution<int>(0, 9)(rng) == 0) continue;
    std::string v;
    if (item.is_ternary()) {
      v = random_ternary(rng);
    } else {
      const auto& opts = item.domain.options();
      v = opts[std::uniform_int_distribution<size_t>(0, opts.size() - 1)(rng)];
    }
    a.add({item.id, v, ""});
  }
  return a;
}

class TempDir {
 public:
  TempDir() {
    std::string tmpl = (std::filesystem::temp_directory_path() / "recap-test-XXXXXX").string();
    path_ = mkdtemp(tmpl.data());
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& rel) const { return path_ / rel; }

 private:
  std::filesystem::path path_;
};

}  // namespace recap::testing
