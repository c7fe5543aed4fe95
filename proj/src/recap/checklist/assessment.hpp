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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "recap/checklist/schema.hpp"
#include "recap/common/files.hpp"

namespace recap::checklist {

// Marker stored when a provider never produced a parseable in-domain answer.
// Never counted by any metric.
inline constexpr std::string_view kUnparseable = "UNPARSEABLE";

enum class Rater { kHuman, kAutomated };

std::string_view to_string(Rater rater);

struct FieldAnswer {
  std::string item_id;
  std::string value;
  std::string disambiguation;

  bool is_sentinel() const { return value == kUnparseable; }
  friend bool operator==(const FieldAnswer&, const FieldAnswer&) = default;
};

struct Assessment {
  std::string paper_id;
  Rater rater = Rater::kHuman;
  std::map<std::string, FieldAnswer> answers;
  Timestamp produced_at{};
  std::optional<nlohmann::ordered_json> provider_info;
  // Free-form run details (artifact probes, execution verdicts).
  std::optional<nlohmann::ordered_json> details;

  const FieldAnswer* answer(std::string_view item_id) const;
  // Returns false when the item already has an answer.
  bool add(FieldAnswer answer);
};

// Serializes answers in schema order when a schema is supplied.
nlohmann::ordered_json to_json(const Assessment& a, const ChecklistSchema* schema = nullptr);
std::string serialize(const Assessment& a, const ChecklistSchema* schema = nullptr);

// Throws Error(kMalformedAssessment) on structural problems, including two
// answers for the same item.
Assessment parse_assessment(std::string_view document);
Assessment load_assessment_file(const std::filesystem::path& path);

// Loads every `*.json` file of a directory, sorted by paper id. Files whose
// stem differs from the embedded paper_id are rejected.
std::vector<Assessment> load_assessment_dir(const std::filesystem::path& dir);

struct ValidationIssue {
  enum class Kind { kUnknownItem, kOutOfDomain, kMissingItem };
  Kind kind;
  std::string item_id;
  std::string detail;
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;
  // Items carrying the UNPARSEABLE sentinel; listed but not a conformance issue.
  std::vector<std::string> sentinel_items;

  bool empty() const { return issues.empty(); }
  size_t count(ValidationIssue::Kind kind) const;
};

ValidationReport validate_assessment(const ChecklistSchema& schema, const Assessment& a);

}  // namespace recap::checklist
