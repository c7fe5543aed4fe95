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
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <json.hpp>

namespace recap::checklist {

inline constexpr std::string_view kYes = "Y";
inline constexpr std::string_view kNo = "N";
inline constexpr std::string_view kNotApplicable = "NA";

enum class Ternary { kYes, kNo, kNotApplicable };

std::optional<Ternary> parse_ternary(std::string_view value);
std::string_view to_string(Ternary t);

enum class DomainKind { kTernary, kCategorical };

class ValueDomain {
 public:
  static ValueDomain ternary();
  static ValueDomain categorical(std::vector<std::string> options);

  DomainKind kind() const { return kind_; }
  bool is_ternary() const { return kind_ == DomainKind::kTernary; }
  const std::vector<std::string>& options() const { return options_; }
  bool contains(std::string_view value) const;

 private:
  DomainKind kind_ = DomainKind::kTernary;
  std::vector<std::string> options_;
};

// Routes an item to the context it is evaluated with.
enum class FieldKind { kStandard, kBestPaper, kArtifact, kExecutable };

std::string_view to_string(FieldKind kind);
std::optional<FieldKind> parse_field_kind(std::string_view text);

struct ChecklistItem {
  std::string id;
  std::string dimension;
  std::string title;
  std::string criteria_text;
  ValueDomain domain;
  FieldKind field_kind = FieldKind::kStandard;
  bool descriptive = false;
  bool counts_toward_completeness = true;
  // Optional semantic tag ("artifact_provided", "best_paper_nominated", ...)
  // used by corpus analytics to locate items without hard-coding ids.
  std::string role;

  bool is_ternary() const { return domain.is_ternary(); }
  // Ternary items that are neither descriptive nor excluded.
  bool counts() const { return counts_toward_completeness && !descriptive && is_ternary(); }
};

class ChecklistSchema {
 public:
  // Validates every invariant; throws Error(kMalformedSchema |
  // kDuplicateItemId | kEmptyDomain) naming the offending item.
  ChecklistSchema(std::string version, std::vector<std::string> dimensions,
                  std::vector<ChecklistItem> items);

  const std::string& version() const { return version_; }
  std::span<const std::string> dimensions() const { return dimensions_; }
  std::span<const ChecklistItem> items() const { return items_; }
  size_t size() const { return items_.size(); }

  const ChecklistItem* find(std::string_view id) const;
  const ChecklistItem* find_role(std::string_view role) const;

  nlohmann::ordered_json to_json() const;

 private:
  std::string version_;
  std::vector<std::string> dimensions_;
  std::vector<ChecklistItem> items_;
  std::unordered_map<std::string, size_t> index_;
};

ChecklistSchema load_schema(std::string_view document);
ChecklistSchema load_schema_file(const std::filesystem::path& path);

// The bundled checklist (five dimensions, every row of the reference table).
const ChecklistSchema& default_schema();
std::string_view default_schema_document();

}  // namespace recap::checklist
