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

#include "recap/checklist/schema.hpp"

#include <algorithm>
#include <set>

#include "recap/common/error.hpp"
#include "recap/common/files.hpp"
#include "recap/common/resources.hpp"

namespace recap::checklist {

std::optional<Ternary> parse_ternary(std::string_view value) {
  if (value == kYes) return Ternary::kYes;
  if (value == kNo) return Ternary::kNo;
  if (value == kNotApplicable) return Ternary::kNotApplicable;
  return std::nullopt;
}

std::string_view to_string(Ternary t) {
  switch (t) {
    case Ternary::kYes: return kYes;
    case Ternary::kNo: return kNo;
    case Ternary::kNotApplicable: return kNotApplicable;
  }
  return kNotApplicable;
}

ValueDomain ValueDomain::ternary() {
  ValueDomain d;
  d.kind_ = DomainKind::kTernary;
  d.options_ = {std::string(kYes), std::string(kNo), std::string(kNotApplicable)};
  return d;
}

ValueDomain ValueDomain::categorical(std::vector<std::string> options) {
  ValueDomain d;
  d.kind_ = DomainKind::kCategorical;
  d.options_ = std::move(options);
  return d;
}

bool ValueDomain::contains(std::string_view value) const {
  return std::find(options_.begin(), options_.end(), value) != options_.end();
}

std::string_view to_string(FieldKind kind) {
  switch (kind) {
    case FieldKind::kStandard: return "standard";
    case FieldKind::kBestPaper: return "best_paper";
    case FieldKind::kArtifact: return "artifact";
    case FieldKind::kExecutable: return "executable";
  }
  return "standard";
}

std::optional<FieldKind> parse_field_kind(std::string_view text) {
  if (text == "standard") return FieldKind::kStandard;
  if (text == "best_paper") return FieldKind::kBestPaper;
  if (text == "artifact") return FieldKind::kArtifact;
  if (text == "executable") return FieldKind::kExecutable;
  return std::nullopt;
}

ChecklistSchema::ChecklistSchema(std::string version, std::vector<std::string> dimensions,
                                 std::vector<ChecklistItem> items)
    : version_(std::move(version)), dimensions_(std::move(dimensions)), items_(std::move(items)) {
  std::set<std::string> dims;
  for (const auto& d : dimensions_) {
    if (d.empty()) fail(ErrorCode::kMalformedSchema, "empty dimension name");
    if (!dims.insert(d).second) fail(ErrorCode::kMalformedSchema, "duplicate dimension '" + d + "'");
  }
  const ChecklistItem* executable = nullptr;
  for (size_t i = 0; i < items_.size(); ++i) {
    const auto& item = items_[i];
    if (item.id.empty()) fail(ErrorCode::kMalformedSchema, "item #" + std::to_string(i) + " has an empty id");
    if (!index_.emplace(item.id, i).second)
      fail(ErrorCode::kDuplicateItemId, "duplicate item id '" + item.id + "'");
    if (!dims.count(item.dimension))
      fail(ErrorCode::kMalformedSchema,
           "item '" + item.id + "' references unknown dimension '" + item.dimension + "'");
    if (!item.is_ternary()) {
      std::set<std::string> distinct(item.domain.options().begin(), item.domain.options().end());
      if (distinct.size() < 2 || distinct.size() != item.domain.options().size())
        fail(ErrorCode::kEmptyDomain,
             "item '" + item.id + "' needs at least two distinct categorical options");
    }
    if (item.descriptive && item.counts_toward_completeness)
      fail(ErrorCode::kMalformedSchema,
           "item '" + item.id + "' is descriptive but counts toward completeness");
    if (item.field_kind == FieldKind::kExecutable) {
      if (executable)
        fail(ErrorCode::kMalformedSchema,
             "items '" + executable->id + "' and '" + item.id + "' are both executable fields");
      executable = &item;
    }
  }
}

const ChecklistItem* ChecklistSchema::find(std::string_view id) const {
  const auto it = index_.find(std::string(id));
  return it == index_.end() ? nullptr : &items_[it->second];
}

const ChecklistItem* ChecklistSchema::find_role(std::string_view role) const {
  for (const auto& item : items_)
    if (item.role == role) return &item;
  return nullptr;
}

nlohmann::ordered_json ChecklistSchema::to_json() const {
  nlohmann::ordered_json doc;
  doc["version"] = version_;
  doc["dimensions"] = dimensions_;
  auto& arr = doc["items"] = nlohmann::ordered_json::array();
  for (const auto& item : items_) {
    nlohmann::ordered_json j;
    j["id"] = item.id;
    j["dimension"] = item.dimension;
    j["title"] = item.title;
    j["criteria"] = item.criteria_text;
    if (item.is_ternary()) {
      j["domain"] = {{"type", "ternary"}};
    } else {
      j["domain"] = {{"type", "categorical"}, {"options", item.domain.options()}};
    }
    j["field_kind"] = std::string(to_string(item.field_kind));
    j["descriptive"] = item.descriptive;
    j["counts_toward_completeness"] = item.counts_toward_completeness;
    if (!item.role.empty()) j["role"] = item.role;
    arr.push_back(std::move(j));
  }
  return doc;
}

namespace {

std::string item_label(const nlohmann::json& j, size_t index) {
  if (j.is_object() && j.contains("id") && j["id"].is_string()) return "'" + j["id"].get<std::string>() + "'";
  return "#" + std::to_string(index);
}

ChecklistItem parse_item(const nlohmann::json& j, size_t index) {
  const std::string label = item_label(j, index);
  if (!j.is_object()) fail(ErrorCode::kMalformedSchema, "item " + label + " is not an object");
  auto str = [&](const char* key, bool required) -> std::string {
    if (!j.contains(key)) {
      if (required) fail(ErrorCode::kMalformedSchema, "item " + label + " lacks '" + key + "'");
      return {};
    }
    if (!j[key].is_string()) fail(ErrorCode::kMalformedSchema, "item " + label + ": '" + key + "' must be a string");
    return j[key].get<std::string>();
  };
  auto flag = [&](const char* key, bool fallback) {
    if (!j.contains(key)) return fallback;
    if (!j[key].is_boolean()) fail(ErrorCode::kMalformedSchema, "item " + label + ": '" + key + "' must be boolean");
    return j[key].get<bool>();
  };

  ChecklistItem item;
  item.id = str("id", true);
  item.dimension = str("dimension", true);
  item.title = str("title", false);
  if (item.title.empty()) item.title = item.id;
  item.criteria_text = str("criteria", false);
  item.role = str("role", false);

  const std::string kind = str("field_kind", false);
  if (kind.empty()) {
    item.field_kind = FieldKind::kStandard;
  } else if (auto fk = parse_field_kind(kind)) {
    item.field_kind = *fk;
  } else {
    fail(ErrorCode::kMalformedSchema, "item " + label + ": unknown field_kind '" + kind + "'");
  }

  if (!j.contains("domain") || !j["domain"].is_object())
    fail(ErrorCode::kMalformedSchema, "item " + label + " lacks a 'domain' object");
  const auto& dom = j["domain"];
  const std::string type = dom.value("type", "");
  if (type == "ternary") {
    item.domain = ValueDomain::ternary();
  } else if (type == "categorical") {
    std::vector<std::string> options;
    if (dom.contains("options")) {
      if (!dom["options"].is_array()) fail(ErrorCode::kMalformedSchema, "item " + label + ": options must be an array");
      for (const auto& o : dom["options"]) {
        if (!o.is_string()) fail(ErrorCode::kMalformedSchema, "item " + label + ": options must be strings");
        options.push_back(o.get<std::string>());
      }
    }
    item.domain = ValueDomain::categorical(std::move(options));
  } else {
    fail(ErrorCode::kMalformedSchema, "item " + label + ": domain type must be 'ternary' or 'categorical'");
  }

  item.descriptive = flag("descriptive", false);
  item.counts_toward_completeness = flag("counts_toward_completeness", !item.descriptive && item.is_ternary());
  return item;
}

}  // namespace

ChecklistSchema load_schema(std::string_view document) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(document);
  } catch (const nlohmann::json::parse_error& e) {
    fail(ErrorCode::kMalformedSchema, std::string("schema is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) fail(ErrorCode::kMalformedSchema, "schema root must be an object");
  if (!doc.contains("items") || !doc["items"].is_array())
    fail(ErrorCode::kMalformedSchema, "schema lacks an 'items' array");
  if (!doc.contains("dimensions") || !doc["dimensions"].is_array())
    fail(ErrorCode::kMalformedSchema, "schema lacks a 'dimensions' array");

  std::vector<std::string> dims;
  for (const auto& d : doc["dimensions"]) {
    if (!d.is_string()) fail(ErrorCode::kMalformedSchema, "dimension names must be strings");
    dims.push_back(d.get<std::string>());
  }
  std::vector<ChecklistItem> items;
  size_t index = 0;
  for (const auto& j : doc["items"]) items.push_back(parse_item(j, index++));
  return ChecklistSchema(doc.value("version", "unversioned"), std::move(dims), std::move(items));
}

ChecklistSchema load_schema_file(const std::filesystem::path& path) {
  return load_schema(read_file(path));
}

std::string_view default_schema_document() { return resources::checklist_json(); }

const ChecklistSchema& default_schema() {
  static const ChecklistSchema schema = load_schema(resources::checklist_json());
  return schema;
}

}  // namespace recap::checklist
