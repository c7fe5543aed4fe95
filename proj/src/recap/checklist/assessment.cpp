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

#include "recap/checklist/assessment.hpp"

#include <algorithm>
#include <set>

#include "recap/common/error.hpp"

namespace recap::checklist {

std::string_view to_string(Rater rater) {
  return rater == Rater::kHuman ? "human" : "automated";
}

const FieldAnswer* Assessment::answer(std::string_view item_id) const {
  const auto it = answers.find(std::string(item_id));
  return it == answers.end() ? nullptr : &it->second;
}

bool Assessment::add(FieldAnswer answer) {
  const std::string key = answer.item_id;
  return answers.emplace(key, std::move(answer)).second;
}

nlohmann::ordered_json to_json(const Assessment& a, const ChecklistSchema* schema) {
  nlohmann::ordered_json doc;
  doc["paper_id"] = a.paper_id;
  doc["rater"] = std::string(to_string(a.rater));
  if (schema) doc["schema_version"] = schema->version();
  doc["produced_at"] = format_iso8601(a.produced_at);
  doc["provider_info"] = a.provider_info ? *a.provider_info : nlohmann::ordered_json(nullptr);

  auto& answers = doc["answers"] = nlohmann::ordered_json::object();
  auto emit = [&answers](const FieldAnswer& fa) {
    answers[fa.item_id] = {{"value", fa.value}, {"disambiguation", fa.disambiguation}};
  };
  if (schema) {
    for (const auto& item : schema->items())
      if (const auto* fa = a.answer(item.id)) emit(*fa);
    for (const auto& [id, fa] : a.answers)
      if (!schema->find(id)) emit(fa);
  } else {
    for (const auto& [id, fa] : a.answers) emit(fa);
  }
  if (a.details) doc["details"] = *a.details;
  return doc;
}

std::string serialize(const Assessment& a, const ChecklistSchema* schema) {
  return to_json(a, schema).dump(2) + "\n";
}

Assessment parse_assessment(std::string_view document) {
  // Tracks keys of the "answers" object so duplicates are rejected instead of
  // silently keeping the last one.
  std::vector<std::string> duplicate_keys;
  std::set<std::string> seen;
  std::string pending_key;
  bool in_answers = false;
  int answers_depth = -1;

  auto cb = [&](int d, nlohmann::json::parse_event_t event, nlohmann::json& parsed) {
    using E = nlohmann::json::parse_event_t;
    if (event == E::key) {
      pending_key = parsed.get<std::string>();
      if (in_answers && d == answers_depth + 1) {
        if (!seen.insert(pending_key).second) duplicate_keys.push_back(pending_key);
      }
    } else if (event == E::object_start) {
      if (d == 1 && pending_key == "answers") {
        in_answers = true;
        answers_depth = d;
      }
    } else if (event == E::object_end) {
      if (in_answers && d == answers_depth) in_answers = false;
    }
    return true;
  };

  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(document.begin(), document.end(), cb);
  } catch (const nlohmann::json::parse_error& e) {
    fail(ErrorCode::kMalformedAssessment, std::string("assessment is not valid JSON: ") + e.what());
  }
  if (!duplicate_keys.empty())
    fail(ErrorCode::kMalformedAssessment, "duplicate answer for item '" + duplicate_keys.front() + "'");
  if (!doc.is_object()) fail(ErrorCode::kMalformedAssessment, "assessment root must be an object");

  Assessment a;
  if (!doc.contains("paper_id") || !doc["paper_id"].is_string() || doc["paper_id"].get<std::string>().empty())
    fail(ErrorCode::kMalformedAssessment, "assessment lacks a paper_id");
  a.paper_id = doc["paper_id"].get<std::string>();

  const std::string rater = doc.value("rater", "human");
  if (rater == "human") {
    a.rater = Rater::kHuman;
  } else if (rater == "automated") {
    a.rater = Rater::kAutomated;
  } else {
    fail(ErrorCode::kMalformedAssessment, "paper '" + a.paper_id + "': unknown rater '" + rater + "'");
  }
  if (doc.contains("produced_at") && doc["produced_at"].is_string()) {
    try {
      a.produced_at = parse_iso8601(doc["produced_at"].get<std::string>());
    } catch (const Error&) {
      fail(ErrorCode::kMalformedAssessment, "paper '" + a.paper_id + "': bad produced_at");
    }
  }
  if (doc.contains("provider_info") && !doc["provider_info"].is_null())
    a.provider_info = nlohmann::ordered_json::parse(doc["provider_info"].dump());
  if (doc.contains("details") && !doc["details"].is_null())
    a.details = nlohmann::ordered_json::parse(doc["details"].dump());

  if (!doc.contains("answers") || !doc["answers"].is_object())
    fail(ErrorCode::kMalformedAssessment, "paper '" + a.paper_id + "': 'answers' must be an object");
  for (const auto& [id, entry] : doc["answers"].items()) {
    FieldAnswer fa;
    fa.item_id = id;
    if (entry.is_string()) {
      fa.value = entry.get<std::string>();
    } else if (entry.is_object() && entry.contains("value") && entry["value"].is_string()) {
      fa.value = entry["value"].get<std::string>();
      if (entry.contains("disambiguation") && entry["disambiguation"].is_string())
        fa.disambiguation = entry["disambiguation"].get<std::string>();
    } else {
      fail(ErrorCode::kMalformedAssessment, "paper '" + a.paper_id + "': answer for '" + id + "' lacks a value");
    }
    a.add(std::move(fa));
  }
  return a;
}

Assessment load_assessment_file(const std::filesystem::path& path) {
  try {
    return parse_assessment(read_file(path));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kMalformedAssessment)
      fail(e.code(), path.filename().string() + ": " + e.what());
    throw;
  }
}

std::vector<Assessment> load_assessment_dir(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) fail(ErrorCode::kIo, "not a directory: " + dir.string());
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  std::vector<Assessment> out;
  for (const auto& f : files) {
    // Run bookkeeping files share the directory with assessments.
    const std::string stem = f.stem().string();
    if (stem == "run_state" || stem == "run_report") continue;
    auto a = load_assessment_file(f);
    if (a.paper_id != stem)
      fail(ErrorCode::kMalformedAssessment,
           f.filename().string() + ": file name does not match paper_id '" + a.paper_id + "'");
    out.push_back(std::move(a));
  }
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.paper_id < y.paper_id; });
  return out;
}

size_t ValidationReport::count(ValidationIssue::Kind kind) const {
  return static_cast<size_t>(
      std::count_if(issues.begin(), issues.end(), [kind](const auto& i) { return i.kind == kind; }));
}

ValidationReport validate_assessment(const ChecklistSchema& schema, const Assessment& a) {
  ValidationReport report;
  for (const auto& [id, fa] : a.answers) {
    const auto* item = schema.find(id);
    if (!item) {
      report.issues.push_back({ValidationIssue::Kind::kUnknownItem, id, "item not in schema " + schema.version()});
      continue;
    }
    if (fa.is_sentinel()) {
      report.sentinel_items.push_back(id);
      continue;
    }
    if (!item->domain.contains(fa.value))
      report.issues.push_back({ValidationIssue::Kind::kOutOfDomain, id, "value '" + fa.value + "' not admissible"});
  }
  for (const auto& item : schema.items()) {
    if (!a.answer(item.id)) report.issues.push_back({ValidationIssue::Kind::kMissingItem, item.id, "no answer"});
  }
  return report;
}

}  // namespace recap::checklist
