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

#include "recap/evaluator/stub_provider.hpp"

#include "recap/checklist/assessment.hpp"
#include "recap/common/error.hpp"
#include "recap/common/files.hpp"

namespace recap::evaluator {

using nlohmann::json;

StubProvider::StubProvider(json script, std::string label) : script_(std::move(script)), label_(std::move(label)) {
  if (!script_.is_object()) fail(ErrorCode::kConfig, "stub script must be a JSON object keyed by paper id");
  for (const auto& [paper, fields] : script_.items()) {
    if (!fields.is_object()) fail(ErrorCode::kConfig, "stub script entry for '" + paper + "' must be an object");
  }
}

std::unique_ptr<StubProvider> StubProvider::from_path(const std::filesystem::path& path) {
  if (std::filesystem::is_directory(path)) {
    json script = json::object();
    for (const auto& a : checklist::load_assessment_dir(path)) {
      json fields = json::object();
      for (const auto& [id, answer] : a.answers) {
        fields[id] = json{{"raw", json{{"answer", answer.value}, {"disambiguation", answer.disambiguation}}.dump()}};
      }
      script[a.paper_id] = std::move(fields);
    }
    return std::make_unique<StubProvider>(std::move(script), "echo:" + path.filename().string());
  }
  json script = json::parse(read_file(path), nullptr, false);
  if (script.is_discarded()) fail(ErrorCode::kConfig, "stub script " + path.string() + " is not valid JSON");
  return std::make_unique<StubProvider>(std::move(script), "script:" + path.filename().string());
}

std::string StubProvider::complete(const ProviderRequest& request) {
  ++calls_;
  const auto paper = script_.find(request.paper_id);
  if (paper == script_.end()) return kUnscriptedResponse;
  const auto field = paper->find(request.item_id);
  if (field == paper->end()) return kUnscriptedResponse;
  json entry = *field;
  if (entry.is_array()) {
    if (entry.empty()) return kUnscriptedResponse;
    std::lock_guard lock(mu_);
    size_t& pos = cursor_[{request.paper_id, request.item_id}];
    const size_t index = std::min(pos, entry.size() - 1);
    ++pos;
    entry = entry[index];
  }
  if (entry.is_object() && entry.contains("raw") && entry["raw"].is_string()) return entry["raw"].get<std::string>();
  if (entry.is_string()) return json{{"answer", entry}, {"disambiguation", "scripted"}}.dump();
  return entry.dump();
}

nlohmann::ordered_json StubProvider::describe() const {
  return {{"provider", "stub"}, {"source", label_}, {"papers", script_.size()}};
}

}  // namespace recap::evaluator
