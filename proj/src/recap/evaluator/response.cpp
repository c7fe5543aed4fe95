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

#include "recap/evaluator/response.hpp"

#include "recap/common/error.hpp"
#include "recap/common/text.hpp"

namespace recap::evaluator {

using nlohmann::json;

std::optional<std::string_view> find_json_object(std::string_view raw) {
  for (size_t start = raw.find('{'); start != std::string_view::npos; start = raw.find('{', start + 1)) {
    int depth = 0;
    bool in_string = false;
    bool escaped = false;
    for (size_t i = start; i < raw.size(); ++i) {
      const char c = raw[i];
      if (in_string) {
        if (escaped) {
          escaped = false;
        } else if (c == '\\') {
          escaped = true;
        } else if (c == '"') {
          in_string = false;
        }
        continue;
      }
      if (c == '"') {
        in_string = true;
      } else if (c == '{') {
        ++depth;
      } else if (c == '}') {
        if (--depth == 0) {
          const std::string_view candidate = raw.substr(start, i - start + 1);
          if (json::accept(candidate)) return candidate;
          break;
        }
      }
    }
  }
  return std::nullopt;
}

checklist::FieldAnswer parse_field_response(const checklist::ChecklistItem& item, std::string_view raw) {
  const auto body = find_json_object(raw);
  if (!body) fail(ErrorCode::kMalformedResponse, "no JSON object in response for " + item.id);
  const json doc = json::parse(*body);
  const auto answer = doc.find("answer");
  if (answer == doc.end() || !answer->is_string()) {
    fail(ErrorCode::kMalformedResponse, "response for " + item.id + " lacks a string \"answer\"");
  }
  const std::string value(text::trim(answer->get<std::string>()));
  std::optional<std::string> matched;
  if (item.is_ternary()) {
    for (std::string_view v : {checklist::kYes, checklist::kNo, checklist::kNotApplicable}) {
      if (text::iequals(value, v)) matched = std::string(v);
    }
  } else {
    for (const auto& o : item.domain.options()) {
      if (text::iequals(value, o)) matched = o;
    }
  }
  if (!matched) fail(ErrorCode::kOutOfDomainValue, "answer '" + value + "' is outside the domain of " + item.id);
  checklist::FieldAnswer out;
  out.item_id = item.id;
  out.value = *matched;
  if (const auto d = doc.find("disambiguation"); d != doc.end() && d->is_string()) out.disambiguation = *d;
  return out;
}

}  // namespace recap::evaluator
