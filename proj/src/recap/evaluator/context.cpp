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

#include "recap/evaluator/context.hpp"

#include "recap/common/error.hpp"
#include "recap/common/resources.hpp"

namespace recap::evaluator {

using nlohmann::ordered_json;

ordered_json response_schema(const checklist::ChecklistItem& item) {
  ordered_json values = ordered_json::array();
  if (item.is_ternary()) {
    values = {checklist::kYes, checklist::kNo, checklist::kNotApplicable};
  } else {
    for (const auto& o : item.domain.options()) values.push_back(o);
  }
  return {{"type", "object"},
          {"properties",
           {{"answer", {{"type", "string"}, {"enum", values}}},
            {"disambiguation", {{"type", "string"}}}}},
          {"required", {"answer", "disambiguation"}},
          {"additionalProperties", false}};
}

std::string system_prompt(const checklist::ChecklistItem& item, std::string_view preamble) {
  std::string out(preamble.empty() ? resources::system_preamble() : preamble);
  while (!out.empty() && out.back() == '\n') out.pop_back();
  out += "\n\nField: " + item.title + "\nDimension: " + item.dimension + "\nCriteria:\n" + item.criteria_text;
  out += "\nAdmissible answers: ";
  if (item.is_ternary()) {
    out += "Y, N, NA";
  } else {
    const auto& opts = item.domain.options();
    for (size_t i = 0; i < opts.size(); ++i) out += (i ? ", " : "") + opts[i];
  }
  out += "\n";
  return out;
}

std::string best_paper_record(const ingest::PaperRecord& paper) {
  auto flag = [](const std::optional<bool>& v) { return v ? ordered_json(*v) : ordered_json(nullptr); };
  return ordered_json{{"paper_id", paper.paper_id},
                      {"nominated", flag(paper.flags.best_paper_nominated)},
                      {"won", flag(paper.flags.best_paper_won)},
                      {"supplementary", flag(paper.flags.has_supplementary)}}
      .dump();
}

ProviderRequest build_field_context(const ingest::PaperRecord& paper, const checklist::ChecklistItem& item,
                                    const FieldExtras& extras, const ContextOptions& options) {
  if (paper.text.empty()) fail(ErrorCode::kInvalidArgument, "paper " + paper.paper_id + " has no text");
  ProviderRequest req;
  req.paper_id = paper.paper_id;
  req.item_id = item.id;
  req.system_prompt = system_prompt(item, options.preamble);
  req.response_schema = response_schema(item);
  req.max_response_tokens = options.max_response_tokens;
  req.user_content = paper.text;
  switch (item.field_kind) {
    case checklist::FieldKind::kStandard:
      break;
    case checklist::FieldKind::kBestPaper:
      req.user_content += kBestPaperHeader;
      req.user_content += extras.best_paper_record.value_or("(no cached record)");
      break;
    case checklist::FieldKind::kArtifact:
    case checklist::FieldKind::kExecutable:
      if (!extras.artifact_context) {
        fail(ErrorCode::kMissingExtras, "item " + item.id + " needs artifact context for paper " + paper.paper_id);
      }
      req.user_content += kArtifactHeader;
      req.user_content += *extras.artifact_context;
      break;
  }
  return req;
}

}  // namespace recap::evaluator
