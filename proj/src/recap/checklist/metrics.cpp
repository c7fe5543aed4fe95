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

#include "recap/checklist/metrics.hpp"

#include "recap/common/error.hpp"

namespace recap::checklist {

namespace {

void check_answers(const ChecklistSchema& schema, const Assessment& a) {
  for (const auto& [id, fa] : a.answers) {
    const auto* item = schema.find(id);
    if (!item) fail(ErrorCode::kUnknownItem, "paper '" + a.paper_id + "': unknown item '" + id + "'");
    if (!fa.is_sentinel() && !item->domain.contains(fa.value))
      fail(ErrorCode::kOutOfDomainValue,
           "paper '" + a.paper_id + "': value '" + fa.value + "' not admissible for '" + id + "'");
  }
}

}  // namespace

CompletenessScore completeness(const ChecklistSchema& schema, const Assessment& a) {
  check_answers(schema, a);
  CompletenessScore score;
  for (const auto& item : schema.items()) {
    if (!item.counts()) continue;
    const auto* fa = a.answer(item.id);
    if (!fa) continue;
    const auto t = parse_ternary(fa->value);
    if (!t || *t == Ternary::kNotApplicable) continue;
    ++score.applicable_count;
    if (*t == Ternary::kYes) ++score.yes_count;
  }
  if (score.applicable_count > 0)
    score.value = static_cast<double>(score.yes_count) / static_cast<double>(score.applicable_count);
  return score;
}

ItemTally tally_item(const ChecklistSchema& schema, std::span<const Assessment> corpus,
                     std::string_view item_id) {
  const auto* item = schema.find(item_id);
  if (!item) fail(ErrorCode::kUnknownItem, "unknown item '" + std::string(item_id) + "'");
  if (!item->is_ternary()) fail(ErrorCode::kNonTernaryItem, "item '" + item->id + "' is not ternary");
  ItemTally tally;
  for (const auto& a : corpus) {
    const auto* fa = a.answer(item_id);
    if (!fa || fa->is_sentinel()) {
      ++tally.unanswered;
      continue;
    }
    const auto t = parse_ternary(fa->value);
    if (!t)
      fail(ErrorCode::kOutOfDomainValue,
           "paper '" + a.paper_id + "': value '" + fa->value + "' not admissible for '" + item->id + "'");
    switch (*t) {
      case Ternary::kYes: ++tally.yes; break;
      case Ternary::kNo: ++tally.no; break;
      case Ternary::kNotApplicable: ++tally.not_applicable; break;
    }
  }
  return tally;
}

std::optional<double> reporting_rate(const ChecklistSchema& schema, std::span<const Assessment> corpus,
                                     std::string_view item_id) {
  const ItemTally t = tally_item(schema, corpus, item_id);
  if (t.applicable() == 0) return std::nullopt;
  return static_cast<double>(t.yes) / static_cast<double>(t.applicable());
}

}  // namespace recap::checklist
