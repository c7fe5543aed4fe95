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

#include <optional>
#include <span>
#include <string_view>

#include "recap/checklist/assessment.hpp"
#include "recap/checklist/schema.hpp"

namespace recap::checklist {

struct CompletenessScore {
  size_t yes_count = 0;
  size_t applicable_count = 0;  // Y + N over counting items
  std::optional<double> value;  // nullopt when applicable_count == 0

  bool defined() const { return value.has_value(); }
};

// Fraction of applicable counting items answered Y. NA, unanswered and
// sentinel answers are excluded from the denominator; descriptive and
// categorical items are never counted. Throws Error(kUnknownItem) or
// Error(kOutOfDomainValue) for assessments that do not validate.
CompletenessScore completeness(const ChecklistSchema& schema, const Assessment& a);

struct ItemTally {
  size_t yes = 0;
  size_t no = 0;
  size_t not_applicable = 0;
  size_t unanswered = 0;  // includes sentinels

  size_t applicable() const { return yes + no; }
};

ItemTally tally_item(const ChecklistSchema& schema, std::span<const Assessment> corpus,
                     std::string_view item_id);

// (#papers answering Y) / (#papers answering Y or N), nullopt when no paper is
// applicable. Throws Error(kUnknownItem) / Error(kNonTernaryItem).
std::optional<double> reporting_rate(const ChecklistSchema& schema, std::span<const Assessment> corpus,
                                     std::string_view item_id);

}  // namespace recap::checklist
