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

#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "recap/analysis/confusion.hpp"
#include "recap/checklist/assessment.hpp"
#include "recap/checklist/schema.hpp"

namespace recap::analysis {

using checklist::Assessment;
using checklist::ChecklistItem;
using checklist::ChecklistSchema;

using ItemFilter = std::function<bool(const ChecklistItem&)>;

struct PairedComparison {
  ConfusionMatrix matrix;  // rows: rater A (human), columns: rater B (automated)
  std::vector<std::string> matched_papers;
  std::vector<std::string> unmatched_a;  // papers only rater A assessed
  std::vector<std::string> unmatched_b;
  size_t skipped_sentinels = 0;
};

// Pairs assessments by paper_id and counts items where both raters gave an
// in-domain ternary answer. Categorical items and sentinels are never counted.
// Throws Error(kNoComparableItems) when nothing is comparable.
PairedComparison confusion(std::span<const Assessment> human, std::span<const Assessment> automated,
                           const ChecklistSchema& schema, const ItemFilter& filter = {});

struct PerPaperAccuracy {
  std::map<std::string, double> accuracy;
  std::vector<std::string> unscored;  // matched papers without comparable items
};

PerPaperAccuracy per_paper_accuracy(std::span<const Assessment> human, std::span<const Assessment> automated,
                                    const ChecklistSchema& schema);

struct FieldAgreement {
  std::string item_id;
  std::string dimension;
  size_t n = 0;
  std::optional<double> accuracy;  // nullopt when n == 0
  std::optional<KappaResult> kappa;
  ConfusionMatrix matrix;
};

struct CategoricalAgreement {
  std::string item_id;
  size_t n = 0;
  size_t exact_matches = 0;
  std::optional<double> accuracy;
};

struct DimensionAgreement {
  std::string dimension;
  size_t n = 0;
  std::optional<double> accuracy;
  std::optional<KappaResult> kappa;
  std::optional<KappaResult> kappa_merged;
};

struct ClassDistribution {
  std::array<size_t, 3> human{};      // Y, N, NA over comparable items
  std::array<size_t, 3> automated{};
};

struct AgreementReport {
  PairedComparison overall;
  double accuracy = 0.0;
  KappaResult kappa;
  KappaResult kappa_merged;
  std::vector<FieldAgreement> per_field;              // schema order, ternary items
  std::vector<CategoricalAgreement> categorical_fields;
  std::vector<DimensionAgreement> per_dimension;
  PerPaperAccuracy per_paper;
  ClassDistribution class_distribution;
};

AgreementReport agreement_report(std::span<const Assessment> human, std::span<const Assessment> automated,
                                 const ChecklistSchema& schema);

}  // namespace recap::analysis
