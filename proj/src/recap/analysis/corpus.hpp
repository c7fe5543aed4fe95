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

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "recap/analysis/descriptive.hpp"
#include "recap/analysis/nonparametric.hpp"
#include "recap/artifact/modality.hpp"
#include "recap/checklist/assessment.hpp"
#include "recap/checklist/metrics.hpp"
#include "recap/ingest/corpus.hpp"

namespace recap::analysis {

// Role tags looked up in the schema.
namespace roles {
inline constexpr std::string_view kArtifactProvided = "artifact_provided";
inline constexpr std::string_view kArtifactAccessible = "artifact_link_accessible";
inline constexpr std::string_view kArtifactPersistent = "artifact_persistent";
inline constexpr std::string_view kSupplementary = "supplementary_material";
inline constexpr std::string_view kNominated = "best_paper_nominated";
inline constexpr std::string_view kWon = "best_paper_won";
inline constexpr std::string_view kCodePrefix = "code_";
inline constexpr std::string_view kDataPrefix = "data_";
}  // namespace roles

struct PaperRow {
  std::string paper_id;
  int year = 0;
  checklist::CompletenessScore completeness;
  bool supplementary = false;
  bool external_artifact = false;
  bool available = false;  // supplementary or external artifact
  std::optional<bool> persistent;  // set for papers with an external artifact
  artifact::Modality modality = artifact::Modality::kNone;
  std::optional<bool> nominated;
  std::optional<bool> won;
};

struct YearRow {
  int year = 0;
  size_t papers = 0;
  std::optional<Summary> completeness;  // over papers with defined completeness
  size_t available = 0;
};

struct ItemRate {
  std::string item_id;
  std::string dimension;
  std::string title;
  checklist::ItemTally tally;
  std::optional<double> rate;
};

struct TestOutcome {
  std::optional<TestResult> result;
  std::string not_applicable;  // reason when result is unset
};

struct CorpusAnalytics {
  double alpha = 0.05;
  std::vector<PaperRow> papers;  // sorted by paper id
  std::vector<std::string> missing_records;      // assessed papers absent from the records
  std::vector<std::string> missing_assessments;  // records without an assessment

  std::optional<double> mean_completeness;
  std::vector<YearRow> yearly;
  TestOutcome completeness_by_year;  // Kruskal-Wallis over years

  std::vector<ItemRate> item_rates;  // schema order, counting ternary items

  size_t available = 0;
  size_t external_artifacts = 0;
  size_t supplementary = 0;
  size_t persistent = 0;  // among external artifacts
  std::optional<double> availability() const;

  std::map<artifact::Modality, size_t> modality;
  std::map<int, std::map<artifact::Modality, size_t>> modality_by_year;

  size_t nominated = 0;
  size_t not_nominated = 0;
  TestOutcome best_paper;  // Mann-Whitney nominated vs not nominated, CLES attached
};

// Years come from the records (matched by paper id); best-paper status from
// the assessment's nomination answer, else the record flag. Modality is the
// artifact rule table applied to the checklist answers. Throws
// Error(kNoMatchingPapers) when no assessment has a record.
CorpusAnalytics corpus_report(std::span<const checklist::Assessment> assessments,
                              std::span<const ingest::PaperRecord> records, const checklist::ChecklistSchema& schema,
                              double alpha = 0.05);

// Modality evidence read from checklist answers.
artifact::ModalityEvidence evidence_from_answers(const checklist::ChecklistSchema& schema,
                                                 const checklist::Assessment& a);

}  // namespace recap::analysis
