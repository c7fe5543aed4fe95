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

#include "recap/analysis/corpus.hpp"

#include <algorithm>
#include <unordered_map>

#include "recap/artifact/modality.hpp"
#include "recap/common/error.hpp"

namespace recap::analysis {

namespace {

using checklist::Assessment;
using checklist::ChecklistSchema;

std::optional<bool> yes_no(const ChecklistSchema& schema, const Assessment& a, std::string_view role) {
  const auto* item = schema.find_role(role);
  if (!item) return std::nullopt;
  const auto* ans = a.answer(item->id);
  if (!ans || ans->is_sentinel()) return std::nullopt;
  if (ans->value == checklist::kYes) return true;
  if (ans->value == checklist::kNo) return false;
  return std::nullopt;
}

bool is_yes(const ChecklistSchema& schema, const Assessment& a, std::string_view role) {
  return yes_no(schema, a, role).value_or(false);
}

bool any_role_yes(const ChecklistSchema& schema, const Assessment& a, std::string_view prefix) {
  for (const auto& item : schema.items()) {
    if (item.role.rfind(prefix, 0) != 0) continue;
    const auto* ans = a.answer(item.id);
    if (ans && ans->value == checklist::kYes) return true;
  }
  return false;
}

}  // namespace

std::optional<double> CorpusAnalytics::availability() const {
  if (papers.empty()) return std::nullopt;
  return static_cast<double>(available) / static_cast<double>(papers.size());
}

artifact::ModalityEvidence evidence_from_answers(const ChecklistSchema& schema, const Assessment& a) {
  artifact::ModalityEvidence e;
  e.artifact_linked = is_yes(schema, a, roles::kArtifactProvided);
  e.artifact_reachable = e.artifact_linked && yes_no(schema, a, roles::kArtifactAccessible).value_or(true);
  e.has_code = e.artifact_linked && any_role_yes(schema, a, roles::kCodePrefix);
  e.has_data = e.artifact_linked && any_role_yes(schema, a, roles::kDataPrefix);
  e.has_supplement = is_yes(schema, a, roles::kSupplementary);
  return e;
}

CorpusAnalytics corpus_report(std::span<const Assessment> assessments, std::span<const ingest::PaperRecord> records,
                              const ChecklistSchema& schema, double alpha) {
  if (!(alpha > 0 && alpha < 1)) fail(ErrorCode::kInvalidArgument, "alpha must lie in (0, 1)");
  CorpusAnalytics out;
  out.alpha = alpha;
  std::unordered_map<std::string, const ingest::PaperRecord*> by_id;
  for (const auto& r : records) by_id.emplace(r.paper_id, &r);

  std::vector<const Assessment*> matched;
  std::unordered_map<std::string, bool> assessed;
  for (const auto& a : assessments) {
    assessed[a.paper_id] = true;
    if (by_id.count(a.paper_id)) {
      matched.push_back(&a);
    } else {
      out.missing_records.push_back(a.paper_id);
    }
  }
  for (const auto& r : records) {
    if (!assessed.count(r.paper_id)) out.missing_assessments.push_back(r.paper_id);
  }
  std::sort(out.missing_records.begin(), out.missing_records.end());
  std::sort(out.missing_assessments.begin(), out.missing_assessments.end());
  if (matched.empty()) fail(ErrorCode::kNoMatchingPapers, "no assessment matches a corpus record");
  std::sort(matched.begin(), matched.end(), [](auto* x, auto* y) { return x->paper_id < y->paper_id; });

  std::vector<Assessment> corpus;
  for (const Assessment* a : matched) {
    const auto& rec = *by_id.at(a->paper_id);
    PaperRow row;
    row.paper_id = a->paper_id;
    row.year = rec.year;
    row.completeness = checklist::completeness(schema, *a);
    row.supplementary = is_yes(schema, *a, roles::kSupplementary);
    row.external_artifact = is_yes(schema, *a, roles::kArtifactProvided);
    row.available = row.supplementary || row.external_artifact;
    if (row.external_artifact) row.persistent = is_yes(schema, *a, roles::kArtifactPersistent);
    row.modality = artifact::classify_modality(evidence_from_answers(schema, *a));
    row.nominated = yes_no(schema, *a, roles::kNominated);
    if (!row.nominated) row.nominated = rec.flags.best_paper_nominated;
    row.won = yes_no(schema, *a, roles::kWon);
    if (!row.won) row.won = rec.flags.best_paper_won;

    out.available += row.available;
    out.external_artifacts += row.external_artifact;
    out.supplementary += row.supplementary;
    out.persistent += row.persistent.value_or(false);
    ++out.modality[row.modality];
    ++out.modality_by_year[row.year][row.modality];
    out.papers.push_back(std::move(row));
    corpus.push_back(*a);
  }

  std::vector<double> all;
  std::map<int, std::vector<double>> per_year;
  std::map<int, YearRow> years;
  std::vector<double> nominated, others;
  for (const auto& row : out.papers) {
    auto& y = years[row.year];
    y.year = row.year;
    ++y.papers;
    y.available += row.available;
    per_year[row.year];
    if (!row.completeness.value) continue;
    const double v = *row.completeness.value;
    all.push_back(v);
    per_year[row.year].push_back(v);
    if (row.nominated == true) {
      nominated.push_back(v);
    } else if (row.nominated == false) {
      others.push_back(v);
    }
  }
  if (const auto s = summarize(all)) out.mean_completeness = s->mean;
  for (auto& [year, row] : years) {
    row.completeness = summarize(per_year[year]);
    out.yearly.push_back(row);
  }

  std::vector<std::vector<double>> groups;
  for (auto& [year, values] : per_year) {
    if (!values.empty()) groups.push_back(values);
  }
  if (groups.size() < 2) {
    out.completeness_by_year.not_applicable = "fewer than two years with defined completeness";
  } else {
    out.completeness_by_year.result = kruskal_wallis(groups);
  }

  out.nominated = nominated.size();
  out.not_nominated = others.size();
  if (nominated.empty() || others.empty()) {
    out.best_paper.not_applicable = "needs nominated and non-nominated papers with defined completeness";
  } else {
    auto r = mann_whitney_u(nominated, others);
    r.effect = cles(others, nominated);
    out.best_paper.result = r;
  }

  for (const auto& item : schema.items()) {
    if (!item.counts()) continue;
    ItemRate rate;
    rate.item_id = item.id;
    rate.dimension = item.dimension;
    rate.title = item.title;
    rate.tally = checklist::tally_item(schema, corpus, item.id);
    rate.rate = checklist::reporting_rate(schema, corpus, item.id);
    out.item_rates.push_back(std::move(rate));
  }
  return out;
}

}  // namespace recap::analysis
