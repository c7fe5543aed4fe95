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

#include "recap/analysis/tables.hpp"

#include <cmath>

#include "recap/common/csv.hpp"

namespace recap::analysis {

namespace {

using nlohmann::ordered_json;

std::string num(double v) { return csv::format_number(v); }
std::string num(const std::optional<double>& v) { return v ? num(*v) : ""; }
std::string num(size_t v) { return std::to_string(v); }
std::string kappa_cell(const std::optional<KappaResult>& k) { return k ? num(k->kappa) : ""; }

ordered_json opt(const std::optional<double>& v) { return v ? ordered_json(*v) : ordered_json(nullptr); }

ordered_json kappa_json(const KappaResult& k) {
  return {{"kappa", opt(k.kappa)}, {"p_o", k.p_o}, {"p_e", k.p_e}};
}

ordered_json test_json(const TestOutcome& t, double alpha) {
  if (!t.result) return {{"applicable", false}, {"reason", t.not_applicable}};
  const auto& r = *t.result;
  ordered_json j{{"applicable", true},
                 {"test", to_string(r.method)},
                 {"statistic", r.statistic},
                 {"p_value", r.p_value},
                 {"p_method", to_string(r.p_method)},
                 {"alpha", alpha},
                 {"reject_null", r.p_value < alpha},
                 {"degenerate", r.degenerate}};
  if (r.method == TestMethod::kMannWhitneyTwoSided) j["u_min"] = r.u_min;
  if (r.effect) j["cles"] = *r.effect;
  return j;
}

const std::array<artifact::Modality, 6> kModalities = {
    artifact::Modality::kPdfOnly,    artifact::Modality::kCodeOnly,    artifact::Modality::kDataOnly,
    artifact::Modality::kCodeAndData, artifact::Modality::kUnspecified, artifact::Modality::kNone};

const std::array<const char*, 3> kClassNames = {"Y", "N", "NA"};

}  // namespace

Tables agreement_tables(const AgreementReport& r) {
  Tables t;
  {
    csv::Writer w;
    w.row({"scope", "n", "accuracy", "kappa", "p_o", "p_e"});
    w.row({"overall", num(r.overall.matrix.n()), num(r.accuracy), num(r.kappa.kappa), num(r.kappa.p_o),
           num(r.kappa.p_e)});
    w.row({"merged_n_na", num(r.overall.matrix.n()), num(r.kappa_merged.p_o), num(r.kappa_merged.kappa),
           num(r.kappa_merged.p_o), num(r.kappa_merged.p_e)});
    t["agreement_overall.csv"] = w.str();
  }
  {
    csv::Writer w;
    w.row({"item_id", "dimension", "n", "accuracy", "kappa"});
    for (const auto& f : r.per_field) {
      w.row({f.item_id, f.dimension, num(f.n), num(f.accuracy), kappa_cell(f.kappa)});
    }
    t["agreement_per_field.csv"] = w.str();
  }
  {
    csv::Writer w;
    w.row({"item_id", "n", "exact_matches", "accuracy"});
    for (const auto& f : r.categorical_fields) w.row({f.item_id, num(f.n), num(f.exact_matches), num(f.accuracy)});
    t["agreement_categorical.csv"] = w.str();
  }
  {
    csv::Writer w;
    w.row({"dimension", "n", "accuracy", "kappa", "kappa_merged"});
    for (const auto& d : r.per_dimension) {
      w.row({d.dimension, num(d.n), num(d.accuracy), kappa_cell(d.kappa), kappa_cell(d.kappa_merged)});
    }
    t["agreement_per_dimension.csv"] = w.str();
  }
  {
    csv::Writer w;
    w.row({"paper_id", "accuracy"});
    for (const auto& [id, acc] : r.per_paper.accuracy) w.row({id, num(acc)});
    for (const auto& id : r.per_paper.unscored) w.row({id, ""});
    t["per_paper_accuracy.csv"] = w.str();
  }
  {
    csv::Writer w;
    w.row({"human", "automated", "count"});
    for (size_t i = 0; i < 3; ++i) {
      for (size_t j = 0; j < 3; ++j) w.row({kClassNames[i], kClassNames[j], num(r.overall.matrix.counts()[i][j])});
    }
    t["confusion.csv"] = w.str();
  }
  {
    csv::Writer w;
    w.row({"item_id", "human", "automated", "count"});
    for (const auto& f : r.per_field) {
      for (size_t i = 0; i < 3; ++i) {
        for (size_t j = 0; j < 3; ++j) w.row({f.item_id, kClassNames[i], kClassNames[j], num(f.matrix.counts()[i][j])});
      }
    }
    t["confusion_per_field.csv"] = w.str();
  }
  {
    csv::Writer w;
    w.row({"value", "human", "automated"});
    for (size_t i = 0; i < 3; ++i) {
      w.row({kClassNames[i], num(r.class_distribution.human[i]), num(r.class_distribution.automated[i])});
    }
    t["class_distribution.csv"] = w.str();
  }
  t["agreement_summary.json"] = agreement_summary(r).dump(2) + "\n";
  return t;
}

ordered_json agreement_summary(const AgreementReport& r) {
  std::optional<double> mean_paper;
  if (!r.per_paper.accuracy.empty()) {
    double s = 0;
    for (const auto& [id, acc] : r.per_paper.accuracy) s += acc;
    mean_paper = s / static_cast<double>(r.per_paper.accuracy.size());
  }
  return {{"comparable_items", r.overall.matrix.n()},
          {"matched_papers", r.overall.matched_papers.size()},
          {"unmatched_human", r.overall.unmatched_a},
          {"unmatched_automated", r.overall.unmatched_b},
          {"skipped_sentinels", r.overall.skipped_sentinels},
          {"accuracy", r.accuracy},
          {"mean_per_paper_accuracy", opt(mean_paper)},
          {"kappa", kappa_json(r.kappa)},
          {"kappa_merged", kappa_json(r.kappa_merged)}};
}

Tables corpus_tables(const CorpusAnalytics& a) {
  Tables t;
  {
    csv::Writer w;
    w.row({"paper_id", "year", "yes", "applicable", "completeness", "supplementary", "external_artifact",
           "available", "persistent", "modality", "nominated", "won"});
    auto flag = [](const std::optional<bool>& b) -> std::string { return b ? (*b ? "Y" : "N") : ""; };
    for (const auto& p : a.papers) {
      w.row({p.paper_id, std::to_string(p.year), num(p.completeness.yes_count), num(p.completeness.applicable_count),
             num(p.completeness.value), p.supplementary ? "Y" : "N", p.external_artifact ? "Y" : "N",
             p.available ? "Y" : "N", flag(p.persistent), std::string(artifact::to_string(p.modality)),
             flag(p.nominated), flag(p.won)});
    }
    t["completeness_per_paper.csv"] = w.str();
  }
  {
    csv::Writer w;
    w.row({"year", "papers", "defined", "mean", "median", "q1", "q3", "min", "max", "available"});
    for (const auto& y : a.yearly) {
      const auto& s = y.completeness;
      w.row({std::to_string(y.year), num(y.papers), s ? num(s->n) : "0", s ? num(s->mean) : "",
             s ? num(s->median) : "", s ? num(s->q1) : "", s ? num(s->q3) : "", s ? num(s->min) : "",
             s ? num(s->max) : "", num(y.available)});
    }
    t["yearly_completeness.csv"] = w.str();
  }
  {
    csv::Writer w;
    w.row({"item_id", "dimension", "title", "yes", "no", "na", "unanswered", "reporting_rate"});
    for (const auto& r : a.item_rates) {
      w.row({r.item_id, r.dimension, r.title, num(r.tally.yes), num(r.tally.no), num(r.tally.not_applicable),
             num(r.tally.unanswered), num(r.rate)});
    }
    t["item_reporting_rates.csv"] = w.str();
  }
  {
    csv::Writer w;
    const double n = static_cast<double>(a.papers.size());
    w.row({"measure", "count", "papers", "proportion"});
    w.row({"available", num(a.available), num(a.papers.size()), num(a.available / n)});
    w.row({"external_artifact", num(a.external_artifacts), num(a.papers.size()), num(a.external_artifacts / n)});
    w.row({"supplementary", num(a.supplementary), num(a.papers.size()), num(a.supplementary / n)});
    t["availability.csv"] = w.str();
  }
  {
    csv::Writer w;
    w.row({"measure", "count", "external_artifacts", "proportion"});
    const std::optional<double> prop =
        a.external_artifacts ? std::optional<double>(static_cast<double>(a.persistent) / a.external_artifacts)
                             : std::nullopt;
    w.row({"persistent", num(a.persistent), num(a.external_artifacts), num(prop)});
    t["persistence.csv"] = w.str();
  }
  {
    csv::Writer w;
    w.row({"modality", "count", "proportion"});
    for (auto m : kModalities) {
      const auto it = a.modality.find(m);
      const size_t c = it == a.modality.end() ? 0 : it->second;
      w.row({std::string(artifact::to_string(m)), num(c), num(static_cast<double>(c) / a.papers.size())});
    }
    t["modality_overall.csv"] = w.str();
  }
  {
    csv::Writer w;
    w.row({"year", "modality", "count"});
    for (const auto& [year, counts] : a.modality_by_year) {
      for (auto m : kModalities) {
        const auto it = counts.find(m);
        w.row({std::to_string(year), std::string(artifact::to_string(m)), num(it == counts.end() ? 0 : it->second)});
      }
    }
    t["modality_by_year.csv"] = w.str();
  }
  {
    csv::Writer w;
    w.row({"analysis", "test", "statistic", "p_value", "p_method", "alpha", "reject_null", "effect_cles", "note"});
    auto add = [&](const std::string& name, const TestOutcome& o) {
      if (!o.result) {
        w.row({name, "", "", "", "", num(a.alpha), "", "", o.not_applicable});
        return;
      }
      const auto& r = *o.result;
      w.row({name, std::string(to_string(r.method)), num(r.statistic), num(r.p_value),
             std::string(to_string(r.p_method)), num(a.alpha), r.p_value < a.alpha ? "Y" : "N", num(r.effect),
             r.degenerate ? "all values equal" : ""});
    };
    add("completeness_by_year", a.completeness_by_year);
    add("best_paper_vs_not_nominated", a.best_paper);
    t["tests.csv"] = w.str();
  }
  t["corpus_summary.json"] = corpus_summary(a).dump(2) + "\n";
  return t;
}

ordered_json corpus_summary(const CorpusAnalytics& a) {
  ordered_json modality = ordered_json::object();
  for (auto m : kModalities) {
    const auto it = a.modality.find(m);
    modality[std::string(artifact::to_string(m))] = it == a.modality.end() ? 0 : it->second;
  }
  return {{"papers", a.papers.size()},
          {"alpha", a.alpha},
          {"mean_completeness", opt(a.mean_completeness)},
          {"availability", opt(a.availability())},
          {"available", a.available},
          {"external_artifacts", a.external_artifacts},
          {"supplementary", a.supplementary},
          {"persistent", a.persistent},
          {"modality", modality},
          {"nominated", a.nominated},
          {"not_nominated", a.not_nominated},
          {"completeness_by_year", test_json(a.completeness_by_year, a.alpha)},
          {"best_paper_vs_not_nominated", test_json(a.best_paper, a.alpha)},
          {"missing_records", a.missing_records},
          {"missing_assessments", a.missing_assessments}};
}

}  // namespace recap::analysis
