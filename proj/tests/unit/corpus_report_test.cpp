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

#include <gtest/gtest.h>

#include <random>

#include "recap/analysis/corpus.hpp"
#include "recap/analysis/tables.hpp"
#include "recap/common/csv.hpp"
#include "recap/common/error.hpp"
#include "test_support.hpp"

namespace recap::analysis {
namespace {

using checklist::Assessment;
using checklist::default_schema;

// Every ternary item N, categorical items take their first option.
Assessment base_assessment(const std::string& id) {
  Assessment a;
  a.paper_id = id;
  for (const auto& item : default_schema().items()) {
    a.add({item.id, item.is_ternary() ? "N" : item.domain.options().front(), ""});
  }
  return a;
}

void set(Assessment& a, std::string_view role, const std::string& value) {
  const auto* item = default_schema().find_role(role);
  ASSERT_NE(item, nullptr) << role;
  a.answers[item->id].value = value;
}

ingest::PaperRecord record(const std::string& id, int year) {
  ingest::PaperRecord r;
  r.paper_id = id;
  r.year = year;
  return r;
}

// Sets counting items so completeness is yes / (yes + no) with the rest NA.
void shape_completeness(Assessment& a, size_t yes, size_t no) {
  size_t i = 0;
  for (const auto& item : default_schema().items()) {
    if (!item.counts()) continue;
    a.answers[item.id].value = i < yes ? "Y" : i < yes + no ? "N" : "NA";
    ++i;
  }
}

TEST(CorpusReport, SingleYearHalfCompleteness) {
  std::vector<Assessment> as;
  std::vector<ingest::PaperRecord> rs;
  for (int i = 0; i < 6; ++i) {
    auto a = base_assessment("p" + std::to_string(i));
    shape_completeness(a, 3, 3);
    as.push_back(a);
    rs.push_back(record(a.paper_id, 2023));
  }
  const auto r = corpus_report(as, rs, default_schema());
  ASSERT_EQ(r.yearly.size(), 1u);
  ASSERT_TRUE(r.yearly[0].completeness);
  EXPECT_DOUBLE_EQ(r.yearly[0].completeness->median, 0.5);
  EXPECT_FALSE(r.completeness_by_year.result);
  EXPECT_FALSE(r.completeness_by_year.not_applicable.empty());
  EXPECT_DOUBLE_EQ(*r.mean_completeness, 0.5);
}

TEST(CorpusReport, TwoYearsTwoRows) {
  std::vector<Assessment> as;
  std::vector<ingest::PaperRecord> rs;
  for (int i = 0; i < 10; ++i) {
    auto a = base_assessment("p" + std::to_string(i));
    shape_completeness(a, static_cast<size_t>(i), 5);
    as.push_back(a);
    rs.push_back(record(a.paper_id, 2020 + i % 2));
  }
  const auto r = corpus_report(as, rs, default_schema());
  ASSERT_EQ(r.yearly.size(), 2u);
  EXPECT_EQ(r.yearly[0].year, 2020);
  EXPECT_EQ(r.yearly[1].papers, 5u);
  ASSERT_TRUE(r.completeness_by_year.result);
  EXPECT_EQ(r.completeness_by_year.result->method, TestMethod::kKruskalWallis);
  const auto t = corpus_tables(r);
  EXPECT_EQ(csv::parse(t.at("yearly_completeness.csv")).size(), 3u);
}

TEST(CorpusReport, AvailabilitySixtyTwoOfOneSixtyEight) {
  std::vector<Assessment> as;
  std::vector<ingest::PaperRecord> rs;
  for (int i = 0; i < 168; ++i) {
    auto a = base_assessment("p" + std::to_string(1000 + i));
    if (i < 40) set(a, roles::kArtifactProvided, "Y");
    if (i >= 30 && i < 62) set(a, roles::kSupplementary, "Y");
    as.push_back(a);
    rs.push_back(record(a.paper_id, 2020 + i % 5));
  }
  const auto r = corpus_report(as, rs, default_schema());
  EXPECT_EQ(r.available, 62u);
  EXPECT_NEAR(*r.availability() * 100.0, 36.90, 0.005);
  EXPECT_EQ(r.external_artifacts, 40u);
}

TEST(CorpusReport, NoArtifactsAllNone) {
  std::vector<Assessment> as;
  std::vector<ingest::PaperRecord> rs;
  for (int i = 0; i < 5; ++i) {
    as.push_back(base_assessment("p" + std::to_string(i)));
    rs.push_back(record(as.back().paper_id, 2021));
  }
  const auto r = corpus_report(as, rs, default_schema());
  EXPECT_EQ(*r.availability(), 0.0);
  EXPECT_EQ(r.modality.size(), 1u);
  EXPECT_EQ(r.modality.at(artifact::Modality::kNone), 5u);
  const auto rows = csv::parse(corpus_tables(r).at("modality_overall.csv"));
  for (size_t i = 1; i < rows.size(); ++i) EXPECT_EQ(rows[i][1], rows[i][0] == "none" ? "5" : "0");
}

TEST(CorpusReport, AvailabilityMatchesIndependentTally) {
  std::mt19937_64 rng(11);
  const auto& schema = default_schema();
  std::vector<Assessment> as;
  std::vector<ingest::PaperRecord> rs;
  for (int i = 0; i < 200; ++i) {
    as.push_back(testing::random_assessment(schema, "p" + std::to_string(i), rng, true));
    rs.push_back(record(as.back().paper_id, 2015 + i % 7));
  }
  size_t tally = 0;
  for (const auto& a : as) {
    bool avail = false;
    for (const char* id : {"supplementary_material", "artifact_provided"}) {
      const auto* ans = a.answer(id);
      avail = avail || (ans && ans->value == "Y");
    }
    tally += avail;
  }
  const auto r = corpus_report(as, rs, schema);
  EXPECT_EQ(r.available, tally);
  EXPECT_DOUBLE_EQ(*r.availability(), static_cast<double>(tally) / 200.0);
}

TEST(CorpusReport, ModalityFromAnswers) {
  auto a = base_assessment("p1");
  set(a, roles::kArtifactProvided, "Y");
  set(a, roles::kArtifactAccessible, "Y");
  set(a, "code_algorithm", "Y");
  set(a, "data_objective", "Y");
  auto b = base_assessment("p2");
  set(b, roles::kArtifactProvided, "Y");
  set(b, roles::kArtifactAccessible, "Y");
  set(b, "code_analysis", "Y");
  auto c = base_assessment("p3");
  set(c, roles::kSupplementary, "Y");
  auto d = base_assessment("p4");
  set(d, roles::kArtifactProvided, "Y");
  set(d, roles::kArtifactAccessible, "N");
  set(d, roles::kArtifactPersistent, "Y");
  std::vector<Assessment> as{a, b, c, d};
  std::vector<ingest::PaperRecord> rs{record("p1", 2020), record("p2", 2020), record("p3", 2021), record("p4", 2021)};
  const auto r = corpus_report(as, rs, default_schema());
  EXPECT_EQ(r.papers[0].modality, artifact::Modality::kCodeAndData);
  EXPECT_EQ(r.papers[1].modality, artifact::Modality::kCodeOnly);
  EXPECT_EQ(r.papers[2].modality, artifact::Modality::kPdfOnly);
  EXPECT_EQ(r.papers[3].modality, artifact::Modality::kUnspecified);
  EXPECT_EQ(r.persistent, 1u);
  EXPECT_EQ(r.modality_by_year.at(2021).at(artifact::Modality::kPdfOnly), 1u);
}

TEST(CorpusReport, NominatedDominatingGivesClesAboveHalf) {
  std::vector<Assessment> as;
  std::vector<ingest::PaperRecord> rs;
  for (int i = 0; i < 12; ++i) {
    auto a = base_assessment("p" + std::to_string(10 + i));
    const bool nominated = i < 4;
    set(a, roles::kNominated, nominated ? "Y" : "N");
    shape_completeness(a, nominated ? 12 + i : static_cast<size_t>(i % 5), 6);
    as.push_back(a);
    rs.push_back(record(a.paper_id, 2022));
  }
  const auto r = corpus_report(as, rs, default_schema());
  EXPECT_EQ(r.nominated, 4u);
  EXPECT_EQ(r.not_nominated, 8u);
  ASSERT_TRUE(r.best_paper.result);
  ASSERT_TRUE(r.best_paper.result->effect);
  EXPECT_GT(*r.best_paper.result->effect, 0.5);
  EXPECT_DOUBLE_EQ(r.best_paper.result->statistic, 32.0);
}

TEST(CorpusReport, NominationFallsBackToRecordFlag) {
  auto a = base_assessment("p1");
  a.answers.erase(default_schema().find_role(roles::kNominated)->id);
  auto rec = record("p1", 2020);
  rec.flags.best_paper_nominated = true;
  std::vector<Assessment> as{a};
  std::vector<ingest::PaperRecord> rs{rec};
  EXPECT_EQ(corpus_report(as, rs, default_schema()).papers[0].nominated, true);
}

TEST(CorpusReport, MissingMatchesReportedAndNoneThrows) {
  std::vector<Assessment> as{base_assessment("a"), base_assessment("b")};
  std::vector<ingest::PaperRecord> rs{record("a", 2020), record("c", 2020)};
  const auto r = corpus_report(as, rs, default_schema());
  EXPECT_EQ(r.missing_records, std::vector<std::string>{"b"});
  EXPECT_EQ(r.missing_assessments, std::vector<std::string>{"c"});
  std::vector<ingest::PaperRecord> none{record("z", 2020)};
  try {
    corpus_report(as, none, default_schema());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNoMatchingPapers);
  }
  EXPECT_THROW(corpus_report(as, rs, default_schema(), 1.5), Error);
}

TEST(CorpusReport, ItemRatesMatchRecount) {
  std::mt19937_64 rng(5);
  const auto& schema = default_schema();
  std::vector<Assessment> as;
  std::vector<ingest::PaperRecord> rs;
  for (int i = 0; i < 50; ++i) {
    as.push_back(testing::random_assessment(schema, "p" + std::to_string(i), rng));
    rs.push_back(record(as.back().paper_id, 2020));
  }
  const auto r = corpus_report(as, rs, schema);
  for (const auto& rate : r.item_rates) {
    size_t y = 0, n = 0;
    for (const auto& a : as) {
      const auto& v = a.answer(rate.item_id)->value;
      y += v == "Y";
      n += v == "N";
    }
    ASSERT_TRUE(rate.rate);
    EXPECT_DOUBLE_EQ(*rate.rate, static_cast<double>(y) / static_cast<double>(y + n)) << rate.item_id;
  }
}

TEST(AgreementTables, HandComputedDivergence) {
  const auto schema = testing::ternary_schema(4);
  using checklist::Rater;
  std::vector<Assessment> human{
      testing::make_assessment("p1", Rater::kHuman, {{"item00", "Y"}, {"item01", "N"}, {"item02", "NA"}, {"item03", "Y"}}),
      testing::make_assessment("p2", Rater::kHuman, {{"item00", "Y"}, {"item01", "Y"}, {"item02", "N"}, {"item03", "N"}})};
  std::vector<Assessment> automated{
      testing::make_assessment("p1", Rater::kAutomated, {{"item00", "Y"}, {"item01", "NA"}, {"item02", "NA"}, {"item03", "Y"}}),
      testing::make_assessment("p2", Rater::kAutomated, {{"item00", "N"}, {"item01", "Y"}, {"item02", "N"}, {"item03", "N"}})};
  const auto report = agreement_report(human, automated, schema);
  const auto t = agreement_tables(report);
  // p1: 3 of 4 agree, p2: 3 of 4 agree.
  EXPECT_EQ(t.at("per_paper_accuracy.csv"), "paper_id,accuracy\np1,0.75\np2,0.75\n");
  // Rows Y,N,NA x columns Y,N,NA: YY=3 YN=1 NN=2 NNA=1 NANA=1.
  const auto rows = csv::parse(t.at("confusion.csv"));
  const std::vector<std::string> counts{"3", "1", "0", "0", "2", "1", "0", "0", "1"};
  ASSERT_EQ(rows.size(), 10u);
  for (size_t i = 0; i < 9; ++i) EXPECT_EQ(rows[i + 1][2], counts[i]) << i;
  // p_o = 6/8; row marginals 4,3,1; column marginals 3,3,2; p_e = (12+9+2)/64.
  const double p_e = 23.0 / 64.0;
  const double kappa = (0.75 - p_e) / (1 - p_e);
  const auto summary = agreement_summary(report);
  EXPECT_NEAR(summary["kappa"]["kappa"].get<double>(), kappa, 1e-12);
  EXPECT_EQ(summary["accuracy"].get<double>(), 0.75);
  EXPECT_EQ(t.at("class_distribution.csv"), "value,human,automated\nY,4,3\nN,3,3\nNA,1,2\n");
}

}  // namespace
}  // namespace recap::analysis
