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

#include "recap/analysis/agreement.hpp"
#include "recap/analysis/confusion.hpp"
#include "recap/common/error.hpp"
#include "test_support.hpp"

namespace recap::analysis {
namespace {

using checklist::Rater;
using recap::testing::make_assessment;
using recap::testing::ternary_schema;

ConfusionMatrix worked_example() {
  ConfusionMatrix cm;
  cm.add(Ternary::kYes, Ternary::kYes, 4);
  cm.add(Ternary::kNo, Ternary::kNo, 2);
  cm.add(Ternary::kNotApplicable, Ternary::kNotApplicable, 2);
  cm.add(Ternary::kYes, Ternary::kNo, 1);
  cm.add(Ternary::kNo, Ternary::kYes, 1);
  return cm;
}

TEST(Confusion, IdenticalAssessmentsGiveDiagonal) {
  const auto schema = ternary_schema(10);
  std::mt19937_64 rng(1);
  const auto a = recap::testing::random_assessment(schema, "p1", rng);
  std::vector<Assessment> human{a}, automated{a};
  automated[0].rater = Rater::kAutomated;
  const auto cmp = confusion(human, automated, schema);
  EXPECT_EQ(cmp.matrix.n(), 10u);
  EXPECT_TRUE(cmp.matrix.is_diagonal());
  EXPECT_DOUBLE_EQ(accuracy(cmp.matrix), 1.0);
}

TEST(Confusion, AllYesAgainstAllNo) {
  const auto schema = ternary_schema(5);
  std::vector<std::pair<std::string, std::string>> yes, no;
  for (const auto& item : schema.items()) {
    yes.emplace_back(item.id, "Y");
    no.emplace_back(item.id, "N");
  }
  std::vector<Assessment> human{make_assessment("p", Rater::kHuman, yes)};
  std::vector<Assessment> automated{make_assessment("p", Rater::kAutomated, no)};
  const auto cm = confusion(human, automated, schema).matrix;
  EXPECT_EQ(cm.at(Ternary::kYes, Ternary::kNo), 5u);
  EXPECT_EQ(cm.n(), 5u);
  EXPECT_DOUBLE_EQ(accuracy(cm), 0.0);
}

TEST(Confusion, SkipsCategoricalSentinelsAndUnmatched) {
  const auto& schema = checklist::default_schema();
  std::vector<Assessment> human{
      make_assessment("p1", Rater::kHuman, {{"pseudocode", "Y"}, {"paper_type", "Theory paper"}, {"number_of_runs", "N"}}),
      make_assessment("only_human", Rater::kHuman, {{"pseudocode", "Y"}})};
  std::vector<Assessment> automated{
      make_assessment("p1", Rater::kAutomated,
                      {{"pseudocode", "Y"}, {"paper_type", "Theory paper"}, {"number_of_runs", "UNPARSEABLE"}}),
      make_assessment("only_auto", Rater::kAutomated, {{"pseudocode", "Y"}})};
  const auto cmp = confusion(human, automated, schema);
  EXPECT_EQ(cmp.matrix.n(), 1u);
  EXPECT_EQ(cmp.skipped_sentinels, 1u);
  EXPECT_EQ(cmp.unmatched_a, std::vector<std::string>{"only_human"});
  EXPECT_EQ(cmp.unmatched_b, std::vector<std::string>{"only_auto"});
}

TEST(Confusion, NoComparableItemsThrows) {
  const auto schema = ternary_schema(2);
  std::vector<Assessment> human{make_assessment("a", Rater::kHuman, {{"item00", "Y"}})};
  std::vector<Assessment> automated{make_assessment("b", Rater::kAutomated, {{"item00", "Y"}})};
  try {
    confusion(human, automated, schema);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNoComparableItems);
  }
}

TEST(Confusion, FilterRestrictsItems) {
  const auto schema = ternary_schema(4);
  std::vector<Assessment> human{make_assessment("p", Rater::kHuman, {{"item00", "Y"}, {"item01", "N"}})};
  std::vector<Assessment> automated{make_assessment("p", Rater::kAutomated, {{"item00", "Y"}, {"item01", "Y"}})};
  const auto cm = confusion(human, automated, schema, [](const auto& item) { return item.id == "item01"; }).matrix;
  EXPECT_EQ(cm.n(), 1u);
  EXPECT_EQ(cm.at(Ternary::kNo, Ternary::kYes), 1u);
}

TEST(Confusion, RandomCorpusMatchesPerPairTally) {
  std::mt19937_64 rng(99);
  const auto schema = ternary_schema(15);
  std::vector<Assessment> human, automated;
  for (int i = 0; i < 100; ++i) {
    human.push_back(recap::testing::random_assessment(schema, "p" + std::to_string(i), rng, true));
    automated.push_back(recap::testing::random_assessment(schema, "p" + std::to_string(i), rng, true));
  }
  size_t tally[3][3] = {};
  auto idx = [](const std::string& v) { return v == "Y" ? 0 : v == "N" ? 1 : 2; };
  for (size_t p = 0; p < human.size(); ++p) {
    for (const auto& [id, fa] : human[p].answers) {
      const auto it = automated[p].answers.find(id);
      if (it == automated[p].answers.end()) continue;
      ++tally[idx(fa.value)][idx(it->second.value)];
    }
  }
  const auto cm = confusion(human, automated, schema).matrix;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) EXPECT_EQ(cm.counts()[i][j], tally[i][j]) << i << "," << j;
}

TEST(Accuracy, BasicCases) {
  ConfusionMatrix diag;
  diag.add(Ternary::kYes, Ternary::kYes, 3);
  diag.add(Ternary::kNotApplicable, Ternary::kNotApplicable, 2);
  EXPECT_DOUBLE_EQ(accuracy(diag), 1.0);

  ConfusionMatrix three_of_four;
  three_of_four.add(Ternary::kYes, Ternary::kYes, 3);
  three_of_four.add(Ternary::kYes, Ternary::kNo, 1);
  EXPECT_DOUBLE_EQ(accuracy(three_of_four), 0.75);

  try {
    accuracy(ConfusionMatrix{});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kEmptyMatrix);
  }
  EXPECT_THROW(cohen_kappa(ConfusionMatrix{}), Error);
  EXPECT_THROW(kappa_merged(ConfusionMatrix{}), Error);
}

TEST(Accuracy, UniformRandomRaterIsAboutOneThird) {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> pick(0, 2);
  ConfusionMatrix cm;
  for (int i = 0; i < 200000; ++i) cm.add(Ternary::kYes, kTernaryClasses[pick(rng)]);
  EXPECT_NEAR(accuracy(cm), 1.0 / 3.0, 0.01);
}

TEST(Kappa, WorkedExample) {
  const auto k = cohen_kappa(worked_example());
  EXPECT_DOUBLE_EQ(k.p_o, 0.8);
  EXPECT_NEAR(k.p_e, 0.38, 1e-15);
  ASSERT_TRUE(k.kappa.has_value());
  // (0.8 - 0.38) / (1 - 0.38) = 0.42 / 0.62
  EXPECT_NEAR(*k.kappa, 0.42 / 0.62, 1e-12);
  EXPECT_NEAR(*k.kappa, 0.6774, 1e-4);
}

TEST(Kappa, PerfectAgreementWithMixedMarginals) {
  ConfusionMatrix cm;
  cm.add(Ternary::kYes, Ternary::kYes, 7);
  cm.add(Ternary::kNo, Ternary::kNo, 2);
  cm.add(Ternary::kNotApplicable, Ternary::kNotApplicable, 5);
  EXPECT_DOUBLE_EQ(*cohen_kappa(cm).kappa, 1.0);
}

TEST(Kappa, ConstantRatersEdgeCase) {
  ConfusionMatrix same;
  same.add(Ternary::kYes, Ternary::kYes, 4);
  const auto k = cohen_kappa(same);
  EXPECT_DOUBLE_EQ(k.p_e, 1.0);
  EXPECT_EQ(k.kappa, 1.0);
}

TEST(Kappa, IndependentRatersNearZero) {
  std::mt19937_64 rng(31337);
  std::discrete_distribution<int> rater_a({0.5, 0.3, 0.2});
  std::discrete_distribution<int> rater_b({0.2, 0.5, 0.3});
  ConfusionMatrix cm;
  for (int i = 0; i < 100000; ++i) cm.add(kTernaryClasses[rater_a(rng)], kTernaryClasses[rater_b(rng)]);
  EXPECT_NEAR(*cohen_kappa(cm).kappa, 0.0, 0.02);
}

TEST(KappaMerged, WorkedExampleCollapses) {
  const auto k = kappa_merged(worked_example());
  // Y/Y=4, Y/M=1, M/Y=1, M/M=4: p_o = 0.8, p_e = 0.5.
  EXPECT_DOUBLE_EQ(k.p_o, 0.8);
  EXPECT_DOUBLE_EQ(k.p_e, 0.5);
  EXPECT_NEAR(*k.kappa, 0.6, 1e-12);
}

TEST(KappaMerged, OnlyNoNaDisagreementsBecomePerfect) {
  ConfusionMatrix cm;
  cm.add(Ternary::kYes, Ternary::kYes, 3);
  cm.add(Ternary::kNo, Ternary::kNotApplicable, 2);
  cm.add(Ternary::kNotApplicable, Ternary::kNo, 4);
  EXPECT_LT(*cohen_kappa(cm).kappa, 1.0);
  EXPECT_DOUBLE_EQ(*kappa_merged(cm).kappa, 1.0);

  ConfusionMatrix diag;
  diag.add(Ternary::kYes, Ternary::kYes, 2);
  diag.add(Ternary::kNo, Ternary::kNo, 2);
  EXPECT_DOUBLE_EQ(*kappa_merged(diag).kappa, 1.0);
}

ConfusionMatrix random_matrix(std::mt19937_64& rng) {
  std::uniform_int_distribution<size_t> cell(0, 6);
  ConfusionMatrix::Counts counts{};
  for (auto& row : counts)
    for (auto& c : row) c = cell(rng);
  counts[0][0] += 1;
  return ConfusionMatrix(counts);
}

TEST(KappaProperties, DiagonalPermutationAndMerging) {
  std::mt19937_64 rng(5);
  std::array<size_t, 3> perm = {0, 1, 2};
  for (int trial = 0; trial < 500; ++trial) {
    const auto cm = random_matrix(rng);
    EXPECT_EQ(accuracy(cm) == 1.0, cm.is_diagonal());
    const auto k = cohen_kappa(cm);
    if (k.kappa && k.p_e < 1.0) EXPECT_EQ(std::abs(*k.kappa - 1.0) < 1e-15, cm.is_diagonal());

    std::shuffle(perm.begin(), perm.end(), rng);
    ConfusionMatrix::Counts permuted{};
    for (size_t i = 0; i < 3; ++i)
      for (size_t j = 0; j < 3; ++j) permuted[perm[i]][perm[j]] = cm.counts()[i][j];
    const auto kp = cohen_kappa(ConfusionMatrix(permuted));
    ASSERT_EQ(kp.kappa.has_value(), k.kappa.has_value());
    if (k.kappa) EXPECT_NEAR(*kp.kappa, *k.kappa, 1e-12);

    EXPECT_GE(kappa_merged(cm).p_o, k.p_o);
    const auto& c = cm.counts();
    EXPECT_NEAR(kappa_merged(cm).p_o - k.p_o, static_cast<double>(c[1][2] + c[2][1]) / cm.n(), 1e-12);
  }
}

TEST(PerPaperAccuracy, EchoAndFlip) {
  const auto schema = ternary_schema(10);
  std::mt19937_64 rng(3);
  std::vector<Assessment> human, echo;
  for (int i = 0; i < 4; ++i) human.push_back(recap::testing::random_assessment(schema, "p" + std::to_string(i), rng));
  echo = human;
  for (const auto& [paper, acc] : per_paper_accuracy(human, echo, schema).accuracy) EXPECT_DOUBLE_EQ(acc, 1.0);

  auto flipped = human;
  auto& v = flipped[0].answers["item03"].value;
  v = v == "Y" ? "N" : "Y";
  EXPECT_DOUBLE_EQ(per_paper_accuracy(human, flipped, schema).accuracy.at("p0"), 0.9);
}

TEST(PerPaperAccuracy, ScriptedFivePaperMean) {
  const auto schema = ternary_schema(4);
  // Agreements per paper (of 4): 4, 3, 2, 4, 1 -> mean (1 + .75 + .5 + 1 + .25) / 5 = 0.7
  const std::vector<std::vector<std::string>> h = {
      {"Y", "N", "NA", "Y"}, {"Y", "Y", "Y", "Y"}, {"N", "N", "N", "N"}, {"NA", "NA", "Y", "N"}, {"Y", "N", "NA", "Y"}};
  const std::vector<std::vector<std::string>> b = {
      {"Y", "N", "NA", "Y"}, {"Y", "Y", "Y", "N"}, {"N", "N", "Y", "NA"}, {"NA", "NA", "Y", "N"}, {"Y", "Y", "Y", "N"}};
  std::vector<Assessment> human, automated;
  for (size_t p = 0; p < 5; ++p) {
    std::vector<std::pair<std::string, std::string>> hv, bv;
    for (size_t i = 0; i < 4; ++i) {
      hv.emplace_back(schema.items()[i].id, h[p][i]);
      bv.emplace_back(schema.items()[i].id, b[p][i]);
    }
    human.push_back(make_assessment("p" + std::to_string(p), Rater::kHuman, hv));
    automated.push_back(make_assessment("p" + std::to_string(p), Rater::kAutomated, bv));
  }
  const auto acc = per_paper_accuracy(human, automated, schema).accuracy;
  double mean = 0.0;
  for (const auto& [_, v] : acc) mean += v;
  mean /= static_cast<double>(acc.size());
  EXPECT_DOUBLE_EQ(mean, 0.7);
}

TEST(PerPaperAccuracy, PapersWithoutComparableItemsAreReported) {
  const auto schema = ternary_schema(2);
  std::vector<Assessment> human{make_assessment("p", Rater::kHuman, {{"item00", "Y"}}),
                                make_assessment("q", Rater::kHuman, {{"item00", "Y"}})};
  std::vector<Assessment> automated{make_assessment("p", Rater::kAutomated, {{"item01", "Y"}}),
                                    make_assessment("q", Rater::kAutomated, {{"item00", "N"}})};
  const auto r = per_paper_accuracy(human, automated, schema);
  EXPECT_EQ(r.unscored, std::vector<std::string>{"p"});
  EXPECT_EQ(r.accuracy.size(), 1u);
}

TEST(AgreementReport, BreakdownsAreConsistent) {
  const auto& schema = checklist::default_schema();
  std::mt19937_64 rng(11);
  std::vector<Assessment> human, automated;
  for (int i = 0; i < 30; ++i) {
    human.push_back(recap::testing::random_assessment(schema, "p" + std::to_string(i), rng));
    automated.push_back(recap::testing::random_assessment(schema, "p" + std::to_string(i), rng));
  }
  const auto r = agreement_report(human, automated, schema);
  size_t field_total = 0;
  for (const auto& f : r.per_field) field_total += f.n;
  EXPECT_EQ(field_total, r.overall.matrix.n());
  size_t dim_total = 0;
  for (const auto& d : r.per_dimension) dim_total += d.n;
  EXPECT_EQ(dim_total, r.overall.matrix.n());
  EXPECT_EQ(r.categorical_fields.size(), 5u);
  EXPECT_EQ(r.per_field.size(), 36u);
  size_t hd = 0, ad = 0;
  for (int c = 0; c < 3; ++c) {
    hd += r.class_distribution.human[c];
    ad += r.class_distribution.automated[c];
  }
  EXPECT_EQ(hd, r.overall.matrix.n());
  EXPECT_EQ(ad, r.overall.matrix.n());
  for (const auto& [_, acc] : r.per_paper.accuracy) {
    EXPECT_GE(acc, 0.0);
    EXPECT_LE(acc, 1.0);
  }
}

}  // namespace
}  // namespace recap::analysis
