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

#include "recap/analysis/descriptive.hpp"
#include "recap/analysis/nonparametric.hpp"
#include "recap/common/error.hpp"

namespace recap::analysis {
namespace {

TEST(MannWhitney, SmallExactCase) {
  const std::vector<double> a{1, 2}, b{3, 4};
  const auto r = mann_whitney_u(a, b);
  EXPECT_DOUBLE_EQ(r.statistic, 0.0);
  EXPECT_DOUBLE_EQ(r.u_min, 0.0);
  EXPECT_EQ(r.p_method, PValueMethod::kExact);
  // 6 equally likely rank assignments; U = 0 is the single most extreme one.
  EXPECT_DOUBLE_EQ(r.p_value, 2.0 / 6.0);
}

TEST(MannWhitney, MatchesReferenceValues) {
  // Values cross-checked against an independent statistics package.
  const std::vector<double> a{1, 5, 9, 2}, b{3, 4, 7, 8, 10, 11};
  const auto exact = mann_whitney_u(a, b);
  EXPECT_DOUBLE_EQ(exact.statistic, 6.0);
  EXPECT_NEAR(exact.p_value, 0.2571428571428571, 1e-12);

  const std::vector<double> c{1, 2, 2, 3, 5}, d{2, 3, 4, 4, 6, 7};
  const auto approx = mann_whitney_u(c, d);
  EXPECT_EQ(approx.p_method, PValueMethod::kNormalTieContinuity);
  EXPECT_DOUBLE_EQ(approx.statistic, 6.5);
  EXPECT_NEAR(approx.p_value, 0.13862587987892763, 1e-9);
}

TEST(MannWhitney, IdenticalMultisets) {
  const std::vector<double> a{1, 2, 3}, b{3, 1, 2};
  const auto r = mann_whitney_u(a, b);
  EXPECT_TRUE(r.identical_samples);
  EXPECT_DOUBLE_EQ(r.statistic, 4.5);
  EXPECT_DOUBLE_EQ(r.p_value, 1.0);
}

TEST(MannWhitney, AllEqualIsDegenerate) {
  const std::vector<double> a{2, 2}, b{2, 2, 2};
  const auto r = mann_whitney_u(a, b);
  EXPECT_TRUE(r.degenerate);
  EXPECT_EQ(r.p_method, PValueMethod::kDegenerate);
  EXPECT_DOUBLE_EQ(r.p_value, 1.0);
  EXPECT_THROW(mann_whitney_u(std::vector<double>{}, b), Error);
}

TEST(MannWhitney, SymmetricUnderSwap) {
  std::mt19937_64 rng(8);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> a(1 + trial % 9), b(1 + (trial * 7) % 13);
    for (auto& v : a) v = std::round(g(rng) * 3);
    for (auto& v : b) v = std::round(g(rng) * 3);
    const auto ab = mann_whitney_u(a, b);
    const auto ba = mann_whitney_u(b, a);
    EXPECT_DOUBLE_EQ(ab.statistic + ba.statistic, static_cast<double>(a.size() * b.size()));
    EXPECT_DOUBLE_EQ(ab.p_value, ba.p_value);
    EXPECT_GE(ab.p_value, 0.0);
    EXPECT_LE(ab.p_value, 1.0);
  }
}

TEST(Cles, Conventions) {
  EXPECT_DOUBLE_EQ(cles(std::vector<double>{1, 2}, std::vector<double>{3}), 1.0);
  EXPECT_DOUBLE_EQ(cles(std::vector<double>{5}, std::vector<double>{5}), 0.5);
}

TEST(Cles, MatchesBruteForceAndComplements) {
  std::mt19937_64 rng(4);
  std::uniform_int_distribution<int> v(0, 9);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> a(20), b(20);
    for (auto& x : a) x = v(rng);
    for (auto& x : b) x = v(rng);
    double wins = 0;
    for (double x : a)
      for (double y : b) wins += y > x ? 1.0 : (y == x ? 0.5 : 0.0);
    EXPECT_DOUBLE_EQ(cles(a, b), wins / 400.0);
    EXPECT_DOUBLE_EQ(cles(a, b) + cles(b, a), 1.0);
  }
}

TEST(KruskalWallis, TwoSmallGroups) {
  const std::vector<std::vector<double>> groups{{1, 2}, {3, 4}};
  const auto r = kruskal_wallis(groups);
  EXPECT_NEAR(r.statistic, 2.4, 1e-9);
  EXPECT_NEAR(r.p_value, 0.12133525035848208, 1e-9);
  EXPECT_EQ(r.p_method, PValueMethod::kChiSquare);
}

TEST(KruskalWallis, TiesMatchReference) {
  const std::vector<std::vector<double>> groups{{1, 2, 2, 3}, {2, 4, 5}, {6, 7, 7, 1}};
  const auto r = kruskal_wallis(groups);
  EXPECT_NEAR(r.statistic, 3.0334890965732106, 1e-9);
  EXPECT_NEAR(r.p_value, 0.21942505314854852, 1e-9);
}

TEST(KruskalWallis, SymmetricAndDegenerateCases) {
  const std::vector<std::vector<double>> same{{1, 2, 3}, {1, 2, 3}};
  EXPECT_NEAR(kruskal_wallis(same).statistic, 0.0, 1e-12);

  const std::vector<std::vector<double>> flat{{4, 4}, {4}, {4, 4, 4}};
  const auto r = kruskal_wallis(flat);
  EXPECT_TRUE(r.degenerate);
  EXPECT_DOUBLE_EQ(r.statistic, 0.0);
  EXPECT_DOUBLE_EQ(r.p_value, 1.0);

  try {
    kruskal_wallis(std::vector<std::vector<double>>{{1, 2}, {}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kTooFewGroups);
  }
}

TEST(KruskalWallis, StatisticIsNonNegative) {
  std::mt19937_64 rng(12);
  std::uniform_int_distribution<int> v(0, 4);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<std::vector<double>> groups(3);
    for (auto& g : groups) {
      g.resize(1 + trial % 5);
      for (auto& x : g) x = v(rng);
    }
    const auto r = kruskal_wallis(groups);
    EXPECT_GE(r.statistic, 0.0);
    EXPECT_GE(r.p_value, 0.0);
    EXPECT_LE(r.p_value, 1.0);
  }
}

TEST(Descriptive, Type7Quantiles) {
  const std::vector<double> v{4, 1, 3, 2};
  const auto s = summarize(v);
  ASSERT_TRUE(s);
  EXPECT_DOUBLE_EQ(s->median, 2.5);
  EXPECT_DOUBLE_EQ(s->q1, 1.75);
  EXPECT_DOUBLE_EQ(s->q3, 3.25);
  EXPECT_DOUBLE_EQ(s->mean, 2.5);
  EXPECT_FALSE(summarize(std::vector<double>{}).has_value());
}

}  // namespace
}  // namespace recap::analysis
