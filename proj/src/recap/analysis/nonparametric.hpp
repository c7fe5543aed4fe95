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
#include <vector>

namespace recap::analysis {

enum class TestMethod { kMannWhitneyTwoSided, kKruskalWallis };

// How the p-value was obtained.
enum class PValueMethod {
  kExact,                   // full enumeration of rank assignments
  kNormalTieContinuity,     // normal approximation, tie and continuity corrected
  kChiSquare,               // chi-square upper tail, df = groups - 1
  kDegenerate,              // all pooled values equal; p = 1 by convention
};

std::string_view to_string(TestMethod m);
std::string_view to_string(PValueMethod m);

struct TestResult {
  double statistic = 0.0;  // U of the first sample, or H
  double p_value = 1.0;
  TestMethod method = TestMethod::kMannWhitneyTwoSided;
  PValueMethod p_method = PValueMethod::kExact;
  std::optional<double> effect;  // CLES when attached by the caller
  bool degenerate = false;
  // Mann-Whitney only: min(U_a, U_b) and U_a + U_b = |a||b|.
  double u_min = 0.0;
  // Mann-Whitney only: a and b are equal as multisets (U = |a||b|/2).
  bool identical_samples = false;
};

// Average ranks (1-based) with ties sharing their midrank.
std::vector<double> midranks(std::span<const double> values);

// Two-sided Mann-Whitney U. Exact p by enumeration when |a| + |b| <= 12 and
// there are no ties; otherwise the normal approximation with tie and
// continuity corrections. Throws Error(kInvalidArgument) on empty input.
TestResult mann_whitney_u(std::span<const double> a, std::span<const double> b);

// Largest pooled size for which the exact distribution is enumerated.
inline constexpr size_t kExactMannWhitneyLimit = 12;

// P(x_b > x_a) + 0.5 P(x_b == x_a) over all pairs.
double cles(std::span<const double> a, std::span<const double> b);

// Kruskal-Wallis H with tie correction; p from the chi-square upper tail.
// Empty groups are ignored; fewer than two nonempty groups throws
// Error(kTooFewGroups).
TestResult kruskal_wallis(std::span<const std::vector<double>> groups);

// Upper tail of the chi-square distribution.
double chi_square_sf(double x, double df);

// Upper tail of the standard normal distribution.
double normal_sf(double z);

}  // namespace recap::analysis
