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

#include "recap/analysis/nonparametric.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <boost/math/special_functions/gamma.hpp>

#include "recap/common/error.hpp"

namespace recap::analysis {

std::string_view to_string(TestMethod m) {
  return m == TestMethod::kMannWhitneyTwoSided ? "mann_whitney_two_sided" : "kruskal_wallis";
}

std::string_view to_string(PValueMethod m) {
  switch (m) {
    case PValueMethod::kExact: return "exact";
    case PValueMethod::kNormalTieContinuity: return "normal_tie_continuity";
    case PValueMethod::kChiSquare: return "chi_square";
    case PValueMethod::kDegenerate: return "degenerate";
  }
  return "exact";
}

std::vector<double> midranks(std::span<const double> values) {
  std::vector<size_t> order(values.size());
  std::iota(order.begin(), order.end(), size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](size_t x, size_t y) { return values[x] < values[y]; });
  std::vector<double> ranks(values.size());
  for (size_t i = 0; i < order.size();) {
    size_t j = i;
    while (j + 1 < order.size() && values[order[j + 1]] == values[order[i]]) ++j;
    const double rank = 0.5 * static_cast<double>(i + j) + 1.0;
    for (size_t k = i; k <= j; ++k) ranks[order[k]] = rank;
    i = j + 1;
  }
  return ranks;
}

namespace {

// Sum of t^3 - t over tie groups.
double tie_term(std::span<const double> pooled) {
  std::vector<double> sorted(pooled.begin(), pooled.end());
  std::sort(sorted.begin(), sorted.end());
  double term = 0.0;
  for (size_t i = 0; i < sorted.size();) {
    size_t j = i;
    while (j + 1 < sorted.size() && sorted[j + 1] == sorted[i]) ++j;
    const double t = static_cast<double>(j - i + 1);
    term += t * t * t - t;
    i = j + 1;
  }
  return term;
}

// Number of size-k subsets of ranks {1..n} for each achievable U = rank sum
// minus k(k+1)/2, built by dynamic programming over the ranks.
std::vector<double> exact_u_distribution(size_t k, size_t n) {
  const size_t max_u = k * (n - k);
  // ways[j][u]: subsets of size j from the ranks seen so far with U-offset u.
  // Using the standard recurrence over "number of larger elements" keeps the
  // state small: f(m, j) over m = n - j non-members.
  std::vector<std::vector<double>> ways(k + 1, std::vector<double>(max_u + 1, 0.0));
  ways[0][0] = 1.0;
  for (size_t r = 1; r <= n; ++r) {
    for (size_t j = std::min(k, r); j >= 1; --j) {
      // Adding rank r as the j-th member contributes r - j to U.
      const size_t add = r - j;
      if (add > max_u) continue;
      for (size_t u = max_u; u + 1 > add; --u) {
        ways[j][u] += ways[j - 1][u - add];
        if (u == 0) break;
      }
    }
  }
  return ways[k];
}

}  // namespace

TestResult mann_whitney_u(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) fail(ErrorCode::kInvalidArgument, "mann_whitney_u needs two nonempty samples");
  TestResult r;
  r.method = TestMethod::kMannWhitneyTwoSided;

  std::vector<double> pooled(a.begin(), a.end());
  pooled.insert(pooled.end(), b.begin(), b.end());
  const auto ranks = midranks(pooled);
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  const double rank_sum_a = std::accumulate(ranks.begin(), ranks.begin() + static_cast<long>(a.size()), 0.0);
  const double u_a = rank_sum_a - na * (na + 1.0) / 2.0;
  const double u_b = na * nb - u_a;
  r.statistic = u_a;
  r.u_min = std::min(u_a, u_b);
  {
    std::vector<double> sa(a.begin(), a.end()), sb(b.begin(), b.end());
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    r.identical_samples = sa == sb;
  }

  const double ties = tie_term(pooled);
  const double n = na + nb;
  if (std::all_of(pooled.begin(), pooled.end(), [&](double v) { return v == pooled.front(); })) {
    r.p_value = 1.0;
    r.p_method = PValueMethod::kDegenerate;
    r.degenerate = true;
    return r;
  }

  if (pooled.size() <= kExactMannWhitneyLimit && ties == 0.0) {
    const auto dist = exact_u_distribution(a.size(), pooled.size());
    const double total = std::accumulate(dist.begin(), dist.end(), 0.0);
    const auto u = static_cast<size_t>(std::llround(u_a));
    double le = 0.0, ge = 0.0;
    for (size_t k = 0; k < dist.size(); ++k) {
      if (k <= u) le += dist[k];
      if (k >= u) ge += dist[k];
    }
    r.p_value = std::min(1.0, 2.0 * std::min(le, ge) / total);
    r.p_method = PValueMethod::kExact;
    return r;
  }

  const double mu = na * nb / 2.0;
  const double sigma = std::sqrt(na * nb / 12.0 * ((n + 1.0) - ties / (n * (n - 1.0))));
  const double u_big = std::max(u_a, u_b);
  const double z = (u_big - mu - 0.5) / sigma;
  r.p_value = std::clamp(2.0 * normal_sf(z), 0.0, 1.0);
  r.p_method = PValueMethod::kNormalTieContinuity;
  return r;
}

double cles(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) fail(ErrorCode::kInvalidArgument, "cles needs two nonempty samples");
  std::vector<double> sorted_a(a.begin(), a.end());
  std::sort(sorted_a.begin(), sorted_a.end());
  // For each b, count a-values strictly below and equal to it.
  double wins = 0.0;
  for (double x : b) {
    const auto lo = std::lower_bound(sorted_a.begin(), sorted_a.end(), x);
    const auto hi = std::upper_bound(lo, sorted_a.end(), x);
    wins += static_cast<double>(lo - sorted_a.begin()) + 0.5 * static_cast<double>(hi - lo);
  }
  return wins / (static_cast<double>(a.size()) * static_cast<double>(b.size()));
}

TestResult kruskal_wallis(std::span<const std::vector<double>> groups) {
  std::vector<const std::vector<double>*> nonempty;
  for (const auto& g : groups)
    if (!g.empty()) nonempty.push_back(&g);
  if (nonempty.size() < 2) fail(ErrorCode::kTooFewGroups, "kruskal_wallis needs at least two nonempty groups");

  std::vector<double> pooled;
  for (const auto* g : nonempty) pooled.insert(pooled.end(), g->begin(), g->end());
  TestResult r;
  r.method = TestMethod::kKruskalWallis;
  const double n = static_cast<double>(pooled.size());

  if (std::all_of(pooled.begin(), pooled.end(), [&](double v) { return v == pooled.front(); })) {
    r.statistic = 0.0;
    r.p_value = 1.0;
    r.p_method = PValueMethod::kDegenerate;
    r.degenerate = true;
    return r;
  }

  const auto ranks = midranks(pooled);
  double sum = 0.0;
  size_t offset = 0;
  for (const auto* g : nonempty) {
    double rank_sum = 0.0;
    for (size_t i = 0; i < g->size(); ++i) rank_sum += ranks[offset + i];
    offset += g->size();
    sum += rank_sum * rank_sum / static_cast<double>(g->size());
  }
  double h = 12.0 / (n * (n + 1.0)) * sum - 3.0 * (n + 1.0);
  const double correction = 1.0 - tie_term(pooled) / (n * n * n - n);
  h /= correction;
  r.statistic = std::max(0.0, h);
  r.p_value = chi_square_sf(r.statistic, static_cast<double>(nonempty.size() - 1));
  r.p_method = PValueMethod::kChiSquare;
  return r;
}

double chi_square_sf(double x, double df) {
  if (x <= 0.0) return 1.0;
  return boost::math::gamma_q(df / 2.0, x / 2.0);
}

double normal_sf(double z) { return 0.5 * std::erfc(z / std::sqrt(2.0)); }

}  // namespace recap::analysis
