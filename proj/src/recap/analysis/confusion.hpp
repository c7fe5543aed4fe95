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

#include <array>
#include <cstddef>
#include <optional>

#include "recap/checklist/schema.hpp"

namespace recap::analysis {

using checklist::Ternary;

inline constexpr std::array<Ternary, 3> kTernaryClasses = {Ternary::kYes, Ternary::kNo, Ternary::kNotApplicable};

// 3x3 counts indexed by (rater_a value, rater_b value) over {Y, N, NA}.
class ConfusionMatrix {
 public:
  using Counts = std::array<std::array<size_t, 3>, 3>;

  ConfusionMatrix() = default;
  explicit ConfusionMatrix(const Counts& counts) : counts_(counts) {}

  void add(Ternary a, Ternary b, size_t count = 1) { counts_[index(a)][index(b)] += count; }
  size_t at(Ternary a, Ternary b) const { return counts_[index(a)][index(b)]; }
  const Counts& counts() const { return counts_; }

  size_t n() const;
  size_t trace() const;
  std::array<size_t, 3> row_marginals() const;
  std::array<size_t, 3> col_marginals() const;
  bool is_diagonal() const { return trace() == n(); }

  ConfusionMatrix& operator+=(const ConfusionMatrix& other);
  friend bool operator==(const ConfusionMatrix&, const ConfusionMatrix&) = default;

  static size_t index(Ternary t) { return static_cast<size_t>(t); }

 private:
  Counts counts_{};
};

struct KappaResult {
  double p_o = 0.0;
  double p_e = 0.0;
  // nullopt when p_e == 1 and agreement is imperfect; excluded from aggregates.
  std::optional<double> kappa;
};

// trace / n. Throws Error(kEmptyMatrix) when n == 0.
double accuracy(const ConfusionMatrix& cm);

// Cohen's kappa from the marginals. When p_e == 1 (both raters constant on
// the same class) kappa is 1 for perfect agreement and undefined otherwise.
KappaResult cohen_kappa(const ConfusionMatrix& cm);

// Kappa after collapsing N and NA into a single class.
KappaResult kappa_merged(const ConfusionMatrix& cm);

// Kappa over an arbitrary square table given as row-major counts.
KappaResult kappa_from_table(const size_t* counts, size_t classes);

}  // namespace recap::analysis
