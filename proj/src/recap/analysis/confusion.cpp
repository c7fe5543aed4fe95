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

#include "recap/analysis/confusion.hpp"

#include <vector>

#include "recap/common/error.hpp"

namespace recap::analysis {

size_t ConfusionMatrix::n() const {
  size_t total = 0;
  for (const auto& row : counts_)
    for (size_t c : row) total += c;
  return total;
}

size_t ConfusionMatrix::trace() const { return counts_[0][0] + counts_[1][1] + counts_[2][2]; }

std::array<size_t, 3> ConfusionMatrix::row_marginals() const {
  std::array<size_t, 3> m{};
  for (size_t i = 0; i < 3; ++i)
    for (size_t j = 0; j < 3; ++j) m[i] += counts_[i][j];
  return m;
}

std::array<size_t, 3> ConfusionMatrix::col_marginals() const {
  std::array<size_t, 3> m{};
  for (size_t i = 0; i < 3; ++i)
    for (size_t j = 0; j < 3; ++j) m[j] += counts_[i][j];
  return m;
}

ConfusionMatrix& ConfusionMatrix::operator+=(const ConfusionMatrix& other) {
  for (size_t i = 0; i < 3; ++i)
    for (size_t j = 0; j < 3; ++j) counts_[i][j] += other.counts_[i][j];
  return *this;
}

double accuracy(const ConfusionMatrix& cm) {
  const size_t n = cm.n();
  if (n == 0) fail(ErrorCode::kEmptyMatrix, "accuracy of an empty confusion matrix");
  return static_cast<double>(cm.trace()) / static_cast<double>(n);
}

KappaResult kappa_from_table(const size_t* counts, size_t classes) {
  size_t n = 0;
  size_t agree = 0;
  std::vector<size_t> rows(classes, 0), cols(classes, 0);
  for (size_t i = 0; i < classes; ++i) {
    for (size_t j = 0; j < classes; ++j) {
      const size_t c = counts[i * classes + j];
      n += c;
      rows[i] += c;
      cols[j] += c;
      if (i == j) agree += c;
    }
  }
  if (n == 0) fail(ErrorCode::kEmptyMatrix, "kappa of an empty confusion matrix");

  const double total = static_cast<double>(n);
  KappaResult r;
  r.p_o = static_cast<double>(agree) / total;
  // Integer marginal products keep p_e exact up to the final division.
  unsigned long long products = 0;
  for (size_t c = 0; c < classes; ++c) products += static_cast<unsigned long long>(rows[c]) * cols[c];
  const unsigned long long n2 = static_cast<unsigned long long>(n) * n;
  r.p_e = static_cast<double>(products) / static_cast<double>(n2);
  if (products == n2) {
    if (agree == n) r.kappa = 1.0;
    return r;
  }
  r.kappa = (r.p_o - r.p_e) / (1.0 - r.p_e);
  return r;
}

KappaResult cohen_kappa(const ConfusionMatrix& cm) {
  std::array<size_t, 9> flat{};
  for (size_t i = 0; i < 3; ++i)
    for (size_t j = 0; j < 3; ++j) flat[i * 3 + j] = cm.counts()[i][j];
  return kappa_from_table(flat.data(), 3);
}

KappaResult kappa_merged(const ConfusionMatrix& cm) {
  const auto& c = cm.counts();
  // Class 0 = Y, class 1 = N or NA.
  const std::array<size_t, 4> merged = {
      c[0][0],
      c[0][1] + c[0][2],
      c[1][0] + c[2][0],
      c[1][1] + c[1][2] + c[2][1] + c[2][2],
  };
  return kappa_from_table(merged.data(), 2);
}

}  // namespace recap::analysis
