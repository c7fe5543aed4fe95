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

#include "recap/analysis/agreement.hpp"

#include <algorithm>
#include <unordered_map>

#include "recap/common/error.hpp"

namespace recap::analysis {

namespace {

using checklist::parse_ternary;

std::unordered_map<std::string, const Assessment*> by_paper(std::span<const Assessment> corpus) {
  std::unordered_map<std::string, const Assessment*> index;
  for (const auto& a : corpus) index.emplace(a.paper_id, &a);
  return index;
}

// Ternary values for one item when both raters answered in-domain.
std::optional<std::pair<Ternary, Ternary>> comparable(const Assessment& a, const Assessment& b,
                                                      const ChecklistItem& item, size_t* sentinels) {
  if (!item.is_ternary()) return std::nullopt;
  const auto* fa = a.answer(item.id);
  const auto* fb = b.answer(item.id);
  if (!fa || !fb) return std::nullopt;
  if (fa->is_sentinel() || fb->is_sentinel()) {
    if (sentinels) ++*sentinels;
    return std::nullopt;
  }
  const auto ta = parse_ternary(fa->value);
  const auto tb = parse_ternary(fb->value);
  if (!ta || !tb) return std::nullopt;
  return std::make_pair(*ta, *tb);
}

template <typename Fn>
void for_each_pair(std::span<const Assessment> human, std::span<const Assessment> automated, Fn&& fn) {
  const auto auto_index = by_paper(automated);
  for (const auto& h : human) {
    const auto it = auto_index.find(h.paper_id);
    if (it != auto_index.end()) fn(h, *it->second);
  }
}

}  // namespace

PairedComparison confusion(std::span<const Assessment> human, std::span<const Assessment> automated,
                           const ChecklistSchema& schema, const ItemFilter& filter) {
  PairedComparison out;
  const auto human_index = by_paper(human);
  const auto auto_index = by_paper(automated);
  for (const auto& h : human)
    if (!auto_index.count(h.paper_id)) out.unmatched_a.push_back(h.paper_id);
  for (const auto& b : automated)
    if (!human_index.count(b.paper_id)) out.unmatched_b.push_back(b.paper_id);

  for_each_pair(human, automated, [&](const Assessment& h, const Assessment& b) {
    out.matched_papers.push_back(h.paper_id);
    for (const auto& item : schema.items()) {
      if (filter && !filter(item)) continue;
      if (const auto pair = comparable(h, b, item, &out.skipped_sentinels)) out.matrix.add(pair->first, pair->second);
    }
  });
  std::sort(out.matched_papers.begin(), out.matched_papers.end());
  std::sort(out.unmatched_a.begin(), out.unmatched_a.end());
  std::sort(out.unmatched_b.begin(), out.unmatched_b.end());
  if (out.matrix.n() == 0) fail(ErrorCode::kNoComparableItems, "no comparable items between the two raters");
  return out;
}

PerPaperAccuracy per_paper_accuracy(std::span<const Assessment> human, std::span<const Assessment> automated,
                                    const ChecklistSchema& schema) {
  PerPaperAccuracy out;
  for_each_pair(human, automated, [&](const Assessment& h, const Assessment& b) {
    size_t n = 0, agree = 0;
    for (const auto& item : schema.items()) {
      if (const auto pair = comparable(h, b, item, nullptr)) {
        ++n;
        agree += pair->first == pair->second;
      }
    }
    if (n == 0) {
      out.unscored.push_back(h.paper_id);
    } else {
      out.accuracy[h.paper_id] = static_cast<double>(agree) / static_cast<double>(n);
    }
  });
  std::sort(out.unscored.begin(), out.unscored.end());
  return out;
}

AgreementReport agreement_report(std::span<const Assessment> human, std::span<const Assessment> automated,
                                 const ChecklistSchema& schema) {
  AgreementReport r;
  r.overall = confusion(human, automated, schema);
  r.accuracy = accuracy(r.overall.matrix);
  r.kappa = cohen_kappa(r.overall.matrix);
  r.kappa_merged = kappa_merged(r.overall.matrix);
  r.per_paper = per_paper_accuracy(human, automated, schema);

  const auto rows = r.overall.matrix.row_marginals();
  const auto cols = r.overall.matrix.col_marginals();
  r.class_distribution.human = rows;
  r.class_distribution.automated = cols;

  std::map<std::string, ConfusionMatrix> per_dim;
  for (const auto& item : schema.items()) {
    if (item.is_ternary()) {
      FieldAgreement fa;
      fa.item_id = item.id;
      fa.dimension = item.dimension;
      for_each_pair(human, automated, [&](const Assessment& h, const Assessment& b) {
        if (const auto pair = comparable(h, b, item, nullptr)) fa.matrix.add(pair->first, pair->second);
      });
      fa.n = fa.matrix.n();
      if (fa.n > 0) {
        fa.accuracy = accuracy(fa.matrix);
        fa.kappa = cohen_kappa(fa.matrix);
      }
      per_dim[item.dimension] += fa.matrix;
      r.per_field.push_back(std::move(fa));
    } else {
      CategoricalAgreement ca;
      ca.item_id = item.id;
      for_each_pair(human, automated, [&](const Assessment& h, const Assessment& b) {
        const auto* x = h.answer(item.id);
        const auto* y = b.answer(item.id);
        if (!x || !y || x->is_sentinel() || y->is_sentinel()) return;
        if (!item.domain.contains(x->value) || !item.domain.contains(y->value)) return;
        ++ca.n;
        ca.exact_matches += x->value == y->value;
      });
      if (ca.n > 0) ca.accuracy = static_cast<double>(ca.exact_matches) / static_cast<double>(ca.n);
      r.categorical_fields.push_back(std::move(ca));
    }
  }
  for (const auto& dim : schema.dimensions()) {
    const auto it = per_dim.find(dim);
    if (it == per_dim.end()) continue;
    DimensionAgreement da;
    da.dimension = dim;
    da.n = it->second.n();
    if (da.n > 0) {
      da.accuracy = accuracy(it->second);
      da.kappa = cohen_kappa(it->second);
      da.kappa_merged = kappa_merged(it->second);
    }
    r.per_dimension.push_back(std::move(da));
  }
  return r;
}

}  // namespace recap::analysis
