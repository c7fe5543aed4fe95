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

#include "recap/ingest/pdf/layout.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <optional>

namespace recap::ingest::pdf {

namespace {

struct Word {
  std::string text;
  double x0 = 0, x1 = 0, y = 0, size = 0;
  bool space_before = false;
  bool superscript = false;
  std::optional<std::string> footnote;  // spliced note replacing this marker
};

struct Line {
  std::vector<Word> words;
  double y = 0, size = 0, x0 = 0, x1 = 0;
  int segment = 0;
  bool spanning = false;
  bool footnote_start = false;
  bool dropped = false;
};

struct Gutter {
  double lo = 0, hi = 0;
  double center() const { return (lo + hi) / 2; }
  double width() const { return hi - lo; }
};

std::vector<Word> build_words(const std::vector<PlacedGlyph>& glyphs, const std::array<double, 4>& box,
                              const LayoutOptions& opt) {
  std::vector<Word> words;
  Word cur;
  bool have = false;
  bool pending_space = false;
  auto flush = [&] {
    if (have && !cur.text.empty()) words.push_back(std::move(cur));
    cur = Word{};
    have = false;
  };
  const double margin = 10;
  for (const PlacedGlyph& g : glyphs) {
    if (!g.upright || g.size < 0.5) continue;
    if (g.x < box[0] - margin || g.x > box[2] + margin || g.y < box[1] - margin || g.y > box[3] + margin) continue;
    if (g.space) {
      flush();
      pending_space = true;
      continue;
    }
    if (g.text.empty()) continue;
    if (have) {
      const double size = std::max(cur.size, g.size);
      const double ratio = g.size / cur.size;
      const bool same_base = std::abs(g.y - cur.y) < 0.12 * size && ratio > 0.85 && ratio < 1.18;
      const double gap = g.x - cur.x1;
      if (same_base && gap > -0.3 * size && gap < opt.word_gap * size && !pending_space) {
        cur.text += g.text;
        cur.x1 = std::max(cur.x1, g.x + g.advance);
        continue;
      }
      flush();
    }
    cur.text = g.text;
    cur.x0 = g.x;
    cur.x1 = g.x + g.advance;
    cur.y = g.y;
    cur.size = g.size;
    cur.space_before = pending_space;
    have = true;
    pending_space = false;
  }
  flush();
  return words;
}

double body_size(const std::vector<Word>& words) {
  std::map<long, size_t> weight;
  for (const Word& w : words) weight[std::lround(w.size * 10)] += w.text.size();
  long best = 100;
  size_t best_w = 0;
  for (const auto& [s, n] : weight) {
    if (n > best_w) {
      best_w = n;
      best = s;
    }
  }
  return best / 10.0;
}

std::optional<Gutter> find_gutter(const std::vector<Word>& words, double body) {
  std::vector<const Word*> ws;
  for (const Word& w : words) {
    if (w.size >= 0.7 * body) ws.push_back(&w);
  }
  if (ws.size() < 20) return std::nullopt;
  double lo = std::numeric_limits<double>::max(), hi = std::numeric_limits<double>::lowest();
  for (const Word* w : ws) {
    lo = std::min(lo, w->x0);
    hi = std::max(hi, w->x1);
  }
  const double width = hi - lo;
  if (width < 100) return std::nullopt;
  const size_t n = static_cast<size_t>(std::ceil(width));
  std::vector<int> diff(n + 2, 0);
  for (const Word* w : ws) {
    // Bins whose centre lies strictly inside the word.
    const double a = w->x0 - lo - 0.5, b = w->x1 - lo - 0.5;
    const long first = static_cast<long>(std::floor(a)) + 1;
    const long last = static_cast<long>(std::ceil(b)) - 1;
    if (last < first) continue;
    diff[std::clamp<long>(first, 0, n)] += 1;
    diff[std::clamp<long>(last + 1, 0, n)] -= 1;
  }
  std::vector<int> count(n);
  int run = 0;
  for (size_t i = 0; i < n; ++i) count[i] = run += diff[i];

  const size_t r0 = n * 3 / 10, r1 = n * 7 / 10;
  int min_c = std::numeric_limits<int>::max();
  for (size_t i = r0; i < r1; ++i) min_c = std::min(min_c, count[i]);
  std::vector<int> sorted(count.begin() + n / 20, count.begin() + n - n / 20);
  std::nth_element(sorted.begin(), sorted.begin() + sorted.size() / 2, sorted.end());
  const int median = sorted[sorted.size() / 2];
  if (median - min_c < 5) return std::nullopt;
  const double threshold = min_c + 0.2 * (median - min_c);

  size_t best_a = 0, best_b = 0;
  for (size_t i = r0; i < r1;) {
    if (count[i] > threshold) {
      ++i;
      continue;
    }
    size_t a = i, b = i;
    while (a > 0 && count[a - 1] <= threshold) --a;
    while (b + 1 < n && count[b + 1] <= threshold) ++b;
    if (b - a > best_b - best_a || best_b == 0) {
      best_a = a;
      best_b = b;
    }
    i = b + 1;
  }
  if (best_b == 0 && best_a == 0) return std::nullopt;
  Gutter g{lo + best_a, lo + best_b + 1};
  if (g.width() < std::max(body, 8.0)) return std::nullopt;
  size_t left = 0, right = 0;
  for (const Word* w : ws) {
    if (w->x1 <= g.center()) ++left;
    if (w->x0 >= g.center()) ++right;
  }
  if (left < ws.size() * 15 / 100 || right < ws.size() * 15 / 100) return std::nullopt;
  return g;
}

std::vector<Line> cluster_lines(std::vector<Word> words) {
  std::sort(words.begin(), words.end(), [](const Word& a, const Word& b) {
    if (a.y != b.y) return a.y > b.y;
    return a.x0 < b.x0;
  });
  std::vector<Line> lines;
  for (Word& w : words) {
    Line* target = nullptr;
    double best = std::numeric_limits<double>::max();
    for (size_t k = lines.size(), seen = 0; k-- > 0 && seen < 4; ++seen) {
      Line& l = lines[k];
      const double dy = std::abs(w.y - l.y);
      if (dy <= 0.5 * std::max(w.size, l.size) && dy < best) {
        best = dy;
        target = &l;
      }
    }
    if (!target) {
      lines.emplace_back();
      target = &lines.back();
      target->y = w.y;
      target->size = w.size;
    } else if (w.size > target->size * 1.05) {
      target->y = w.y;
      target->size = w.size;
    }
    target->words.push_back(std::move(w));
  }
  for (Line& l : lines) {
    std::sort(l.words.begin(), l.words.end(), [](const Word& a, const Word& b) { return a.x0 < b.x0; });
    l.x0 = l.words.front().x0;
    l.x1 = l.words.back().x1;
    for (const Word& w : l.words) l.x1 = std::max(l.x1, w.x1);
    for (Word& w : l.words) {
      w.superscript = w.size < 0.85 * l.size && w.y - l.y > 0.15 * l.size;
    }
  }
  return lines;
}

void merge_into(Line& dst, Line& src) {
  for (Word& w : src.words) dst.words.push_back(std::move(w));
  src.words.clear();
  src.dropped = true;
  if (src.size > dst.size * 1.05) {
    dst.size = src.size;
    dst.y = src.y;
  }
  std::sort(dst.words.begin(), dst.words.end(), [](const Word& a, const Word& b) { return a.x0 < b.x0; });
  dst.x0 = dst.words.front().x0;
  dst.x1 = std::max(dst.x1, src.x1);
}

bool is_marker_text(const std::string& t) {
  if (t == "*" || t == "\xE2\x80\xA0" || t == "\xE2\x80\xA1" || t == "\xC2\xA7" || t == "\xC2\xB6") return true;
  return !t.empty() && t.size() <= 2 && std::all_of(t.begin(), t.end(), [](char c) { return c >= '0' && c <= '9'; });
}

bool ends_with_soft_hyphen(const std::string& s) {
  return s.size() >= 2 && s.compare(s.size() - 2, 2, "\xC2\xAD") == 0;
}

bool ends_with_break_hyphen(const std::string& s) {
  size_t cut;
  if (!s.empty() && s.back() == '-') cut = 1;
  else if (s.size() >= 3 && s.compare(s.size() - 3, 3, "\xE2\x80\x90") == 0) cut = 3;
  else return false;
  if (s.size() <= cut) return false;
  const unsigned char before = static_cast<unsigned char>(s[s.size() - cut - 1]);
  return std::isalpha(before) || before >= 0x80;
}

// Joins `next` onto `out` as a continuation line, rejoining hyphenated words.
void append_continuation(std::string& out, const std::string& next, const char* separator) {
  if (out.empty()) {
    out = next;
    return;
  }
  if (ends_with_soft_hyphen(out)) {
    out.resize(out.size() - 2);
    out += next;
    return;
  }
  if (ends_with_break_hyphen(out) && !next.empty() && next[0] >= 'a' && next[0] <= 'z') {
    out.resize(out.back() == '-' ? out.size() - 1 : out.size() - 3);
    out += next;
    return;
  }
  out += separator;
  out += next;
}

std::string line_text(const Line& l) {
  std::string out;
  const Word* prev = nullptr;
  for (const Word& w : l.words) {
    if (w.footnote) {
      if (!out.empty()) out += ' ';
      out += *w.footnote;
      prev = &w;
      continue;
    }
    if (prev) {
      const double gap = w.x0 - prev->x1;
      if (prev->footnote || w.space_before || gap > 0.15 * std::min(w.size, prev->size)) out += ' ';
    }
    out += w.text;
    prev = &w;
  }
  return out;
}

struct Footnote {
  std::string marker;
  std::vector<Line*> lines;
};

// Footnote blocks at the bottom of one column segment.
std::vector<Footnote> find_footnotes(std::vector<Line*>& segment, double body) {
  std::vector<Footnote> notes;
  size_t start = segment.size();
  while (start > 0 && segment[start - 1]->size < 0.92 * body) --start;
  if (start == segment.size()) return notes;
  size_t first_marker = segment.size();
  for (size_t i = start; i < segment.size(); ++i) {
    const Line& l = *segment[i];
    if (l.words.size() >= 2 && (l.words[0].superscript || is_marker_text(l.words[0].text))) {
      first_marker = i;
      break;
    }
  }
  for (size_t i = first_marker; i < segment.size(); ++i) {
    Line* l = segment[i];
    const bool starts = l->words.size() >= 2 && (l->words[0].superscript || is_marker_text(l->words[0].text));
    if (starts) {
      notes.push_back({l->words[0].text, {l}});
      l->footnote_start = true;
    } else if (!notes.empty()) {
      notes.back().lines.push_back(l);
    }
  }
  return notes;
}

}  // namespace

std::string layout_page(const std::vector<PlacedGlyph>& glyphs, const std::array<double, 4>& media_box,
                        const LayoutOptions& opt) {
  std::vector<Word> words = build_words(glyphs, media_box, opt);
  if (words.empty()) return {};
  const double body = body_size(words);
  const std::optional<Gutter> gutter = find_gutter(words, body);

  // Ordered segments of lines; spanning segments hold full-width lines.
  std::vector<std::vector<Line>> storage;
  std::vector<Line*> ordered;
  std::vector<std::vector<Line*>> segments;

  auto by_y = [](const Line* a, const Line* b) { return a->y > b->y; };

  if (!gutter) {
    storage.push_back(cluster_lines(std::move(words)));
    std::vector<Line*> seg;
    for (Line& l : storage[0]) seg.push_back(&l);
    std::sort(seg.begin(), seg.end(), by_y);
    segments.push_back(std::move(seg));
  } else {
    const double gx = gutter->center();
    std::vector<Word> left, right, cross;
    for (Word& w : words) {
      if (w.x0 < gx - 0.5 && w.x1 > gx + 0.5) cross.push_back(std::move(w));
      else if ((w.x0 + w.x1) / 2 < gx) left.push_back(std::move(w));
      else right.push_back(std::move(w));
    }
    storage.push_back(cluster_lines(std::move(left)));
    storage.push_back(cluster_lines(std::move(right)));
    storage.push_back(cluster_lines(std::move(cross)));
    auto& ls = storage[0];
    auto& rs = storage[1];
    auto& xs = storage[2];
    for (Line& x : xs) {
      x.spanning = true;
      for (auto* side : {&ls, &rs}) {
        for (Line& l : *side) {
          if (!l.dropped && std::abs(l.y - x.y) < 0.5 * std::max(l.size, x.size)) merge_into(x, l);
        }
      }
    }
    for (Line& l : ls) {
      if (l.dropped) continue;
      for (Line& r : rs) {
        if (r.dropped) continue;
        if (std::abs(l.y - r.y) < 0.3 * std::max(l.size, r.size) && r.x0 - l.x1 < opt.span_gap_ratio * gutter->width()) {
          merge_into(l, r);
          l.spanning = true;
          break;
        }
      }
    }
    std::vector<Line*> spans, lefts, rights;
    for (Line& l : ls) {
      if (!l.dropped) (l.spanning ? spans : lefts).push_back(&l);
    }
    for (Line& l : rs) {
      if (!l.dropped) rights.push_back(&l);
    }
    for (Line& l : xs) {
      if (!l.dropped) spans.push_back(&l);
    }
    std::sort(spans.begin(), spans.end(), by_y);
    std::sort(lefts.begin(), lefts.end(), by_y);
    std::sort(rights.begin(), rights.end(), by_y);

    double upper = std::numeric_limits<double>::infinity();
    auto emit_band = [&](double lower) {
      for (auto* col : {&lefts, &rights}) {
        std::vector<Line*> seg;
        for (Line* l : *col) {
          if (l->y < upper && l->y >= lower) seg.push_back(l);
        }
        if (!seg.empty()) segments.push_back(std::move(seg));
      }
    };
    std::vector<Line*> span_run;
    for (Line* s : spans) {
      // Column text between two full-width lines.
      bool has_between = false;
      for (auto* col : {&lefts, &rights}) {
        for (Line* l : *col) has_between |= (l->y < upper && l->y >= s->y);
      }
      if (has_between) {
        if (!span_run.empty()) segments.push_back(std::move(span_run));
        span_run.clear();
        emit_band(s->y);
      }
      span_run.push_back(s);
      upper = s->y;
    }
    if (!span_run.empty()) segments.push_back(std::move(span_run));
    emit_band(-std::numeric_limits<double>::infinity());
  }

  for (size_t i = 0; i < segments.size(); ++i) {
    for (Line* l : segments[i]) l->segment = static_cast<int>(i);
  }

  // Footnotes: splice matched notes at their superscript markers.
  if (opt.inline_footnotes) {
    std::vector<Footnote> notes;
    for (auto& seg : segments) {
      if (seg.empty() || seg.front()->spanning) continue;
      for (Footnote& f : find_footnotes(seg, body)) notes.push_back(std::move(f));
    }
    for (Footnote& note : notes) {
      Word* anchor = nullptr;
      for (auto& seg : segments) {
        for (Line* l : seg) {
          if (l->footnote_start || l->size < 0.92 * body) continue;
          for (Word& w : l->words) {
            if (w.superscript && !w.footnote && w.text == note.marker) {
              anchor = &w;
              break;
            }
          }
          if (anchor) break;
        }
        if (anchor) break;
      }
      if (!anchor) continue;
      std::string text;
      for (Line* l : note.lines) {
        Line copy = *l;
        if (l == note.lines.front()) copy.words.erase(copy.words.begin());
        append_continuation(text, line_text(copy), " ");
        l->dropped = true;
      }
      anchor->footnote = "(footnote " + note.marker + ": " + text + ")";
    }
  }

  std::vector<double> pitches;
  for (const auto& seg : segments) {
    for (size_t i = 1; i < seg.size(); ++i) {
      if (std::abs(seg[i]->size - body) < 0.1 * body && std::abs(seg[i - 1]->size - body) < 0.1 * body) {
        pitches.push_back(seg[i - 1]->y - seg[i]->y);
      }
    }
  }
  double pitch = 1.2 * body;
  if (!pitches.empty()) {
    std::nth_element(pitches.begin(), pitches.begin() + pitches.size() / 2, pitches.end());
    pitch = pitches[pitches.size() / 2];
  }

  std::string out;
  const Line* prev = nullptr;
  for (const auto& seg : segments) {
    for (const Line* l : seg) {
      if (l->dropped || l->words.empty()) continue;
      const std::string t = line_text(*l);
      if (t.empty()) continue;
      if (!prev) {
        out = t;
      } else {
        bool para = false;
        if (prev->segment == l->segment && prev->y - l->y > opt.paragraph_gap * pitch) para = true;
        if (std::abs(prev->size - l->size) > 0.15 * std::max(prev->size, l->size)) para = true;
        if (prev->segment != l->segment && (prev->spanning || l->spanning)) para = true;
        if (para) {
          out += "\n\n";
          out += t;
        } else {
          append_continuation(out, t, "\n");
        }
      }
      prev = l;
    }
  }
  return out;
}

}  // namespace recap::ingest::pdf
