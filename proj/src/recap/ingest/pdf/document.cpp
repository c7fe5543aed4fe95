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

#include "recap/ingest/pdf/document.hpp"

#include <algorithm>
#include <cstring>

#include "recap/common/error.hpp"
#include "recap/ingest/pdf/filters.hpp"
#include "recap/ingest/pdf/lexer.hpp"

namespace recap::ingest::pdf {

namespace {

constexpr int kMaxPageDepth = 64;
constexpr size_t kMaxPages = 20000;

bool keyword_at(std::string_view data, size_t pos, std::string_view kw) {
  Lexer lx(data, pos);
  Token t = lx.next();
  return t.kind == TokenKind::kKeyword && t.text == kw;
}

}  // namespace

Document::Document(std::string data) : data_(std::move(data)) {
  const size_t header = data_.find("%PDF-");
  if (header == std::string::npos || header > 1024) {
    fail(ErrorCode::kUnreadableDocument, "missing PDF header");
  }
  bool ok = false;
  try {
    ok = read_xref_chain();
  } catch (const std::exception&) {
    ok = false;
  }
  if (!ok || !lookup(trailer_, "Root").ref()) rebuild_by_scanning();
  if (!lookup(trailer_, "Encrypt").is_null()) {
    fail(ErrorCode::kEncryptedDocument, "document is encrypted");
  }
  if (!resolve(lookup(trailer_, "Root")).dict()) {
    fail(ErrorCode::kUnreadableDocument, "document catalog not found");
  }
  collect_pages();
  if (pages_.empty()) fail(ErrorCode::kUnreadableDocument, "document has no pages");
}

bool Document::read_xref_chain() {
  const size_t sx = data_.rfind("startxref");
  if (sx == std::string::npos) return false;
  Lexer lx(data_, sx + 9);
  Token off = lx.next();
  if (off.kind != TokenKind::kNumber || off.number < 0 || off.number >= data_.size()) return false;
  std::set<size_t> seen;
  return read_xref_at(static_cast<size_t>(off.number), seen);
}

bool Document::read_xref_at(size_t offset, std::set<size_t>& seen) {
  if (!seen.insert(offset).second || offset >= data_.size()) return false;
  if (keyword_at(data_, offset, "xref")) return read_xref_table(offset, seen);
  return read_xref_stream(offset, seen);
}

void Document::merge_trailer(const Dict& dict) {
  for (const auto& [k, v] : dict) {
    if (k == "Prev" || k == "XRefStm" || k == "W" || k == "Index" || k == "Filter" ||
        k == "DecodeParms" || k == "Length" || k == "Type") {
      continue;
    }
    trailer_.emplace(k, v);
  }
}

bool Document::read_xref_table(size_t offset, std::set<size_t>& seen) {
  Lexer lx(data_, offset);
  lx.next();  // xref
  for (;;) {
    Token a = lx.next();
    if (a.kind == TokenKind::kKeyword && a.text == "trailer") break;
    Token b = lx.next();
    if (a.kind != TokenKind::kNumber || b.kind != TokenKind::kNumber) return false;
    const int start = static_cast<int>(a.number);
    const int count = static_cast<int>(b.number);
    for (int i = 0; i < count; ++i) {
      Token o = lx.next();
      Token g = lx.next();
      Token f = lx.next();
      if (o.kind != TokenKind::kNumber || g.kind != TokenKind::kNumber || f.kind != TokenKind::kKeyword) {
        return false;
      }
      if (f.text == "n" && o.number > 0) {
        XrefEntry e;
        e.offset = static_cast<size_t>(o.number);
        xref_.emplace(start + i, e);
      } else {
        // Free entries still shadow older sections.
        if (!xref_.count(start + i)) xref_.emplace(start + i, XrefEntry{XrefEntry::kOffset, 0, -1});
      }
    }
  }
  Parser p(data_, lx.pos());
  Object tr = p.parse_object();
  if (!tr.dict()) return false;
  merge_trailer(*tr.dict());
  if (auto stm = tr.get("XRefStm").integer(); stm && *stm > 0) {
    read_xref_stream(static_cast<size_t>(*stm), seen);
  }
  if (auto prev = tr.get("Prev").integer(); prev && *prev >= 0) {
    read_xref_at(static_cast<size_t>(*prev), seen);
  }
  return true;
}

bool Document::read_xref_stream(size_t offset, std::set<size_t>& seen) {
  Parser p(data_, offset);
  auto ind = p.parse_indirect();
  if (!ind) return false;
  const Stream* s = ind->second.stream();
  if (!s || !lookup(s->dict, "Type").is_name("XRef")) return false;
  const Object& w_obj = lookup(s->dict, "W");
  const Array* w = w_obj.array();
  if (!w || w->size() < 3) return false;
  int widths[3];
  for (int i = 0; i < 3; ++i) widths[i] = std::max(0, (*w)[i].integer().value_or(0));
  const int row = widths[0] + widths[1] + widths[2];
  if (row <= 0) return false;

  std::vector<std::pair<int, int>> ranges;
  if (const Array* idx = lookup(s->dict, "Index").array()) {
    for (size_t i = 0; i + 1 < idx->size(); i += 2) {
      ranges.emplace_back((*idx)[i].integer().value_or(0), (*idx)[i + 1].integer().value_or(0));
    }
  } else {
    ranges.emplace_back(0, lookup(s->dict, "Size").integer().value_or(0));
  }

  const std::string body = decode_stream(*s);
  size_t pos = 0;
  auto field = [&](int width, long long fallback) {
    if (width == 0) return fallback;
    long long v = 0;
    for (int k = 0; k < width; ++k) v = (v << 8) | static_cast<unsigned char>(body[pos++]);
    return v;
  };
  for (auto [start, count] : ranges) {
    for (int i = 0; i < count; ++i) {
      if (pos + row > body.size()) break;
      const long long type = field(widths[0], 1);
      const long long f2 = field(widths[1], 0);
      const long long f3 = field(widths[2], 0);
      const int num = start + i;
      if (xref_.count(num)) continue;
      if (type == 1) {
        xref_.emplace(num, XrefEntry{XrefEntry::kOffset, static_cast<size_t>(f2), 0});
      } else if (type == 2) {
        xref_.emplace(num, XrefEntry{XrefEntry::kCompressed, static_cast<size_t>(f2), static_cast<int>(f3)});
      } else {
        xref_.emplace(num, XrefEntry{XrefEntry::kOffset, 0, -1});
      }
    }
  }
  merge_trailer(s->dict);
  if (auto prev = lookup(s->dict, "Prev").integer(); prev && *prev >= 0) {
    read_xref_at(static_cast<size_t>(*prev), seen);
  }
  return true;
}

void Document::rebuild_by_scanning() {
  xref_.clear();
  cache_.clear();
  size_t pos = 0;
  std::string_view view(data_);
  while ((pos = view.find(" obj", pos)) != std::string_view::npos) {
    // Walk back over "<num> <gen>".
    size_t p = pos;
    auto back_digits = [&](size_t& q) {
      size_t end = q;
      while (q > 0 && std::isdigit(static_cast<unsigned char>(view[q - 1]))) --q;
      return q < end;
    };
    size_t q = p;
    if (back_digits(q) && q > 0 && view[q - 1] == ' ') {
      size_t gen_start = q;
      --q;
      while (q > 0 && view[q - 1] == ' ') --q;
      size_t num_end = q;
      if (back_digits(q) && (q == 0 || is_pdf_whitespace(view[q - 1]))) {
        const int num = std::atoi(std::string(view.substr(q, num_end - q)).c_str());
        (void)gen_start;
        xref_[num] = XrefEntry{XrefEntry::kOffset, q, 0};
      }
    }
    pos += 4;
  }
  // Objects inside object streams.
  std::vector<int> stream_nums;
  for (const auto& [num, e] : xref_) stream_nums.push_back(num);
  for (int num : stream_nums) {
    const Object& o = get(Ref{num, 0});
    const Stream* s = o.stream();
    if (!s) continue;
    if (lookup(s->dict, "Type").is_name("ObjStm")) {
      load_compressed(num, -1, -1);
      for (const auto& [obj_num, off] : objstm_index_[num]) {
        (void)off;
        if (!xref_.count(obj_num)) {
          int idx = 0;
          for (const auto& pr : objstm_index_[num]) {
            if (pr.first == obj_num) break;
            ++idx;
          }
          xref_.emplace(obj_num, XrefEntry{XrefEntry::kCompressed, static_cast<size_t>(num), idx});
        }
      }
    } else if (lookup(s->dict, "Type").is_name("XRef")) {
      merge_trailer(s->dict);
    }
  }
  size_t tpos = view.rfind("trailer");
  while (tpos != std::string_view::npos) {
    Parser p(data_, tpos + 7);
    Object tr = p.parse_object();
    if (tr.dict()) merge_trailer(*tr.dict());
    if (tpos == 0) break;
    tpos = view.rfind("trailer", tpos - 1);
  }
  if (!lookup(trailer_, "Root").ref()) {
    for (const auto& [num, e] : xref_) {
      const Object& o = get(Ref{num, 0});
      if (o.get("Type").is_name("Catalog")) {
        trailer_.insert_or_assign("Root", Object(Ref{num, 0}));
        break;
      }
    }
  }
}

const Object& Document::get(Ref ref) {
  if (auto it = cache_.find(ref.num); it != cache_.end()) return it->second;
  if (loading_.count(ref.num)) return Object::null();
  loading_.insert(ref.num);
  Object obj;
  try {
    obj = load(ref);
  } catch (const Error&) {
    loading_.erase(ref.num);
    throw;
  } catch (const std::exception&) {
    obj = Object();
  }
  loading_.erase(ref.num);
  return cache_.emplace(ref.num, std::move(obj)).first->second;
}

Object Document::load(Ref ref) {
  const auto it = xref_.find(ref.num);
  if (it == xref_.end() || it->second.index < 0) return {};
  const XrefEntry e = it->second;
  if (e.kind == XrefEntry::kCompressed) {
    return load_compressed(static_cast<int>(e.offset), e.index, ref.num);
  }
  if (e.offset >= data_.size()) return {};
  LengthResolver resolver = [this](const Object& o) -> std::optional<size_t> {
    if (auto n = resolve(o).integer(); n && *n >= 0) return static_cast<size_t>(*n);
    return std::nullopt;
  };
  Parser p(data_, e.offset, resolver);
  auto ind = p.parse_indirect();
  if (ind && ind->first.num == ref.num) return std::move(ind->second);
  // Slightly off offsets: look for the object header nearby.
  const std::string header = std::to_string(ref.num) + " " + std::to_string(ref.gen) + " obj";
  const size_t lo = e.offset > 64 ? e.offset - 64 : 0;
  const size_t found = data_.find(header, lo);
  if (found != std::string::npos && found < e.offset + 1024) {
    Parser p2(data_, found, resolver);
    if (auto ind2 = p2.parse_indirect()) return std::move(ind2->second);
  }
  return {};
}

Object Document::load_compressed(int stream_num, int index, int obj_num) {
  if (!objstm_data_.count(stream_num)) {
    const Object& so = get(Ref{stream_num, 0});
    const Stream* s = so.stream();
    if (!s) return {};
    std::string body = decode_stream(*s);
    const int n = lookup(s->dict, "N").integer().value_or(0);
    const size_t first = static_cast<size_t>(std::max(0, lookup(s->dict, "First").integer().value_or(0)));
    Lexer lx(body, 0);
    std::vector<std::pair<int, size_t>> entries;
    for (int i = 0; i < n; ++i) {
      Token a = lx.next();
      Token b = lx.next();
      if (a.kind != TokenKind::kNumber || b.kind != TokenKind::kNumber) break;
      entries.emplace_back(static_cast<int>(a.number), first + static_cast<size_t>(b.number));
    }
    objstm_index_[stream_num] = std::move(entries);
    objstm_data_[stream_num] = std::move(body);
  }
  if (index < 0) return {};
  const auto& entries = objstm_index_[stream_num];
  const std::string& body = objstm_data_[stream_num];
  size_t off = std::string::npos;
  if (index < static_cast<int>(entries.size()) && entries[index].first == obj_num) {
    off = entries[index].second;
  } else {
    for (const auto& [num, o] : entries) {
      if (num == obj_num) off = o;
    }
  }
  if (off == std::string::npos || off >= body.size()) return {};
  Parser p(body, off);
  return p.parse_object();
}

const Object& Document::resolve(const Object& obj) {
  const Object* cur = &obj;
  for (int i = 0; i < 32 && cur->ref(); ++i) cur = &get(*cur->ref());
  return cur->ref() ? Object::null() : *cur;
}

const Object& Document::get(const Object& owner, std::string_view key) {
  return resolve(resolve(owner).get(key));
}

std::string Document::decode_stream(const Stream& stream) {
  std::string data = stream.raw;
  const Object& filter = resolve(lookup(stream.dict, "Filter"));
  const Object& parms = resolve(lookup(stream.dict, "DecodeParms"));
  if (const auto* name = filter.name()) {
    const Object& p = parms.array() && !parms.array()->empty() ? resolve(parms.array()->front()) : parms;
    return apply_filter(*name, std::move(data), p);
  }
  if (const Array* filters = filter.array()) {
    for (size_t i = 0; i < filters->size(); ++i) {
      const auto* name = resolve((*filters)[i]).name();
      if (!name) continue;
      const Object* p = &Object::null();
      if (const Array* pa = parms.array(); pa && i < pa->size()) p = &resolve((*pa)[i]);
      else if (parms.dict()) p = &parms;
      data = apply_filter(*name, std::move(data), *p);
    }
  }
  return data;
}

void Document::collect_pages() {
  const Object& root = resolve(lookup(trailer_, "Root"));
  const Object& tree = get(root, "Pages");
  std::set<int> visited;
  walk_pages(tree, Dict{}, {0, 0, 612, 792}, visited, 0);
}

void Document::walk_pages(const Object& node, Dict resources, std::array<double, 4> box,
                          std::set<int>& visited, int depth) {
  if (depth > kMaxPageDepth || pages_.size() >= kMaxPages) return;
  const Dict* d = node.dict();
  if (!d) return;
  if (const Dict* res = get(node, "Resources").dict()) resources = *res;
  if (const Array* mb = get(node, "MediaBox").array(); mb && mb->size() == 4) {
    for (int i = 0; i < 4; ++i) box[i] = resolve((*mb)[i]).number_or(box[i]);
  }
  const Object& kids = get(node, "Kids");
  const bool is_page = lookup(*d, "Type").is_name("Page") || (!kids.array() && !lookup(*d, "Contents").is_null());
  if (!is_page) {
    if (const Array* arr = kids.array()) {
      for (const Object& kid : *arr) {
        if (const Ref* r = kid.ref()) {
          if (!visited.insert(r->num).second) continue;
        }
        walk_pages(resolve(kid), resources, box, visited, depth + 1);
      }
    }
    return;
  }
  Page page;
  page.resources = std::move(resources);
  page.media_box = {std::min(box[0], box[2]), std::min(box[1], box[3]), std::max(box[0], box[2]),
                    std::max(box[1], box[3])};
  const Object& contents = get(node, "Contents");
  auto append = [&](const Object& o) {
    if (const Stream* s = resolve(o).stream()) {
      page.content += decode_stream(*s);
      page.content.push_back('\n');
    }
  };
  if (const Array* arr = contents.array()) {
    for (const Object& c : *arr) append(c);
  } else {
    append(contents);
  }
  pages_.push_back(std::move(page));
}

}  // namespace recap::ingest::pdf
