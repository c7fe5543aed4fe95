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

#include "recap/ingest/pdf/font.hpp"

#include <algorithm>
#include <cstring>
#include <unordered_map>

#include "recap/common/text.hpp"
#include "recap/ingest/pdf/lexer.hpp"
#include "recap/ingest/pdf/tables.hpp"

namespace recap::ingest::pdf {

namespace {

constexpr uint32_t kMaxRange = 65536;

const std::unordered_map<std::string_view, char32_t>& glyph_map() {
  static const auto* kMap = [] {
    auto* m = new std::unordered_map<std::string_view, char32_t>();
    for (const auto& g : tables::glyph_list()) m->emplace(g.name, g.code_point);
    return m;
  }();
  return *kMap;
}

bool parse_hex(std::string_view s, uint32_t& out) {
  if (s.empty() || s.size() > 8) return false;
  out = 0;
  for (char c : s) {
    out <<= 4;
    if (c >= '0' && c <= '9') out |= c - '0';
    else if (c >= 'A' && c <= 'F') out |= c - 'A' + 10;
    else if (c >= 'a' && c <= 'f') out |= c - 'a' + 10;
    else return false;
  }
  return true;
}

std::string component_to_utf8(std::string_view name) {
  std::string out;
  const auto& map = glyph_map();
  if (auto it = map.find(name); it != map.end()) {
    text::append_utf8(out, it->second);
    return out;
  }
  if (name.size() >= 7 && name.substr(0, 3) == "uni" && (name.size() - 3) % 4 == 0) {
    for (size_t i = 3; i < name.size(); i += 4) {
      uint32_t cp;
      if (!parse_hex(name.substr(i, 4), cp)) return {};
      text::append_utf8(out, cp);
    }
    return out;
  }
  if (name.size() >= 5 && name.size() <= 7 && name[0] == 'u') {
    uint32_t cp;
    if (parse_hex(name.substr(1), cp)) {
      text::append_utf8(out, cp);
      return out;
    }
  }
  return {};
}

uint32_t code_of(std::string_view bytes) {
  uint32_t v = 0;
  for (char c : bytes) v = (v << 8) | static_cast<unsigned char>(c);
  return v;
}

std::u32string utf16be_to_u32(std::string_view bytes) {
  std::u32string out;
  for (size_t i = 0; i + 1 < bytes.size(); i += 2) {
    char32_t u = (static_cast<unsigned char>(bytes[i]) << 8) | static_cast<unsigned char>(bytes[i + 1]);
    if (u >= 0xD800 && u < 0xDC00 && i + 3 < bytes.size()) {
      const char32_t lo = (static_cast<unsigned char>(bytes[i + 2]) << 8) | static_cast<unsigned char>(bytes[i + 3]);
      if (lo >= 0xDC00 && lo < 0xE000) {
        u = 0x10000 + ((u - 0xD800) << 10) + (lo - 0xDC00);
        i += 2;
      }
    }
    out.push_back(u);
  }
  if (bytes.size() == 1) out.push_back(static_cast<unsigned char>(bytes[0]));
  return out;
}

std::string u32_to_utf8(const std::u32string& s) {
  std::string out;
  for (char32_t c : s) {
    if (c != 0) text::append_utf8(out, c);
  }
  return out;
}

std::string base_font_name(std::string_view raw) {
  std::string name(raw);
  if (name.size() > 7 && name[6] == '+') name = name.substr(7);
  return name;
}

const tables::FontMetrics* standard_font(std::string_view base) {
  std::string n = text::to_lower(base);
  n.erase(std::remove_if(n.begin(), n.end(), [](char c) { return c == ' ' || c == '-' || c == ','; }), n.end());
  const bool bold = n.find("bold") != std::string::npos;
  const bool italic = n.find("italic") != std::string::npos || n.find("oblique") != std::string::npos;
  std::string target;
  if (n.find("symbol") != std::string::npos) {
    target = "Symbol";
  } else if (n.find("helvetica") != std::string::npos || n.find("arial") != std::string::npos) {
    target = bold ? "Helvetica-Bold" : "Helvetica";
  } else if (n.find("times") != std::string::npos) {
    target = bold ? (italic ? "Times-BoldItalic" : "Times-Bold") : (italic ? "Times-Italic" : "Times-Roman");
  } else {
    return nullptr;
  }
  for (const auto& m : tables::standard_metrics()) {
    if (target == m.font) return &m;
  }
  return nullptr;
}

bool is_courier(std::string_view base) {
  return text::to_lower(base).find("courier") != std::string::npos;
}

// `dup <code> /<name> put` entries of a Type 1 font's clear-text header.
std::vector<std::pair<int, std::string>> type1_builtin_encoding(std::string_view program) {
  std::vector<std::pair<int, std::string>> out;
  const size_t enc = program.find("/Encoding");
  if (enc == std::string_view::npos) return out;
  size_t end = program.find("eexec", enc);
  if (end == std::string_view::npos) end = program.size();
  Lexer lx(program.substr(enc, end - enc));
  lx.next();
  Token a = lx.next();
  if (a.kind == TokenKind::kKeyword && a.text == "StandardEncoding") return out;
  for (Token t = a; t.kind != TokenKind::kEof; t = lx.next()) {
    if (t.kind == TokenKind::kKeyword && t.text == "readonly") break;
    if (t.kind == TokenKind::kKeyword && t.text == "def") break;
    if (t.kind != TokenKind::kKeyword || t.text != "dup") continue;
    Token code = lx.next();
    Token name = lx.next();
    if (code.kind == TokenKind::kNumber && name.kind == TokenKind::kName && code.number >= 0 && code.number < 256) {
      out.emplace_back(static_cast<int>(code.number), name.text);
    }
  }
  return out;
}

}  // namespace

std::string glyph_name_to_utf8(std::string_view name) {
  if (name.empty()) return {};
  if (std::string whole = component_to_utf8(name); !whole.empty()) return whole;
  const size_t dot = name.find('.');
  std::string_view stem = name.substr(0, dot);
  if (stem.empty()) return {};
  std::string out;
  size_t start = 0;
  while (start <= stem.size()) {
    size_t us = stem.find('_', start);
    if (us == std::string_view::npos) us = stem.size();
    std::string part = component_to_utf8(stem.substr(start, us - start));
    if (part.empty()) return {};
    out += part;
    start = us + 1;
  }
  return out;
}

Font::Font(Document& doc, const Object& font) {
  const Object& subtype = doc.get(font, "Subtype");
  if (subtype.is_name("Type0")) {
    composite_ = true;
    load_composite(doc, font);
  } else {
    load_simple(doc, font);
  }
  load_to_unicode(doc, font);
}

void Font::load_simple(Document& doc, const Object& font) {
  const std::string base = base_font_name(doc.get(font, "BaseFont").name() ? *doc.get(font, "BaseFont").name() : "");
  const Object& subtype = doc.get(font, "Subtype");
  if (subtype.is_name("Type3")) {
    if (const Array* m = doc.get(font, "FontMatrix").array(); m && !m->empty()) {
      scale_ = doc.resolve(m->front()).number_or(0.001);
    }
  }

  const char* const* table = tables::encoding("StandardEncoding");
  const bool symbolic = text::to_lower(base).find("symbol") != std::string::npos;
  if (symbolic) table = tables::encoding("SymbolEncoding");
  std::array<std::string, 256> names;
  for (int i = 0; i < 256; ++i) {
    if (table && table[i]) names[i] = table[i];
  }
  const Object& enc = doc.get(font, "Encoding");
  const bool explicit_base = enc.name() || (enc.dict() && doc.get(enc, "BaseEncoding").name());
  if (!explicit_base) {
    const Object& program = doc.get(doc.get(font, "FontDescriptor"), "FontFile");
    if (const Stream* fs = program.stream()) {
      const std::string body = doc.decode_stream(*fs);
      const auto builtin = type1_builtin_encoding(body);
      if (!builtin.empty()) {
        for (int i = 0; i < 256; ++i) names[i].clear();
        for (const auto& [code, gn] : builtin) names[code] = gn;
      }
    }
  }
  auto use_base = [&](const std::string& n) {
    if (const char* const* t = tables::encoding(n)) {
      for (int i = 0; i < 256; ++i) names[i] = t[i] ? t[i] : "";
    }
  };
  if (const std::string* n = enc.name()) {
    use_base(*n);
  } else if (enc.dict()) {
    if (const std::string* n = doc.get(enc, "BaseEncoding").name()) use_base(*n);
    if (const Array* diffs = doc.get(enc, "Differences").array()) {
      int code = 0;
      for (const Object& d : *diffs) {
        const Object& v = doc.resolve(d);
        if (auto c = v.integer()) {
          code = *c;
        } else if (const std::string* gn = v.name()) {
          if (code >= 0 && code < 256) names[code] = *gn;
          ++code;
        }
      }
    }
  }
  for (int i = 0; i < 256; ++i) {
    std::string t = glyph_name_to_utf8(names[i]);
    if (t.empty() && !names[i].empty() && i >= 0x21 && i < 0x7F) t.push_back(static_cast<char>(i));
    simple_text_[i] = std::move(t);
  }

  const Object& widths = doc.get(font, "Widths");
  const int first = doc.get(font, "FirstChar").integer().value_or(0);
  if (const Array* w = widths.array()) {
    for (size_t i = 0; i < w->size(); ++i) widths_[first + static_cast<uint32_t>(i)] = doc.resolve((*w)[i]).number_or(0);
  }
  const Object& desc = doc.get(font, "FontDescriptor");
  if (auto mw = doc.get(desc, "MissingWidth").number(); mw && *mw > 0) default_width_ = *mw;
  if (!widths.array()) {
    if (is_courier(base)) {
      default_width_ = 600;
    } else if (const tables::FontMetrics* m = standard_font(base)) {
      std::unordered_map<std::string_view, int> by_name;
      for (const auto& [gn, w] : m->widths) by_name.emplace(gn, w);
      for (int i = 0; i < 256; ++i) {
        if (auto it = by_name.find(names[i]); it != by_name.end()) widths_[i] = it->second;
      }
      if (auto it = by_name.find("space"); it != by_name.end() && !widths_.count(32)) widths_[32] = it->second;
    }
  }
  if (subtype.is_name("Type3") && default_width_ == 500) default_width_ = 0;
}

void Font::load_composite(Document& doc, const Object& font) {
  const Object& enc = doc.get(font, "Encoding");
  const std::string* enc_name = enc.name();
  if (!enc_name || (*enc_name != "Identity-H" && *enc_name != "Identity-V")) {
    if (const Stream* s = enc.stream()) {
      // Embedded CMap: only its codespace ranges matter here.
      const std::string body = doc.decode_stream(*s);
      Lexer lx(body);
      for (Token t = lx.next(); t.kind != TokenKind::kEof; t = lx.next()) {
        if (t.kind == TokenKind::kKeyword && t.text == "begincodespacerange") {
          for (;;) {
            Token a = lx.next();
            if (a.kind != TokenKind::kString) break;
            Token b = lx.next();
            if (b.kind != TokenKind::kString) break;
            codespace_.push_back({static_cast<int>(a.text.size()), code_of(a.text), code_of(b.text)});
          }
        }
      }
    }
  }
  default_width_ = 1000;
  const Object& descendants = doc.get(font, "DescendantFonts");
  const Object* cid_font = nullptr;
  if (const Array* arr = descendants.array(); arr && !arr->empty()) cid_font = &doc.resolve(arr->front());
  if (!cid_font) return;
  if (auto dw = doc.get(*cid_font, "DW").number()) default_width_ = *dw;
  if (const Array* w = doc.get(*cid_font, "W").array()) {
    size_t i = 0;
    while (i < w->size()) {
      auto c1 = doc.resolve((*w)[i]).integer();
      if (!c1 || i + 1 >= w->size()) break;
      const Object& next = doc.resolve((*w)[i + 1]);
      if (const Array* list = next.array()) {
        for (size_t k = 0; k < list->size(); ++k) widths_[*c1 + static_cast<uint32_t>(k)] = doc.resolve((*list)[k]).number_or(0);
        i += 2;
      } else {
        if (i + 2 >= w->size()) break;
        auto c2 = next.integer();
        const double width = doc.resolve((*w)[i + 2]).number_or(default_width_);
        if (c2 && *c2 >= *c1 && static_cast<uint32_t>(*c2 - *c1) < kMaxRange) {
          for (int c = *c1; c <= *c2; ++c) widths_[c] = width;
        }
        i += 3;
      }
    }
  }
}

void Font::load_to_unicode(Document& doc, const Object& font) {
  const Object& tu = doc.get(font, "ToUnicode");
  const Stream* s = tu.stream();
  if (!s) return;
  const std::string body = doc.decode_stream(*s);
  Lexer lx(body);
  auto dst_text = [](const Token& t) -> std::string {
    if (t.kind == TokenKind::kString) return u32_to_utf8(utf16be_to_u32(t.text));
    if (t.kind == TokenKind::kName) return glyph_name_to_utf8(t.text);
    return {};
  };
  for (Token t = lx.next(); t.kind != TokenKind::kEof; t = lx.next()) {
    if (t.kind != TokenKind::kKeyword) continue;
    if (t.text == "begincodespacerange") {
      for (;;) {
        Token a = lx.next();
        if (a.kind != TokenKind::kString) break;
        Token b = lx.next();
        if (b.kind != TokenKind::kString) break;
        if (composite_) codespace_.push_back({static_cast<int>(a.text.size()), code_of(a.text), code_of(b.text)});
      }
    } else if (t.text == "beginbfchar") {
      for (;;) {
        Token src = lx.next();
        if (src.kind != TokenKind::kString) break;
        Token dst = lx.next();
        to_unicode_[code_of(src.text)] = dst_text(dst);
      }
    } else if (t.text == "beginbfrange") {
      for (;;) {
        Token lo = lx.next();
        if (lo.kind != TokenKind::kString) break;
        Token hi = lx.next();
        Token dst = lx.next();
        const uint32_t a = code_of(lo.text);
        const uint32_t b = code_of(hi.text);
        if (b < a || b - a >= kMaxRange) {
          if (dst.kind == TokenKind::kArrayBegin) {
            while (lx.next().kind == TokenKind::kString) {
            }
          }
          continue;
        }
        if (dst.kind == TokenKind::kString) {
          std::u32string base = utf16be_to_u32(dst.text);
          if (base.empty()) continue;
          for (uint32_t c = a; c <= b; ++c) {
            std::u32string v = base;
            v.back() += (c - a);
            to_unicode_[c] = u32_to_utf8(v);
          }
        } else if (dst.kind == TokenKind::kArrayBegin) {
          uint32_t c = a;
          for (Token e = lx.next(); e.kind == TokenKind::kString; e = lx.next()) {
            if (c <= b) to_unicode_[c++] = dst_text(e);
          }
        }
      }
    }
  }
}

int Font::code_length(std::string_view bytes, size_t pos) const {
  if (!composite_) return 1;
  if (codespace_.empty()) return 2;
  for (int len = 1; len <= 4; ++len) {
    if (pos + len > bytes.size()) break;
    const uint32_t code = code_of(bytes.substr(pos, len));
    for (const auto& r : codespace_) {
      if (r.length == len && code >= r.lo && code <= r.hi) return len;
    }
  }
  return 2;
}

void Font::decode(std::string_view bytes, std::vector<DecodedGlyph>& out) const {
  size_t pos = 0;
  while (pos < bytes.size()) {
    const int len = std::min<int>(code_length(bytes, pos), static_cast<int>(bytes.size() - pos));
    const uint32_t code = code_of(bytes.substr(pos, len));
    pos += len;
    DecodedGlyph g;
    if (auto it = to_unicode_.find(code); it != to_unicode_.end()) {
      g.text = it->second;
    } else if (!composite_ && code < 256) {
      g.text = simple_text_[code];
    }
    const auto w = widths_.find(code);
    g.width = (w != widths_.end() ? w->second : default_width_) * scale_;
    g.word_space = len == 1 && code == 32;
    out.push_back(std::move(g));
  }
}

}  // namespace recap::ingest::pdf
