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

#include "recap/ingest/pdf/content.hpp"

#include <cmath>
#include <map>
#include <memory>

#include "recap/ingest/pdf/font.hpp"
#include "recap/ingest/pdf/lexer.hpp"

namespace recap::ingest::pdf {

namespace {

constexpr int kMaxFormDepth = 8;
constexpr size_t kMaxGlyphs = 2'000'000;

struct Matrix {
  double a = 1, b = 0, c = 0, d = 1, e = 0, f = 0;

  // this × other
  Matrix times(const Matrix& o) const {
    return {a * o.a + b * o.c,       a * o.b + b * o.d,       c * o.a + d * o.c,
            c * o.b + d * o.d,       e * o.a + f * o.c + o.e, e * o.b + f * o.d + o.f};
  }
};

Matrix matrix_from(const std::vector<Object>& ops, size_t first) {
  Matrix m;
  m.a = ops[first].number_or(1);
  m.b = ops[first + 1].number_or(0);
  m.c = ops[first + 2].number_or(0);
  m.d = ops[first + 3].number_or(1);
  m.e = ops[first + 4].number_or(0);
  m.f = ops[first + 5].number_or(0);
  return m;
}

struct GraphicsState {
  Matrix ctm;
  double char_spacing = 0;
  double word_spacing = 0;
  double scale = 1;
  double leading = 0;
  double font_size = 0;
  double rise = 0;
  const Font* font = nullptr;
};

class Interpreter {
 public:
  Interpreter(Document& doc, PageContent& out) : doc_(doc), out_(out) {}

  void run(std::string_view content, const Dict& resources, int depth);

 private:
  void op(const std::string& name, std::vector<Object>& ops, const Dict& resources, int depth);
  void show(const std::string& bytes);
  void show_array(const Array& arr);
  void set_font(const Dict& resources, const Object& name_obj);
  void do_xobject(const Dict& resources, const Object& name_obj, int depth);
  void skip_inline_image(Lexer& lx);
  void next_line(double tx, double ty) {
    line_matrix_ = Matrix{1, 0, 0, 1, tx, ty}.times(line_matrix_);
    text_matrix_ = line_matrix_;
  }

  Document& doc_;
  PageContent& out_;
  GraphicsState gs_;
  std::vector<GraphicsState> stack_;
  Matrix text_matrix_;
  Matrix line_matrix_;
  std::map<const Object*, std::unique_ptr<Font>> fonts_;
  std::vector<DecodedGlyph> scratch_;
};

void Interpreter::run(std::string_view content, const Dict& resources, int depth) {
  Parser parser(content);
  Lexer& lx = parser.lexer();
  std::vector<Object> operands;
  for (;;) {
    Token tok = lx.next();
    if (tok.kind == TokenKind::kEof) break;
    if (tok.kind == TokenKind::kKeyword && tok.text != "true" && tok.text != "false" && tok.text != "null") {
      if (tok.text == "BI") {
        skip_inline_image(lx);
      } else {
        op(tok.text, operands, resources, depth);
      }
      operands.clear();
      continue;
    }
    if (tok.kind == TokenKind::kArrayEnd || tok.kind == TokenKind::kDictEnd) continue;
    if (tok.kind == TokenKind::kNumber) {
      operands.emplace_back(tok.number);  // no indirect references in content
    } else {
      operands.push_back(parser.parse_from(std::move(tok)));
    }
    if (operands.size() > 64) operands.erase(operands.begin());
  }
}

void Interpreter::skip_inline_image(Lexer& lx) {
  for (;;) {
    Token t = lx.next();
    if (t.kind == TokenKind::kEof) return;
    if (t.kind == TokenKind::kKeyword && t.text == "ID") break;
  }
  ++out_.images;
  std::string_view data = lx.data();
  size_t pos = lx.pos() + 1;
  while (pos + 1 < data.size()) {
    if (data[pos] == 'E' && data[pos + 1] == 'I' && is_pdf_whitespace(data[pos - 1]) &&
        (pos + 2 == data.size() || is_pdf_whitespace(data[pos + 2]) || is_pdf_delimiter(data[pos + 2]))) {
      lx.seek(pos + 2);
      return;
    }
    ++pos;
  }
  lx.seek(data.size());
}

void Interpreter::op(const std::string& name, std::vector<Object>& ops, const Dict& resources, int depth) {
  const size_t n = ops.size();
  auto num = [&](size_t i, double fallback = 0) { return i < n ? ops[i].number_or(fallback) : fallback; };
  const char c0 = name[0];
  switch (c0) {
    case 'q':
      if (name == "q") stack_.push_back(gs_);
      return;
    case 'Q':
      if (name == "Q" && !stack_.empty()) {
        gs_ = stack_.back();
        stack_.pop_back();
      }
      return;
    case 'c':
      if (name == "cm" && n >= 6) gs_.ctm = matrix_from(ops, n - 6).times(gs_.ctm);
      return;
    case 'B':
      if (name == "BT") {
        text_matrix_ = Matrix{};
        line_matrix_ = Matrix{};
      }
      return;
    case 'D':
      if (name == "Do" && n >= 1) do_xobject(resources, ops[n - 1], depth);
      return;
    case 'T':
      break;
    case '\'':
      next_line(0, -gs_.leading);
      if (n >= 1 && ops[n - 1].string()) show(*ops[n - 1].string());
      return;
    case '"':
      if (n >= 3) {
        gs_.word_spacing = num(n - 3);
        gs_.char_spacing = num(n - 2);
        next_line(0, -gs_.leading);
        if (ops[n - 1].string()) show(*ops[n - 1].string());
      }
      return;
    default:
      return;
  }
  if (name.size() != 2) return;
  switch (name[1]) {
    case 'f':
      if (n >= 2) {
        gs_.font_size = num(n - 1);
        set_font(resources, ops[n - 2]);
      }
      break;
    case 'c':
      if (n >= 1) gs_.char_spacing = num(n - 1);
      break;
    case 'w':
      if (n >= 1) gs_.word_spacing = num(n - 1);
      break;
    case 'z':
      if (n >= 1) gs_.scale = num(n - 1, 100) / 100.0;
      break;
    case 'L':
      if (n >= 1) gs_.leading = num(n - 1);
      break;
    case 's':
      if (n >= 1) gs_.rise = num(n - 1);
      break;
    case 'd':
      if (n >= 2) next_line(num(n - 2), num(n - 1));
      break;
    case 'D':
      if (n >= 2) {
        gs_.leading = -num(n - 1);
        next_line(num(n - 2), num(n - 1));
      }
      break;
    case 'm':
      if (n >= 6) {
        text_matrix_ = matrix_from(ops, n - 6);
        line_matrix_ = text_matrix_;
      }
      break;
    case '*':
      next_line(0, -gs_.leading);
      break;
    case 'j':
      if (n >= 1 && ops[n - 1].string()) show(*ops[n - 1].string());
      break;
    case 'J':
      if (n >= 1 && ops[n - 1].array()) show_array(*ops[n - 1].array());
      break;
    default:
      break;
  }
}

void Interpreter::set_font(const Dict& resources, const Object& name_obj) {
  gs_.font = nullptr;
  const std::string* name = name_obj.name();
  if (!name) return;
  const Object& fonts = doc_.resolve(lookup(resources, "Font"));
  const Object& font = doc_.get(fonts, *name);
  if (!font.dict()) return;
  auto it = fonts_.find(&font);
  if (it == fonts_.end()) it = fonts_.emplace(&font, std::make_unique<Font>(doc_, font)).first;
  gs_.font = it->second.get();
}

void Interpreter::show(const std::string& bytes) {
  if (!gs_.font) return;
  scratch_.clear();
  gs_.font->decode(bytes, scratch_);
  for (auto& g : scratch_) {
    const Matrix m = text_matrix_.times(gs_.ctm);
    const Matrix trm = Matrix{gs_.font_size * gs_.scale, 0, 0, gs_.font_size, 0, gs_.rise}.times(m);
    const double tx = (g.width * gs_.font_size + gs_.char_spacing + (g.word_space ? gs_.word_spacing : 0)) * gs_.scale;
    if (out_.glyphs.size() < kMaxGlyphs) {
      PlacedGlyph pg;
      pg.x = trm.e;
      pg.y = trm.f;
      pg.size = std::hypot(trm.c, trm.d);
      pg.advance = g.width * std::hypot(trm.a, trm.b);
      pg.upright = trm.a > 0 && std::abs(trm.b) <= 0.1 * trm.a && trm.d > 0;
      pg.space = g.text.empty() ? g.word_space
                                : g.text.find_first_not_of(" \t ") == std::string::npos ||
                                      g.text == "\xc2\xa0";
      pg.text = std::move(g.text);
      pg.seq = out_.glyphs.size();
      out_.glyphs.push_back(std::move(pg));
    }
    text_matrix_ = Matrix{1, 0, 0, 1, tx, 0}.times(text_matrix_);
  }
}

void Interpreter::show_array(const Array& arr) {
  for (const Object& item : arr) {
    if (const std::string* s = item.string()) {
      show(*s);
    } else if (auto v = item.number()) {
      const double tx = -*v / 1000.0 * gs_.font_size * gs_.scale;
      text_matrix_ = Matrix{1, 0, 0, 1, tx, 0}.times(text_matrix_);
    }
  }
}

void Interpreter::do_xobject(const Dict& resources, const Object& name_obj, int depth) {
  const std::string* name = name_obj.name();
  if (!name) return;
  const Object& xobjects = doc_.resolve(lookup(resources, "XObject"));
  const Object& xo = doc_.get(xobjects, *name);
  const Stream* s = xo.stream();
  if (!s) return;
  const Object& subtype = doc_.resolve(lookup(s->dict, "Subtype"));
  if (subtype.is_name("Image")) {
    ++out_.images;
    return;
  }
  if (!subtype.is_name("Form") || depth >= kMaxFormDepth) return;
  const GraphicsState saved = gs_;
  const Matrix saved_tm = text_matrix_, saved_lm = line_matrix_;
  const size_t saved_stack = stack_.size();
  if (const Array* m = doc_.resolve(lookup(s->dict, "Matrix")).array(); m && m->size() == 6) {
    gs_.ctm = matrix_from(*m, 0).times(gs_.ctm);
  }
  const Object& own = doc_.resolve(lookup(s->dict, "Resources"));
  const Dict& res = own.dict() ? *own.dict() : resources;
  const std::string body = doc_.decode_stream(*s);
  run(body, res, depth + 1);
  stack_.resize(std::min(stack_.size(), saved_stack));
  gs_ = saved;
  text_matrix_ = saved_tm;
  line_matrix_ = saved_lm;
}

}  // namespace

PageContent interpret_page(Document& doc, const Page& page) {
  PageContent out;
  Interpreter interp(doc, out);
  interp.run(page.content, page.resources, 0);
  return out;
}

}  // namespace recap::ingest::pdf
