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

#include "recap/ingest/pdf/lexer.hpp"

#include <charconv>
#include <cstdlib>

namespace recap::ingest::pdf {

bool is_pdf_whitespace(char c) {
  return c == ' ' || c == '\n' || c == '\r' || c == '\t' || c == '\f' || c == '\0';
}

bool is_pdf_delimiter(char c) {
  switch (c) {
    case '(': case ')': case '<': case '>': case '[': case ']':
    case '{': case '}': case '/': case '%':
      return true;
    default:
      return false;
  }
}

namespace {

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

}  // namespace

void Lexer::skip_whitespace() {
  while (pos_ < data_.size()) {
    const char c = data_[pos_];
    if (is_pdf_whitespace(c)) {
      ++pos_;
    } else if (c == '%') {
      while (pos_ < data_.size() && data_[pos_] != '\n' && data_[pos_] != '\r') ++pos_;
    } else {
      break;
    }
  }
}

Token Lexer::peek() {
  const size_t saved = pos_;
  Token t = next();
  pos_ = saved;
  return t;
}

Token Lexer::next() {
  skip_whitespace();
  Token tok;
  tok.offset = pos_;
  if (pos_ >= data_.size()) return tok;
  const char c = data_[pos_];
  switch (c) {
    case '[':
      ++pos_;
      tok.kind = TokenKind::kArrayBegin;
      return tok;
    case ']':
      ++pos_;
      tok.kind = TokenKind::kArrayEnd;
      return tok;
    case '(':
      ++pos_;
      tok.kind = TokenKind::kString;
      tok.text = read_literal_string();
      return tok;
    case '<':
      if (pos_ + 1 < data_.size() && data_[pos_ + 1] == '<') {
        pos_ += 2;
        tok.kind = TokenKind::kDictBegin;
        return tok;
      }
      ++pos_;
      tok.kind = TokenKind::kString;
      tok.text = read_hex_string();
      return tok;
    case '>':
      if (pos_ + 1 < data_.size() && data_[pos_ + 1] == '>') {
        pos_ += 2;
        tok.kind = TokenKind::kDictEnd;
        return tok;
      }
      ++pos_;
      return next();
    case '/':
      ++pos_;
      tok.kind = TokenKind::kName;
      tok.text = read_name();
      return tok;
    case ')': case '{': case '}':
      ++pos_;
      tok.kind = TokenKind::kKeyword;
      tok.text = std::string(1, c);
      return tok;
    default:
      break;
  }

  const size_t start = pos_;
  while (pos_ < data_.size() && !is_pdf_whitespace(data_[pos_]) && !is_pdf_delimiter(data_[pos_])) {
    ++pos_;
  }
  std::string_view word = data_.substr(start, pos_ - start);
  const char first = word.front();
  if ((first >= '0' && first <= '9') || first == '-' || first == '+' || first == '.') {
    // Tolerates malformed numbers such as "--1" or "1.2.3" by reading a prefix.
    std::string buf(word);
    size_t i = 0;
    bool negative = false;
    while (i < buf.size() && (buf[i] == '-' || buf[i] == '+')) {
      if (buf[i] == '-') negative = !negative;
      ++i;
    }
    const char* b = buf.c_str() + i;
    char* end = nullptr;
    double v = std::strtod(b, &end);
    if (end != b) {
      tok.kind = TokenKind::kNumber;
      tok.number = negative ? -v : v;
      tok.integral = buf.find('.') == std::string::npos;
      return tok;
    }
  }
  tok.kind = TokenKind::kKeyword;
  tok.text = std::string(word);
  return tok;
}

std::string Lexer::read_literal_string() {
  std::string out;
  int depth = 1;
  while (pos_ < data_.size()) {
    char c = data_[pos_++];
    if (c == '(') {
      ++depth;
      out.push_back(c);
    } else if (c == ')') {
      if (--depth == 0) break;
      out.push_back(c);
    } else if (c == '\\') {
      if (pos_ >= data_.size()) break;
      char e = data_[pos_++];
      switch (e) {
        case 'n': out.push_back('\n'); break;
        case 'r': out.push_back('\r'); break;
        case 't': out.push_back('\t'); break;
        case 'b': out.push_back('\b'); break;
        case 'f': out.push_back('\f'); break;
        case '\r':
          if (pos_ < data_.size() && data_[pos_] == '\n') ++pos_;
          break;
        case '\n':
          break;
        default:
          if (e >= '0' && e <= '7') {
            int v = e - '0';
            for (int k = 0; k < 2 && pos_ < data_.size() && data_[pos_] >= '0' && data_[pos_] <= '7'; ++k) {
              v = v * 8 + (data_[pos_++] - '0');
            }
            out.push_back(static_cast<char>(v & 0xFF));
          } else {
            out.push_back(e);
          }
      }
    } else if (c == '\r') {
      if (pos_ < data_.size() && data_[pos_] == '\n') ++pos_;
      out.push_back('\n');
    } else {
      out.push_back(c);
    }
  }
  return out;
}

std::string Lexer::read_hex_string() {
  std::string out;
  int hi = -1;
  while (pos_ < data_.size()) {
    const char c = data_[pos_++];
    if (c == '>') break;
    const int v = hex_value(c);
    if (v < 0) continue;
    if (hi < 0) {
      hi = v;
    } else {
      out.push_back(static_cast<char>(hi * 16 + v));
      hi = -1;
    }
  }
  if (hi >= 0) out.push_back(static_cast<char>(hi * 16));
  return out;
}

std::string Lexer::read_name() {
  std::string out;
  while (pos_ < data_.size() && !is_pdf_whitespace(data_[pos_]) && !is_pdf_delimiter(data_[pos_])) {
    const char c = data_[pos_++];
    if (c == '#' && pos_ + 1 < data_.size()) {
      const int a = hex_value(data_[pos_]);
      const int b = hex_value(data_[pos_ + 1]);
      if (a >= 0 && b >= 0) {
        out.push_back(static_cast<char>(a * 16 + b));
        pos_ += 2;
        continue;
      }
    }
    out.push_back(c);
  }
  return out;
}

Object Parser::parse_object() { return parse_from(lexer_.next()); }

Object Parser::parse_from(Token tok) {
  switch (tok.kind) {
    case TokenKind::kEof:
      return {};
    case TokenKind::kNumber: {
      if (tok.integral && tok.number >= 0) {
        const size_t saved = lexer_.pos();
        Token gen = lexer_.next();
        if (gen.kind == TokenKind::kNumber && gen.integral && gen.number >= 0) {
          Token r = lexer_.next();
          if (r.kind == TokenKind::kKeyword && r.text == "R") {
            return Ref{static_cast<int>(tok.number), static_cast<int>(gen.number)};
          }
        }
        lexer_.seek(saved);
      }
      return tok.number;
    }
    case TokenKind::kString:
      return String{std::move(tok.text)};
    case TokenKind::kName:
      return Name{std::move(tok.text)};
    case TokenKind::kArrayBegin: {
      Array arr;
      for (;;) {
        Token t = lexer_.next();
        if (t.kind == TokenKind::kArrayEnd || t.kind == TokenKind::kEof) break;
        if (t.kind == TokenKind::kKeyword && (t.text == "endobj" || t.text == "stream")) {
          lexer_.seek(t.offset);
          break;
        }
        arr.push_back(parse_from(std::move(t)));
      }
      return arr;
    }
    case TokenKind::kDictBegin: {
      Dict dict;
      for (;;) {
        Token key = lexer_.next();
        if (key.kind == TokenKind::kDictEnd || key.kind == TokenKind::kEof) break;
        if (key.kind == TokenKind::kKeyword && (key.text == "endobj" || key.text == "stream")) {
          lexer_.seek(key.offset);
          break;
        }
        if (key.kind != TokenKind::kName) continue;
        Token vt = lexer_.next();
        if (vt.kind == TokenKind::kDictEnd) {
          dict.emplace(std::move(key.text), Object{});
          break;
        }
        dict.insert_or_assign(std::move(key.text), parse_from(std::move(vt)));
      }
      return dict;
    }
    case TokenKind::kKeyword:
      if (tok.text == "true") return true;
      if (tok.text == "false") return false;
      return {};
    case TokenKind::kArrayEnd:
    case TokenKind::kDictEnd:
      return {};
  }
  return {};
}

std::optional<std::pair<Ref, Object>> Parser::parse_indirect() {
  Token num = lexer_.next();
  Token gen = lexer_.next();
  Token kw = lexer_.next();
  if (num.kind != TokenKind::kNumber || gen.kind != TokenKind::kNumber ||
      kw.kind != TokenKind::kKeyword || kw.text != "obj") {
    return std::nullopt;
  }
  Ref ref{static_cast<int>(num.number), static_cast<int>(gen.number)};
  Object obj = parse_object();
  Token after = lexer_.peek();
  if (after.kind == TokenKind::kKeyword && after.text == "stream" && obj.dict()) {
    lexer_.next();
    Dict dict = *obj.dict();
    obj = read_stream(std::move(dict));
  }
  return std::make_pair(ref, std::move(obj));
}

Object Parser::read_stream(Dict dict) {
  std::string_view data = lexer_.data();
  size_t pos = lexer_.pos();
  if (pos < data.size() && data[pos] == '\r') ++pos;
  if (pos < data.size() && data[pos] == '\n') ++pos;

  std::optional<size_t> length;
  const Object& len_obj = lookup(dict, "Length");
  if (auto n = len_obj.integer(); n && *n >= 0) {
    length = static_cast<size_t>(*n);
  } else if (len_obj.ref() && resolver_) {
    length = resolver_(len_obj);
  }

  auto endstream_follows = [&](size_t at) {
    Lexer probe(data, at);
    Token t = probe.next();
    return t.kind == TokenKind::kKeyword && (t.text == "endstream" || t.text == "endobj");
  };

  size_t end = std::string_view::npos;
  if (length && pos + *length <= data.size() && endstream_follows(pos + *length)) {
    end = pos + *length;
  } else {
    const size_t found = data.find("endstream", pos);
    end = found == std::string_view::npos ? data.size() : found;
    if (end > pos && data[end - 1] == '\n') --end;
    if (end > pos && data[end - 1] == '\r') --end;
  }

  auto stream = std::make_shared<Stream>();
  stream->dict = std::move(dict);
  stream->raw.assign(data.substr(pos, end - pos));
  lexer_.seek(end);
  Token t = lexer_.next();
  if (!(t.kind == TokenKind::kKeyword && t.text == "endstream")) lexer_.seek(t.offset);
  return Object(std::shared_ptr<const Stream>(std::move(stream)));
}

}  // namespace recap::ingest::pdf
