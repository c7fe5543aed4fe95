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

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>

#include "recap/ingest/pdf/object.hpp"

namespace recap::ingest::pdf {

enum class TokenKind {
  kEof,
  kNumber,
  kString,
  kName,
  kKeyword,
  kArrayBegin,
  kArrayEnd,
  kDictBegin,
  kDictEnd,
};

struct Token {
  TokenKind kind = TokenKind::kEof;
  std::string text;   // keyword, name, or decoded string bytes
  double number = 0;
  bool integral = false;
  size_t offset = 0;
};

bool is_pdf_whitespace(char c);
bool is_pdf_delimiter(char c);

class Lexer {
 public:
  explicit Lexer(std::string_view data, size_t pos = 0) : data_(data), pos_(pos) {}

  Token next();
  Token peek();
  void skip_whitespace();

  size_t pos() const { return pos_; }
  void seek(size_t pos) { pos_ = pos; }
  std::string_view data() const { return data_; }

 private:
  std::string read_literal_string();
  std::string read_hex_string();
  std::string read_name();

  std::string_view data_;
  size_t pos_;
};

// Returns the length of a stream, resolving indirect values when needed.
using LengthResolver = std::function<std::optional<size_t>(const Object&)>;

class Parser {
 public:
  explicit Parser(std::string_view data, size_t pos = 0, LengthResolver resolver = {})
      : lexer_(data, pos), resolver_(std::move(resolver)) {}

  // One object; `R` references are folded in. Streams are only produced by
  // parse_indirect.
  Object parse_object();
  // Completes an object whose first token was already read.
  Object parse_from(Token tok);

  // `num gen obj ... endobj` at the current position.
  std::optional<std::pair<Ref, Object>> parse_indirect();

  Lexer& lexer() { return lexer_; }

 private:
  Object read_stream(Dict dict);

  Lexer lexer_;
  LengthResolver resolver_;
};

}  // namespace recap::ingest::pdf
