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
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "recap/ingest/pdf/document.hpp"

namespace recap::ingest::pdf {

struct DecodedGlyph {
  std::string text;     // UTF-8, possibly empty
  double width = 0;     // text-space advance per unit font size
  bool word_space = false;  // single-byte code 32
};

class Font {
 public:
  Font(Document& doc, const Object& font);

  void decode(std::string_view bytes, std::vector<DecodedGlyph>& out) const;

 private:
  struct CodeRange {
    int length;
    uint32_t lo;
    uint32_t hi;
  };

  void load_simple(Document& doc, const Object& font);
  void load_composite(Document& doc, const Object& font);
  void load_to_unicode(Document& doc, const Object& font);
  int code_length(std::string_view bytes, size_t pos) const;

  bool composite_ = false;
  std::vector<CodeRange> codespace_;
  std::map<uint32_t, std::string> to_unicode_;
  std::array<std::string, 256> simple_text_;
  std::map<uint32_t, double> widths_;
  double default_width_ = 500;
  double scale_ = 0.001;
};

// Unicode text of a glyph name, empty when unknown.
std::string glyph_name_to_utf8(std::string_view name);

}  // namespace recap::ingest::pdf
