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

#include <cstdint>
#include <string_view>
#include <utility>
#include <vector>

// Static data: glyph names, standard encodings, standard-14 widths.
namespace recap::ingest::pdf::tables {

struct GlyphEntry {
  const char* name;
  char32_t code_point;
};

struct FontMetrics {
  const char* font;
  std::vector<std::pair<const char*, int>> widths;  // glyph name -> width (1/1000 em)
};

const std::vector<GlyphEntry>& glyph_list();

// 256 glyph names (nullptr = undefined) for StandardEncoding,
// WinAnsiEncoding, MacRomanEncoding or SymbolEncoding; nullptr otherwise.
const char* const* encoding(std::string_view name);

const std::vector<FontMetrics>& standard_metrics();

}  // namespace recap::ingest::pdf::tables
