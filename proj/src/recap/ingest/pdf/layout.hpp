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
#include <string>
#include <vector>

#include "recap/ingest/pdf/content.hpp"

namespace recap::ingest::pdf {

struct LayoutOptions {
  double word_gap = 0.15;        // glyph gap (em) that starts a new word
  double span_gap_ratio = 0.6;   // row gaps below this share of the gutter stay joined
  double paragraph_gap = 1.6;    // baseline gap (in line pitches) that starts a paragraph
  bool inline_footnotes = true;
};

// Plain text of one page in reading order.
std::string layout_page(const std::vector<PlacedGlyph>& glyphs, const std::array<double, 4>& media_box,
                        const LayoutOptions& options = {});

}  // namespace recap::ingest::pdf
