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

#include <string>
#include <vector>

#include "recap/ingest/pdf/document.hpp"

namespace recap::ingest::pdf {

// One shown glyph in page space.
struct PlacedGlyph {
  std::string text;
  double x = 0;        // baseline origin
  double y = 0;
  double advance = 0;  // glyph width along the baseline
  double size = 0;     // effective font size
  bool space = false;
  bool upright = true;  // false for rotated or mirrored text
  size_t seq = 0;
};

struct PageContent {
  std::vector<PlacedGlyph> glyphs;
  int images = 0;
};

PageContent interpret_page(Document& doc, const Page& page);

}  // namespace recap::ingest::pdf
