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
#include <string>
#include <string_view>

namespace recap::ingest {

struct ExtractedText {
  std::string text;
  size_t pages = 0;
  size_t images = 0;
  bool no_text = false;          // nothing extractable (e.g. scanned pages)
  bool plain_text_input = false;  // input was already plain UTF-8 text
};

// PDF or plain UTF-8 text. Throws UnreadableDocument or EncryptedDocument.
ExtractedText extract_document(std::string_view bytes);

std::string extract_text(std::string_view bytes);

// Ligature expansion, space and hyphen normalisation, blank-line folding.
std::string normalize_text(std::string_view text);

}  // namespace recap::ingest
