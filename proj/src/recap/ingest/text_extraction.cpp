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

#include "recap/ingest/text_extraction.hpp"

#include <algorithm>

#include "recap/common/error.hpp"
#include "recap/common/text.hpp"
#include "recap/ingest/pdf/content.hpp"
#include "recap/ingest/pdf/document.hpp"
#include "recap/ingest/pdf/layout.hpp"

namespace recap::ingest {

namespace {

bool looks_like_pdf(std::string_view bytes) {
  const size_t p = bytes.find("%PDF-");
  return p != std::string_view::npos && p < 1024;
}

const char* replacement(char32_t cp) {
  switch (cp) {
    case 0xFB00: return "ff";
    case 0xFB01: return "fi";
    case 0xFB02: return "fl";
    case 0xFB03: return "ffi";
    case 0xFB04: return "ffl";
    case 0xFB05: return "st";
    case 0xFB06: return "st";
    case 0x00A0: case 0x2002: case 0x2003: case 0x2009: case 0x202F: return " ";
    case 0x2010: case 0x2011: return "-";
    case 0x00AD: case 0x200B: case 0xFEFF: return "";
    default: return nullptr;
  }
}

char32_t decode_one(std::string_view s, size_t& i) {
  const unsigned char c = static_cast<unsigned char>(s[i]);
  int len = c < 0x80 ? 1 : (c >> 5) == 6 ? 2 : (c >> 4) == 14 ? 3 : (c >> 3) == 30 ? 4 : 1;
  if (i + len > s.size()) len = 1;
  char32_t cp = len == 1 ? c : len == 2 ? (c & 0x1F) : len == 3 ? (c & 0x0F) : (c & 0x07);
  for (int k = 1; k < len; ++k) cp = (cp << 6) | (static_cast<unsigned char>(s[i + k]) & 0x3F);
  i += len;
  return cp;
}

}  // namespace

std::string normalize_text(std::string_view in) {
  std::string mapped;
  mapped.reserve(in.size());
  for (size_t i = 0; i < in.size();) {
    const size_t start = i;
    const char32_t cp = decode_one(in, i);
    if (cp == '\r') {
      if (i < in.size() && in[i] == '\n') continue;
      mapped.push_back('\n');
    } else if (cp == '\t' || cp == '\f' || cp == '\v') {
      mapped.push_back(cp == '\f' ? '\n' : ' ');
    } else if (cp < 0x20 && cp != '\n') {
      continue;
    } else if (const char* r = replacement(cp)) {
      mapped += r;
    } else {
      mapped.append(in.substr(start, i - start));
    }
  }
  std::string out;
  out.reserve(mapped.size());
  int newlines = 0;
  for (const std::string& line : text::split(mapped, '\n')) {
    std::string_view t = line;
    while (!t.empty() && t.back() == ' ') t.remove_suffix(1);
    if (t.empty()) {
      ++newlines;
      continue;
    }
    if (!out.empty()) out.append(newlines > 0 ? "\n\n" : "\n");
    out.append(t);
    newlines = 0;
  }
  return out;
}

ExtractedText extract_document(std::string_view bytes) {
  ExtractedText result;
  if (!looks_like_pdf(bytes)) {
    if (bytes.empty() || bytes.find('\0') != std::string_view::npos || !text::is_valid_utf8(bytes)) {
      fail(ErrorCode::kUnreadableDocument, "not a PDF or UTF-8 text document");
    }
    result.plain_text_input = true;
    result.pages = 1;
    result.text = normalize_text(bytes);
    result.no_text = result.text.empty();
    return result;
  }
  std::string joined;
  try {
    pdf::Document doc{std::string(bytes)};
    for (const pdf::Page& page : doc.pages()) {
      const pdf::PageContent content = pdf::interpret_page(doc, page);
      result.images += content.images;
      const std::string text = pdf::layout_page(content.glyphs, page.media_box);
      if (text.empty()) continue;
      if (!joined.empty()) joined += "\n\n";
      joined += text;
    }
    result.pages = doc.pages().size();
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    fail(ErrorCode::kUnreadableDocument, std::string("malformed PDF: ") + e.what());
  }
  result.text = normalize_text(joined);
  result.no_text = result.text.empty();
  return result;
}

std::string extract_text(std::string_view bytes) { return extract_document(bytes).text; }

}  // namespace recap::ingest
