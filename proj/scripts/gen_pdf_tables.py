#!/usr/bin/env python3
# Copyright 2026 The RECAP Authors. All Rights Reserved.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Regenerates src/recap/ingest/pdf/tables.cpp.

Sources: the Adobe Glyph List (via fontTools.agl) and the standard PDF
encodings plus standard-14 font metrics (via reportlab.pdfbase._fontdata).
"""
import pathlib
import sys

from fontTools import agl
from reportlab.pdfbase import _fontdata as fd

OUT = pathlib.Path(__file__).resolve().parent.parent / "src/recap/ingest/pdf/tables.cpp"
HEADER = pathlib.Path(__file__).resolve().parent.parent / "scripts/license_header.txt"


def c_str(s):
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def main():
    lines = []
    if HEADER.exists():
        lines.append(HEADER.read_text().rstrip() + "\n")
    lines.append("// Generated by scripts/gen_pdf_tables.py. Do not edit.\n")
    lines.append('#include "recap/ingest/pdf/tables.hpp"\n')
    lines.append("namespace recap::ingest::pdf::tables {\n")

    glyphs = sorted(agl.LEGACY_AGL2UV.items())
    lines.append("const std::vector<GlyphEntry>& glyph_list() {")
    lines.append("  static const std::vector<GlyphEntry> kGlyphs = {")
    for name, uv in glyphs:
        if isinstance(uv, (list, tuple)):
            uv = uv[0]
        lines.append(f"      {{{c_str(name)}, 0x{uv:04X}}},")
    lines.append("  };")
    lines.append("  return kGlyphs;")
    lines.append("}\n")

    for enc_name in ["StandardEncoding", "WinAnsiEncoding", "MacRomanEncoding", "SymbolEncoding"]:
        vec = fd.encodings[enc_name]
        ident = "k" + enc_name
        lines.append(f"static const char* const {ident}[256] = {{")
        for i in range(0, 256, 8):
            row = []
            for code in range(i, i + 8):
                g = vec[code]
                row.append("nullptr" if g is None else c_str(g))
            lines.append("    " + ", ".join(row) + ",")
        lines.append("};\n")
    lines.append("const char* const* encoding(std::string_view name) {")
    for enc_name in ["StandardEncoding", "WinAnsiEncoding", "MacRomanEncoding", "SymbolEncoding"]:
        lines.append(f'  if (name == "{enc_name}") return k{enc_name};')
    lines.append("  return nullptr;")
    lines.append("}\n")

    fonts = ["Helvetica", "Helvetica-Bold", "Times-Roman", "Times-Bold", "Times-Italic", "Times-BoldItalic", "Symbol"]
    lines.append("const std::vector<FontMetrics>& standard_metrics() {")
    lines.append("  static const std::vector<FontMetrics> kFonts = {")
    for font in fonts:
        widths = fd.widthsByFontGlyph[font]
        lines.append(f"      {{{c_str(font)}, {{")
        for g, w in sorted(widths.items()):
            lines.append(f"          {{{c_str(g)}, {w}}},")
        lines.append("      }},")
    lines.append("  };")
    lines.append("  return kFonts;")
    lines.append("}\n")
    lines.append("}  // namespace recap::ingest::pdf::tables")
    OUT.write_text("\n".join(lines) + "\n")
    print(f"wrote {OUT}", file=sys.stderr)


if __name__ == "__main__":
    main()
