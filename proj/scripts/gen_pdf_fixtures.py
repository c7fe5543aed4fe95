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

"""Writes the PDF fixtures under tests/fixtures/pdf (reportlab, PIL)."""

import random
import struct
import zlib
from pathlib import Path

from PIL import Image
from reportlab.lib import pdfencrypt
from reportlab.lib.pagesizes import letter
from reportlab.lib.utils import ImageReader
from reportlab.pdfbase import pdfmetrics
from reportlab.pdfbase.ttfonts import TTFont
from reportlab.pdfgen import canvas

OUT = Path(__file__).resolve().parent.parent / "tests" / "fixtures" / "pdf"
FIXED_DATE = "D:20260101000000Z"


def new_canvas(name, **kw):
    c = canvas.Canvas(str(OUT / name), pagesize=letter, invariant=1, **kw)
    c.setCreator("recap fixtures")
    return c


def hello():
    c = new_canvas("hello.pdf")
    c.setFont("Helvetica", 12)
    c.drawString(72, 720, "Hello world")
    c.save()


def image_only():
    rng = random.Random(7)
    img = Image.new("L", (64, 64))
    img.putdata([rng.randrange(256) for _ in range(64 * 64)])
    c = new_canvas("image_only.pdf")
    c.drawImage(ImageReader(img), 72, 500, width=256, height=256)
    c.save()


def encrypted():
    enc = pdfencrypt.StandardEncryption("user", "owner", canPrint=1)
    c = new_canvas("encrypted.pdf", encrypt=enc)
    c.setFont("Helvetica", 12)
    c.drawString(72, 720, "Secret text")
    c.save()


def superscript(c, x, y, text, font, size, marker, msize, rise):
    t = c.beginText(x, y)
    t.setFont(font, size)
    t.textOut(text)
    t.setFont(font, msize)
    t.setRise(rise)
    t.textOut(marker)
    t.setRise(0)
    t.setFont(font, size)
    return t


def draw_lines(c, x, y, lines, font="Times-Roman", size=10, leading=12):
    for line in lines:
        if line is None:
            y -= leading
            continue
        c.setFont(font, size)
        c.drawString(x, y, line)
        y -= leading
    return y


def hyphenation():
    c = new_canvas("hyphenation.pdf")
    draw_lines(c, 72, 720, [
        "The evaluation of repro-",
        "ducibility signals needs care.",
        "Some terms stay hyphenated, like Bayes-",
        "Nash equilibria, when the next line is capitalised.",
    ], font="Helvetica", size=11, leading=14)
    c.save()


def footnote():
    c = new_canvas("footnote.pdf")
    c.setFont("Helvetica", 11)
    c.drawString(72, 720, "We describe a small measurement study.")
    t = superscript(c, 72, 706, "All scripts are in our repository", "Helvetica", 11, "1", 7, 4)
    t.textOut(" and run on a laptop.")
    c.drawText(t)
    c.drawString(72, 692, "The analysis takes about ten minutes.")
    t = c.beginText(72, 80)
    t.setFont("Helvetica", 6)
    t.setRise(3)
    t.textOut("1")
    t.setRise(0)
    t.setFont("Helvetica", 8)
    t.textOut(" See https://github.com/example/measure-kit for the code.")
    c.drawText(t)
    c.save()


TITLE = "Measuring Artifact Availability in Workshop Papers"
AUTHORS = "Ada Example and Ben Sample"

LEFT = [
    "Abstract. Research artifacts help readers check",
    "published claims. We count how often a small set",
    "of workshop papers links to code or data and",
    "whether those links still resolve today.",
    None,
    "1 Introduction",
    "Sharing code is now common in many venues, but",
    "links decay over time. A paper that points to a",
    "personal web page may lose its artifact within a",
    "few years. We therefore look at both the presence",
    "of a link and the kind of host it uses.",
    None,
    "Our tooling is published in a public repository#",
    "together with the annotation guide. Each paper was",
    "read by two annotators who recorded the location",
    "of every artifact link they found.",
    None,
    "2 Method",
    "We collected the proceedings of three years and",
    "extracted all hyperlinks from the running text.",
]

RIGHT = [
    "Links were grouped by host into code hosting,",
    "archival services, and other pages. Archival",
    "services issue persistent identifiers, while code",
    "hosts may delete or move projects.",
    None,
    "3 Results",
    "Most papers that shared code used a hosting site",
    "without an archived copy. Only a minority cited a",
    "persistent identifier. Broken links were more",
    "frequent for older papers and for links to per-",
    "sonal pages than for links to institutional ones.",
    None,
    "4 Conclusion",
    "Authors should deposit a snapshot of their code",
    "in an archive and cite it next to the hosting link.",
    "Doing so costs little and keeps the work",
    "inspectable for future readers.",
]

FOOTNOTE = "See https://github.com/example/artifact-kit for the tools."


def two_column():
    c = new_canvas("two_column.pdf")
    width, _ = letter
    c.setFont("Times-Bold", 16)
    c.drawCentredString(width / 2, 740, TITLE)
    c.setFont("Times-Roman", 11)
    c.drawCentredString(width / 2, 722, AUTHORS)

    left_x, right_x, top = 54, 315, 690
    y = top
    for line in LEFT:
        if line is None:
            y -= 12
            continue
        if line.endswith("#"):
            t = superscript(c, left_x, y, line[:-1], "Times-Roman", 10, "1", 6.5, 3.5)
            c.drawText(t)
        else:
            c.setFont("Times-Bold" if line[0].isdigit() else "Times-Roman", 10)
            c.drawString(left_x, y, line)
        y -= 12
    t = c.beginText(left_x, 90)
    t.setFont("Times-Roman", 5.5)
    t.setRise(2.5)
    t.textOut("1")
    t.setRise(0)
    t.setFont("Times-Roman", 8)
    t.textOut(" " + FOOTNOTE)
    c.drawText(t)

    y = top
    for line in RIGHT:
        if line is None:
            y -= 12
            continue
        c.setFont("Times-Bold" if line[0].isdigit() else "Times-Roman", 10)
        c.drawString(right_x, y, line)
        y -= 12

    c.setFont("Times-Roman", 9)
    c.drawCentredString(width / 2, 40, "Workshop on Research Practice, page 1")
    c.save()


def unicode_font():
    pdfmetrics.registerFont(TTFont("DejaVuSans", "/usr/share/fonts/truetype/dejavu/DejaVuSans.ttf"))
    c = new_canvas("unicode.pdf")
    c.setFont("DejaVuSans", 12)
    c.drawString(72, 720, "Café naïve résumé ﬁnal αβ")
    c.save()


def multi_page():
    c = new_canvas("multi_page.pdf")
    for i in range(1, 4):
        c.setFont("Helvetica", 12)
        c.drawString(72, 720, f"Page {i} text")
        c.showPage()
    c.save()


def compressed_objects():
    """Hand-built file with an object stream and a predictor-coded xref stream."""
    content = b"BT /F1 12 Tf 72 720 Td (Compressed objects) Tj ET"
    objs_in_stream = {
        1: b"<< /Type /Catalog /Pages 2 0 R >>",
        2: b"<< /Type /Pages /Kids [3 0 R] /Count 1 >>",
        3: b"<< /Type /Page /Parent 2 0 R /MediaBox [0 0 612 792] /Resources << /Font << /F1 5 0 R >> >> /Contents 4 0 R >>",
        5: b"<< /Type /Font /Subtype /Type1 /BaseFont /Helvetica >>",
    }
    header = b""
    body = b""
    for num, data in objs_in_stream.items():
        header += b"%d %d " % (num, len(body))
        body += data + b"\n"
    objstm_raw = header + body
    objstm = zlib.compress(objstm_raw)

    out = bytearray(b"%PDF-1.5\n%\xe2\xe3\xcf\xd3\n")
    offsets = {}
    offsets[4] = len(out)
    out += b"4 0 obj\n<< /Length %d >>\nstream\n" % len(content) + content + b"\nendstream\nendobj\n"
    offsets[6] = len(out)
    out += (b"6 0 obj\n<< /Type /ObjStm /N %d /First %d /Filter /FlateDecode /Length %d >>\nstream\n"
            % (len(objs_in_stream), len(header), len(objstm)) + objstm + b"\nendstream\nendobj\n")

    rows = [(0, 0, 0)]
    index_in_stream = {num: i for i, num in enumerate(objs_in_stream)}
    xref_num = 7
    for num in range(1, xref_num + 1):
        if num in index_in_stream:
            rows.append((2, 6, index_in_stream[num]))
        elif num == xref_num:
            rows.append((1, len(out), 0))
        else:
            rows.append((1, offsets[num], 0))
    raw_rows = [struct.pack(">BIH", *r) for r in rows]
    # PNG "Up" predictor on 7-byte rows.
    encoded = b""
    prev = bytes(7)
    for r in raw_rows:
        encoded += b"\x02" + bytes((a - b) & 0xFF for a, b in zip(r, prev))
        prev = r
    xref_data = zlib.compress(encoded)
    xref_off = len(out)
    out += (b"7 0 obj\n<< /Type /XRef /Size %d /W [1 4 2] /Root 1 0 R /Filter /FlateDecode "
            b"/DecodeParms << /Predictor 12 /Columns 7 >> /Length %d >>\nstream\n"
            % (xref_num + 1, len(xref_data)) + xref_data + b"\nendstream\nendobj\n")
    out += b"startxref\n%d\n%%%%EOF\n" % xref_off
    (OUT / "compressed_objects.pdf").write_bytes(bytes(out))


def damaged_xref():
    """Valid objects, but startxref points nowhere useful."""
    src = (OUT / "hello.pdf").read_bytes()
    pos = src.rfind(b"startxref")
    (OUT / "damaged_xref.pdf").write_bytes(src[:pos] + b"startxref\n999999\n%%EOF\n")


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    hello()
    image_only()
    encrypted()
    hyphenation()
    footnote()
    two_column()
    unicode_font()
    multi_page()
    compressed_objects()
    damaged_xref()
    (OUT / "not_a_pdf.bin").write_bytes(bytes(range(256)) * 4)


if __name__ == "__main__":
    main()
