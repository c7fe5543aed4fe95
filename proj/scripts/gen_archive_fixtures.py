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

"""Writes the archive fixtures under tests/fixtures/archives."""

import gzip
import io
import tarfile
import zipfile
from pathlib import Path

OUT = Path(__file__).resolve().parent.parent / "tests" / "fixtures" / "archives"
MTIME = 1767225600


def tar_add(tar, name, data, kind=tarfile.REGTYPE, linkname=""):
    info = tarfile.TarInfo(name)
    info.size = len(data) if kind == tarfile.REGTYPE else 0
    info.mtime = MTIME
    info.type = kind
    info.linkname = linkname
    tar.addfile(info, io.BytesIO(data) if kind == tarfile.REGTYPE else None)


def inner_zip():
    buf = io.BytesIO()
    with zipfile.ZipFile(buf, "w") as z:
        z.writestr(zipfile.ZipInfo("inner.txt", (2026, 1, 1, 0, 0, 0)), b"inside the inner archive\n")
    return buf.getvalue()


def nested():
    raw = io.BytesIO()
    with tarfile.open(fileobj=raw, mode="w", format=tarfile.USTAR_FORMAT) as tar:
        tar_add(tar, "project/", b"", tarfile.DIRTYPE)
        tar_add(tar, "project/README.md", b"# Demo\n\nRun `python3 main.py`.\n")
        tar_add(tar, "project/main.py", b"print('ok')\n")
        tar_add(tar, "project/data/inner.zip", inner_zip())
        tar_add(tar, "project/link", b"", tarfile.SYMTYPE, "/etc/passwd")
    gz = io.BytesIO()
    with gzip.GzipFile(fileobj=gz, mode="wb", mtime=MTIME) as g:
        g.write(raw.getvalue())
    (OUT / "nested.tar.gz").write_bytes(gz.getvalue())


def zip_mixed():
    buf = io.BytesIO()
    with zipfile.ZipFile(buf, "w") as z:
        z.writestr(zipfile.ZipInfo("src/", (2026, 1, 1, 0, 0, 0)), b"")
        stored = zipfile.ZipInfo("src/stored.py", (2026, 1, 1, 0, 0, 0))
        stored.compress_type = zipfile.ZIP_STORED
        z.writestr(stored, b"x = 1\n")
        deflated = zipfile.ZipInfo("results/table.csv", (2026, 1, 1, 0, 0, 0))
        deflated.compress_type = zipfile.ZIP_DEFLATED
        z.writestr(deflated, b"a,b\n" + b"1,2\n" * 500)
    (OUT / "mixed.zip").write_bytes(buf.getvalue())


def traversal():
    raw = io.BytesIO()
    with tarfile.open(fileobj=raw, mode="w", format=tarfile.GNU_FORMAT) as tar:
        tar_add(tar, "../escape.txt", b"nope\n")
        tar_add(tar, "/abs.txt", b"nope\n")
        tar_add(tar, "ok/" + "d" * 120 + "/long_name.txt", b"long\n")
        tar_add(tar, "ok/plain.txt", b"fine\n")
    (OUT / "traversal.tar").write_bytes(raw.getvalue())


def plain_gzip():
    gz = io.BytesIO()
    with gzip.GzipFile(fileobj=gz, mode="wb", mtime=MTIME, filename="") as g:
        g.write(b"col1,col2\n1,2\n")
    (OUT / "values.csv.gz").write_bytes(gz.getvalue())


if __name__ == "__main__":
    OUT.mkdir(parents=True, exist_ok=True)
    nested()
    zip_mixed()
    traversal()
    plain_gzip()
