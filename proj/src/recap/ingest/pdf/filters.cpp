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

#include "recap/ingest/pdf/filters.hpp"

#include <zlib.h>

#include <cstdint>
#include <cstdlib>
#include <vector>

namespace recap::ingest::pdf {

std::string flate_decode(std::string_view in) {
  std::string out;
  z_stream zs{};
  if (inflateInit(&zs) != Z_OK) return out;
  zs.next_in = reinterpret_cast<Bytef*>(const_cast<char*>(in.data()));
  zs.avail_in = static_cast<uInt>(in.size());
  char buf[65536];
  for (;;) {
    zs.next_out = reinterpret_cast<Bytef*>(buf);
    zs.avail_out = sizeof(buf);
    const int rc = inflate(&zs, Z_NO_FLUSH);
    out.append(buf, sizeof(buf) - zs.avail_out);
    if (rc == Z_STREAM_END) break;
    if (rc != Z_OK) break;  // keep whatever was decoded from a damaged stream
    if (zs.avail_in == 0 && zs.avail_out != 0) break;
  }
  inflateEnd(&zs);
  return out;
}

std::string ascii_hex_decode(std::string_view in) {
  std::string out;
  int hi = -1;
  for (char c : in) {
    if (c == '>') break;
    int v;
    if (c >= '0' && c <= '9') v = c - '0';
    else if (c >= 'a' && c <= 'f') v = c - 'a' + 10;
    else if (c >= 'A' && c <= 'F') v = c - 'A' + 10;
    else continue;
    if (hi < 0) {
      hi = v;
    } else {
      out.push_back(static_cast<char>(hi * 16 + v));
      hi = -1;
    }
  }
  if (hi >= 0) out.push_back(static_cast<char>(hi * 16));
  return out;
}

std::string ascii85_decode(std::string_view in) {
  std::string out;
  uint32_t group[5];
  int n = 0;
  size_t i = 0;
  if (in.substr(0, 2) == "<~") i = 2;
  for (; i < in.size(); ++i) {
    const char c = in[i];
    if (c == '~') break;
    if (c == 'z' && n == 0) {
      out.append(4, '\0');
      continue;
    }
    if (c < '!' || c > 'u') continue;
    group[n++] = static_cast<uint32_t>(c - '!');
    if (n == 5) {
      uint64_t v = 0;
      for (int k = 0; k < 5; ++k) v = v * 85 + group[k];
      for (int k = 3; k >= 0; --k) out.push_back(static_cast<char>((v >> (8 * k)) & 0xFF));
      n = 0;
    }
  }
  if (n > 1) {
    for (int k = n; k < 5; ++k) group[k] = 84;
    uint64_t v = 0;
    for (int k = 0; k < 5; ++k) v = v * 85 + group[k];
    for (int k = 0; k < n - 1; ++k) out.push_back(static_cast<char>((v >> (8 * (3 - k))) & 0xFF));
  }
  return out;
}

std::string lzw_decode(std::string_view in, bool early_change) {
  std::string out;
  std::vector<std::string> table;
  auto reset = [&] {
    table.clear();
    for (int i = 0; i < 256; ++i) table.emplace_back(1, static_cast<char>(i));
    table.emplace_back();  // 256 clear
    table.emplace_back();  // 257 eod
  };
  reset();
  int code_len = 9;
  uint32_t bitbuf = 0;
  int bits = 0;
  size_t pos = 0;
  std::string prev;
  bool have_prev = false;
  for (;;) {
    while (bits < code_len && pos < in.size()) {
      bitbuf = (bitbuf << 8) | static_cast<uint8_t>(in[pos++]);
      bits += 8;
    }
    if (bits < code_len) break;
    const uint32_t code = (bitbuf >> (bits - code_len)) & ((1u << code_len) - 1);
    bits -= code_len;
    if (code == 256) {
      reset();
      code_len = 9;
      have_prev = false;
      continue;
    }
    if (code == 257) break;
    std::string entry;
    if (code < table.size()) {
      entry = table[code];
    } else if (code == table.size() && have_prev) {
      entry = prev + prev[0];
    } else {
      break;
    }
    out += entry;
    if (have_prev && table.size() < 4096) table.push_back(prev + entry[0]);
    prev = std::move(entry);
    have_prev = true;
    const size_t next = table.size() + (early_change ? 1 : 0);
    if (next >= 4096) code_len = 12;
    else if (next >= 2048) code_len = 12;
    else if (next >= 1024) code_len = 11;
    else if (next >= 512) code_len = 10;
  }
  return out;
}

std::string run_length_decode(std::string_view in) {
  std::string out;
  size_t i = 0;
  while (i < in.size()) {
    const int len = static_cast<uint8_t>(in[i++]);
    if (len == 128) break;
    if (len < 128) {
      const size_t n = std::min<size_t>(len + 1, in.size() - i);
      out.append(in.substr(i, n));
      i += n;
    } else if (i < in.size()) {
      out.append(257 - len, in[i++]);
    }
  }
  return out;
}

std::string apply_predictor(std::string in, const Object& parms) {
  const int predictor = parms.get("Predictor").integer().value_or(1);
  if (predictor < 2) return in;
  const int colors = std::max(1, parms.get("Colors").integer().value_or(1));
  const int bpc = std::max(1, parms.get("BitsPerComponent").integer().value_or(8));
  const int columns = std::max(1, parms.get("Columns").integer().value_or(1));
  const size_t bpp = std::max<size_t>(1, (static_cast<size_t>(colors) * bpc + 7) / 8);
  const size_t row_len = (static_cast<size_t>(colors) * bpc * columns + 7) / 8;

  if (predictor == 2) {
    if (bpc != 8) return in;
    for (size_t r = 0; r + row_len <= in.size(); r += row_len) {
      for (size_t i = bpp; i < row_len; ++i) in[r + i] = static_cast<char>(in[r + i] + in[r + i - bpp]);
    }
    return in;
  }

  std::string out;
  std::vector<uint8_t> prev(row_len, 0), cur(row_len);
  size_t pos = 0;
  while (pos < in.size()) {
    const int type = static_cast<uint8_t>(in[pos++]);
    const size_t n = std::min(row_len, in.size() - pos);
    std::fill(cur.begin(), cur.end(), 0);
    for (size_t i = 0; i < n; ++i) cur[i] = static_cast<uint8_t>(in[pos + i]);
    pos += n;
    for (size_t i = 0; i < row_len; ++i) {
      const int a = i >= bpp ? cur[i - bpp] : 0;
      const int b = prev[i];
      const int c = i >= bpp ? prev[i - bpp] : 0;
      int v = cur[i];
      switch (type) {
        case 1: v += a; break;
        case 2: v += b; break;
        case 3: v += (a + b) / 2; break;
        case 4: {
          const int p = a + b - c;
          const int pa = std::abs(p - a), pb = std::abs(p - b), pc = std::abs(p - c);
          v += (pa <= pb && pa <= pc) ? a : (pb <= pc ? b : c);
          break;
        }
        default: break;
      }
      cur[i] = static_cast<uint8_t>(v);
    }
    out.append(reinterpret_cast<const char*>(cur.data()), n);
    prev = cur;
  }
  return out;
}

std::string apply_filter(std::string_view name, std::string in, const Object& parms) {
  if (name == "FlateDecode" || name == "Fl") return apply_predictor(flate_decode(in), parms);
  if (name == "LZWDecode" || name == "LZW") {
    const int early = parms.get("EarlyChange").integer().value_or(1);
    return apply_predictor(lzw_decode(in, early != 0), parms);
  }
  if (name == "ASCIIHexDecode" || name == "AHx") return ascii_hex_decode(in);
  if (name == "ASCII85Decode" || name == "A85") return ascii85_decode(in);
  if (name == "RunLengthDecode" || name == "RL") return run_length_decode(in);
  return in;
}

}  // namespace recap::ingest::pdf
