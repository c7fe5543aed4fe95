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

#include "recap/artifact/archive.hpp"

#include <zlib.h>

#include <algorithm>
#include <array>
#include <cstring>
#include <fstream>
#include <optional>
#include <vector>

namespace recap::artifact {

namespace {

constexpr size_t kBlock = 512;

std::optional<fs::path> safe_relative(std::string name) {
  while (name.rfind("./", 0) == 0) name.erase(0, 2);
  if (name.empty() || name.front() == '/' || name.find('\\') != std::string::npos) return std::nullopt;
  fs::path out;
  for (const auto& part : fs::path(name)) {
    const std::string p = part.string();
    if (p.empty() || p == ".") continue;
    if (p == "..") return std::nullopt;
    out /= part;
  }
  if (out.empty()) return std::nullopt;
  return out;
}

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

class GzReader {
 public:
  explicit GzReader(const fs::path& path) : file_(gzopen(path.c_str(), "rb")) {}
  ~GzReader() {
    if (file_) gzclose(file_);
  }
  GzReader(const GzReader&) = delete;
  GzReader& operator=(const GzReader&) = delete;

  bool ok() const { return file_ != nullptr; }

  // Reads exactly n bytes; false on short read or error.
  bool read(char* out, size_t n) {
    while (n > 0) {
      const unsigned chunk = static_cast<unsigned>(std::min<size_t>(n, 1u << 20));
      const int got = gzread(file_, out, chunk);
      if (got <= 0) return false;
      out += got;
      n -= static_cast<size_t>(got);
    }
    return true;
  }

 private:
  gzFile file_;
};

uint64_t parse_tar_number(const char* field, size_t len) {
  if (static_cast<unsigned char>(field[0]) & 0x80) {
    uint64_t v = static_cast<unsigned char>(field[0]) & 0x7F;
    for (size_t i = 1; i < len; ++i) v = (v << 8) | static_cast<unsigned char>(field[i]);
    return v;
  }
  uint64_t v = 0;
  for (size_t i = 0; i < len; ++i) {
    const char c = field[i];
    if (c >= '0' && c <= '7') {
      v = v * 8 + static_cast<uint64_t>(c - '0');
    } else if (c != ' ' && c != '\0') {
      break;
    } else if (v != 0 && c == '\0') {
      break;
    }
  }
  return v;
}

std::string field_string(const char* field, size_t len) {
  return std::string(field, strnlen(field, len));
}

bool header_checksum_ok(const char* h) {
  const uint64_t stored = parse_tar_number(h + 148, 8);
  uint64_t sum = 0;
  for (size_t i = 0; i < kBlock; ++i) {
    sum += (i >= 148 && i < 156) ? ' ' : static_cast<unsigned char>(h[i]);
  }
  return sum == stored;
}

std::string pax_path(const std::string& records) {
  std::string path;
  size_t pos = 0;
  while (pos < records.size()) {
    const size_t space = records.find(' ', pos);
    if (space == std::string::npos) break;
    const size_t len = std::strtoull(records.c_str() + pos, nullptr, 10);
    if (len == 0 || pos + len > records.size()) break;
    const std::string rec = records.substr(space + 1, pos + len - space - 2);
    if (rec.rfind("path=", 0) == 0) path = rec.substr(5);
    pos += len;
  }
  return path;
}

UnpackResult unpack_tar(const fs::path& archive, const fs::path& dest, uint64_t ceiling) {
  UnpackResult r;
  GzReader in(archive);
  if (!in.ok()) {
    r.message = "cannot open archive";
    return r;
  }
  std::array<char, kBlock> h{};
  std::string long_name;
  std::vector<char> buf(1 << 16);
  int zero_blocks = 0;
  while (true) {
    if (!in.read(h.data(), kBlock)) {
      // Archives without the two terminating zero blocks are common enough.
      r.ok = r.files > 0 || zero_blocks > 0;
      if (!r.ok) r.message = "truncated tar header";
      return r;
    }
    if (std::all_of(h.begin(), h.end(), [](char c) { return c == 0; })) {
      if (++zero_blocks == 2) break;
      continue;
    }
    zero_blocks = 0;
    if (!header_checksum_ok(h.data())) {
      r.message = "bad tar header checksum";
      return r;
    }
    const uint64_t size = parse_tar_number(h.data() + 124, 12);
    const char type = h[156];
    const uint64_t padded = (size + kBlock - 1) / kBlock * kBlock;

    if (type == 'L' || type == 'x') {
      std::string data(padded, '\0');
      if (!in.read(data.data(), padded)) {
        r.message = "truncated tar entry";
        return r;
      }
      data.resize(size);
      if (type == 'L') {
        long_name = field_string(data.data(), data.size());
      } else if (auto p = pax_path(data); !p.empty()) {
        long_name = p;
      }
      continue;
    }

    std::string name;
    if (!long_name.empty()) {
      name = std::move(long_name);
      long_name.clear();
    } else {
      name = field_string(h.data(), 100);
      const std::string prefix = field_string(h.data() + 345, 155);
      if (std::memcmp(h.data() + 257, "ustar", 5) == 0 && !prefix.empty()) name = prefix + "/" + name;
    }

    const bool regular = type == '0' || type == '\0' || type == '7';
    const auto rel = safe_relative(name);
    std::optional<std::ofstream> out;
    if (type == '5' && rel) {
      fs::create_directories(dest / *rel);
    } else if (regular && rel) {
      if (r.bytes + size > ceiling) {
        r.partial = true;
        r.ok = true;
        return r;
      }
      fs::create_directories((dest / *rel).parent_path());
      out.emplace(dest / *rel, std::ios::binary | std::ios::trunc);
      ++r.files;
      r.bytes += size;
    }
    uint64_t left = padded;
    uint64_t data_left = size;
    while (left > 0) {
      const size_t n = static_cast<size_t>(std::min<uint64_t>(left, buf.size()));
      if (!in.read(buf.data(), n)) {
        r.message = "truncated tar entry";
        return r;
      }
      if (out) {
        const size_t keep = static_cast<size_t>(std::min<uint64_t>(data_left, n));
        out->write(buf.data(), static_cast<std::streamsize>(keep));
        data_left -= keep;
      }
      left -= n;
    }
  }
  r.ok = true;
  return r;
}

UnpackResult unpack_gzip(const fs::path& archive, const fs::path& dest, uint64_t ceiling) {
  UnpackResult r;
  gzFile raw = gzopen(archive.c_str(), "rb");
  if (!raw) {
    r.message = "cannot open archive";
    return r;
  }
  std::string name = archive.filename().string();
  if (ends_with(name, ".gz")) name.resize(name.size() - 3);
  if (name.empty()) name = "content";
  fs::create_directories(dest);
  std::ofstream out(dest / name, std::ios::binary | std::ios::trunc);
  std::vector<char> buf(1 << 16);
  while (true) {
    const int got = gzread(raw, buf.data(), static_cast<unsigned>(buf.size()));
    if (got < 0) {
      gzclose(raw);
      r.message = "corrupt gzip stream";
      return r;
    }
    if (got == 0) break;
    if (r.bytes + static_cast<uint64_t>(got) > ceiling) {
      r.partial = true;
      break;
    }
    out.write(buf.data(), got);
    r.bytes += static_cast<uint64_t>(got);
  }
  gzclose(raw);
  r.files = 1;
  r.ok = true;
  return r;
}

uint16_t le16(const unsigned char* p) { return static_cast<uint16_t>(p[0] | (p[1] << 8)); }
uint32_t le32(const unsigned char* p) {
  return static_cast<uint32_t>(p[0]) | (static_cast<uint32_t>(p[1]) << 8) | (static_cast<uint32_t>(p[2]) << 16) |
         (static_cast<uint32_t>(p[3]) << 24);
}

bool inflate_raw(std::ifstream& in, uint64_t compressed, std::ofstream& out, uint64_t expected) {
  z_stream zs{};
  if (inflateInit2(&zs, -MAX_WBITS) != Z_OK) return false;
  std::vector<unsigned char> inbuf(1 << 16);
  std::vector<unsigned char> outbuf(1 << 16);
  uint64_t produced = 0;
  int rc = Z_OK;
  while (rc != Z_STREAM_END) {
    if (zs.avail_in == 0) {
      if (compressed == 0) break;
      const size_t n = static_cast<size_t>(std::min<uint64_t>(compressed, inbuf.size()));
      in.read(reinterpret_cast<char*>(inbuf.data()), static_cast<std::streamsize>(n));
      if (static_cast<size_t>(in.gcount()) != n) break;
      compressed -= n;
      zs.next_in = inbuf.data();
      zs.avail_in = static_cast<uInt>(n);
    }
    zs.next_out = outbuf.data();
    zs.avail_out = static_cast<uInt>(outbuf.size());
    rc = inflate(&zs, Z_NO_FLUSH);
    if (rc != Z_OK && rc != Z_STREAM_END) break;
    const size_t have = outbuf.size() - zs.avail_out;
    produced += have;
    if (produced > expected) break;
    out.write(reinterpret_cast<char*>(outbuf.data()), static_cast<std::streamsize>(have));
  }
  inflateEnd(&zs);
  return rc == Z_STREAM_END && produced == expected;
}

UnpackResult unpack_zip(const fs::path& archive, const fs::path& dest, uint64_t ceiling) {
  UnpackResult r;
  std::ifstream in(archive, std::ios::binary);
  if (!in) {
    r.message = "cannot open archive";
    return r;
  }
  const uint64_t file_size = fs::file_size(archive);
  const uint64_t tail_len = std::min<uint64_t>(file_size, 65557);
  std::vector<unsigned char> tail(tail_len);
  in.seekg(static_cast<std::streamoff>(file_size - tail_len));
  in.read(reinterpret_cast<char*>(tail.data()), static_cast<std::streamsize>(tail_len));
  std::optional<size_t> eocd;
  for (size_t i = tail_len >= 22 ? tail_len - 22 + 1 : 0; i-- > 0;) {
    if (le32(&tail[i]) == 0x06054b50) {
      eocd = i;
      break;
    }
  }
  if (!eocd) {
    r.message = "zip end-of-central-directory not found";
    return r;
  }
  const uint16_t entries = le16(&tail[*eocd + 10]);
  const uint32_t cd_size = le32(&tail[*eocd + 12]);
  const uint32_t cd_offset = le32(&tail[*eocd + 16]);
  if (cd_offset == 0xFFFFFFFF || entries == 0xFFFF || uint64_t{cd_offset} + cd_size > file_size) {
    r.message = "zip64 archives are not supported";
    return r;
  }
  std::vector<unsigned char> cd(cd_size);
  in.clear();
  in.seekg(cd_offset);
  in.read(reinterpret_cast<char*>(cd.data()), cd_size);
  if (static_cast<uint32_t>(in.gcount()) != cd_size) {
    r.message = "truncated central directory";
    return r;
  }
  std::vector<char> buf(1 << 16);
  size_t pos = 0;
  for (uint16_t e = 0; e < entries; ++e) {
    if (pos + 46 > cd.size() || le32(&cd[pos]) != 0x02014b50) {
      r.message = "corrupt central directory";
      return r;
    }
    const uint16_t flags = le16(&cd[pos + 8]);
    const uint16_t method = le16(&cd[pos + 10]);
    const uint32_t csize = le32(&cd[pos + 20]);
    const uint32_t usize = le32(&cd[pos + 24]);
    const uint16_t name_len = le16(&cd[pos + 28]);
    const uint16_t extra_len = le16(&cd[pos + 30]);
    const uint16_t comment_len = le16(&cd[pos + 32]);
    const uint32_t external = le32(&cd[pos + 38]);
    const uint32_t local = le32(&cd[pos + 42]);
    if (pos + 46 + name_len > cd.size()) {
      r.message = "corrupt central directory";
      return r;
    }
    const std::string name(reinterpret_cast<const char*>(&cd[pos + 46]), name_len);
    pos += 46u + name_len + extra_len + comment_len;

    const auto rel = safe_relative(name);
    const bool is_symlink = ((external >> 16) & 0170000) == 0120000;
    if (!rel || is_symlink || (flags & 1)) continue;
    if (!name.empty() && name.back() == '/') {
      fs::create_directories(dest / *rel);
      continue;
    }
    if (csize == 0xFFFFFFFF || usize == 0xFFFFFFFF) {
      r.message = "zip64 entries are not supported";
      return r;
    }
    if (method != 0 && method != 8) continue;
    if (r.bytes + usize > ceiling) {
      r.partial = true;
      break;
    }
    unsigned char lh[30];
    in.clear();
    in.seekg(local);
    in.read(reinterpret_cast<char*>(lh), 30);
    if (in.gcount() != 30 || le32(lh) != 0x04034b50) {
      r.message = "corrupt local header";
      return r;
    }
    in.seekg(static_cast<std::streamoff>(local) + 30 + le16(lh + 26) + le16(lh + 28));
    fs::create_directories((dest / *rel).parent_path());
    std::ofstream out(dest / *rel, std::ios::binary | std::ios::trunc);
    if (method == 0) {
      uint64_t left = usize;
      while (left > 0) {
        const size_t n = static_cast<size_t>(std::min<uint64_t>(left, buf.size()));
        in.read(buf.data(), static_cast<std::streamsize>(n));
        if (static_cast<size_t>(in.gcount()) != n) {
          r.message = "truncated zip entry";
          return r;
        }
        out.write(buf.data(), static_cast<std::streamsize>(n));
        left -= n;
      }
    } else if (!inflate_raw(in, csize, out, usize)) {
      r.message = "corrupt deflate data in " + name;
      return r;
    }
    ++r.files;
    r.bytes += usize;
  }
  r.ok = true;
  return r;
}

}  // namespace

ArchiveKind sniff_archive(const fs::path& file) {
  std::ifstream in(file, std::ios::binary);
  std::array<char, kBlock> head{};
  in.read(head.data(), kBlock);
  const auto n = static_cast<size_t>(in.gcount());
  if (n >= 4 && std::memcmp(head.data(), "PK\x03\x04", 4) == 0) return ArchiveKind::kZip;
  if (n >= 4 && std::memcmp(head.data(), "PK\x05\x06", 4) == 0) return ArchiveKind::kZip;
  if (n == kBlock && std::memcmp(head.data() + 257, "ustar", 5) == 0) return ArchiveKind::kTar;
  if (n >= 2 && static_cast<unsigned char>(head[0]) == 0x1f && static_cast<unsigned char>(head[1]) == 0x8b) {
    GzReader gz(file);
    std::array<char, kBlock> inner{};
    if (gz.ok() && gz.read(inner.data(), kBlock) &&
        (std::memcmp(inner.data() + 257, "ustar", 5) == 0 || header_checksum_ok(inner.data()))) {
      return ArchiveKind::kGzipTar;
    }
    return ArchiveKind::kGzip;
  }
  return ArchiveKind::kNone;
}

UnpackResult unpack_archive(const fs::path& archive, const fs::path& dest, uint64_t size_ceiling) {
  fs::create_directories(dest);
  switch (sniff_archive(archive)) {
    case ArchiveKind::kTar:
    case ArchiveKind::kGzipTar: return unpack_tar(archive, dest, size_ceiling);
    case ArchiveKind::kGzip: return unpack_gzip(archive, dest, size_ceiling);
    case ArchiveKind::kZip: return unpack_zip(archive, dest, size_ceiling);
    case ArchiveKind::kNone: break;
  }
  UnpackResult r;
  r.message = "not an archive";
  return r;
}

}  // namespace recap::artifact
