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

#include "recap/artifact/inventory.hpp"

#include <algorithm>
#include <fstream>

#include "recap/common/error.hpp"

namespace recap::artifact {

namespace {

constexpr size_t kSniffBytes = 8192;

std::string read_prefix(const fs::path& path, size_t max_bytes) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::kIo, "cannot read " + path.string());
  std::string out(max_bytes, '\0');
  in.read(out.data(), static_cast<std::streamsize>(max_bytes));
  out.resize(static_cast<size_t>(in.gcount()));
  return out;
}

bool valid_utf8_allowing_cut(std::string_view s) {
  size_t i = 0;
  while (i < s.size()) {
    const auto c = static_cast<unsigned char>(s[i]);
    size_t len = c < 0x80 ? 1 : (c >> 5) == 0x6 ? 2 : (c >> 4) == 0xE ? 3 : (c >> 3) == 0x1E ? 4 : 0;
    if (len == 0) return false;
    if (i + len > s.size()) {
      for (size_t j = i + 1; j < s.size(); ++j) {
        if ((static_cast<unsigned char>(s[j]) & 0xC0) != 0x80) return false;
      }
      return true;
    }
    for (size_t j = 1; j < len; ++j) {
      if ((static_cast<unsigned char>(s[i + j]) & 0xC0) != 0x80) return false;
    }
    if (len == 2 && c < 0xC2) return false;
    i += len;
  }
  return true;
}

}  // namespace

bool looks_like_text(std::string_view sample) {
  if (sample.find('\0') != std::string_view::npos) return false;
  if (!valid_utf8_allowing_cut(sample)) return false;
  size_t control = 0;
  for (char ch : sample) {
    const auto c = static_cast<unsigned char>(ch);
    if (c < 0x20 && c != '\n' && c != '\r' && c != '\t' && c != '\f' && c != 0x1B) ++control;
  }
  return control * 100 <= sample.size();
}

InventoryResult build_inventory(const fs::path& dir, uint64_t size_ceiling, const TokenEstimator& tokens,
                                size_t per_file_token_budget) {
  InventoryResult result;
  std::vector<std::pair<std::string, fs::path>> found;
  std::error_code ec;
  fs::recursive_directory_iterator it(dir, fs::directory_options::none, ec);
  if (ec) fail(ErrorCode::kIo, "cannot list " + dir.string() + ": " + ec.message());
  for (; it != fs::recursive_directory_iterator(); it.increment(ec)) {
    if (ec) fail(ErrorCode::kIo, "cannot list " + dir.string() + ": " + ec.message());
    const auto status = it->symlink_status();
    if (fs::is_directory(status) && it->path().filename() == ".git") {
      it.disable_recursion_pending();
      continue;
    }
    if (!fs::is_regular_file(status)) continue;
    found.emplace_back(fs::relative(it->path(), dir).generic_string(), it->path());
  }
  std::sort(found.begin(), found.end());

  // Upper bound on bytes needed for the budget: 4 bytes per code point.
  const size_t content_bytes =
      static_cast<size_t>(static_cast<double>(per_file_token_budget) * tokens.chars_per_token()) * 4 + 4;
  for (const auto& [rel, path] : found) {
    const uint64_t size = fs::file_size(path);
    if (result.total_bytes + size > size_ceiling) {
      result.partial = true;
      break;
    }
    result.total_bytes += size;
    FileEntry entry;
    entry.path = rel;
    entry.size_bytes = size;
    std::string head = read_prefix(path, std::max(kSniffBytes, content_bytes));
    entry.is_text = looks_like_text(std::string_view(head).substr(0, kSniffBytes));
    if (entry.is_text) {
      head.resize(tokens.prefix_bytes(head, per_file_token_budget));
      entry.truncated_content = std::move(head);
    }
    result.files.push_back(std::move(entry));
  }
  return result;
}

ContextBundle truncate_for_context(const RepositorySnapshot& snapshot, size_t per_file_token_budget,
                                   const TokenEstimator& tokens) {
  ContextBundle bundle;
  bundle.origin_url = snapshot.origin_url;
  bundle.partial = snapshot.partial;
  if (snapshot.fetch_status != FetchStatus::kOk) return bundle;
  std::vector<const FileEntry*> files;
  for (const auto& f : snapshot.files) files.push_back(&f);
  std::sort(files.begin(), files.end(), [](const FileEntry* a, const FileEntry* b) { return a->path < b->path; });
  for (const FileEntry* f : files) {
    BundleEntry e;
    e.path = f->path;
    e.size_bytes = f->size_bytes;
    e.is_text = f->is_text;
    if (f->is_text) {
      const std::string_view content = f->truncated_content;
      e.content = std::string(content.substr(0, tokens.prefix_bytes(content, per_file_token_budget)));
      e.tokens = tokens.count(e.content);
    }
    bundle.total_tokens += e.tokens;
    bundle.entries.push_back(std::move(e));
  }
  return bundle;
}

std::string ContextBundle::render() const {
  std::string out;
  out += "### Repository: " + origin_url + "\n";
  if (entries.empty()) out += "(no files)\n";
  for (const auto& e : entries) {
    if (e.is_text) {
      out += "--- " + e.path + " ---\n";
      out += e.content;
      if (!e.content.empty() && e.content.back() != '\n') out += '\n';
    } else {
      out += "--- " + e.path + " (binary, " + std::to_string(e.size_bytes) + " bytes) ---\n";
    }
  }
  if (partial) out += "(inventory truncated at the size ceiling)\n";
  return out;
}

std::string render_bundles(const std::vector<ContextBundle>& bundles) {
  std::string out;
  for (size_t i = 0; i < bundles.size(); ++i) {
    if (i) out += '\n';
    out += bundles[i].render();
  }
  return out;
}

}  // namespace recap::artifact
