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

#include "recap/ingest/corpus.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <map>
#include <json.hpp>
#include <set>
#include <thread>

#include "recap/common/csv.hpp"
#include "recap/common/files.hpp"
#include "recap/common/text.hpp"
#include "recap/ingest/text_extraction.hpp"

namespace recap::ingest {

namespace {

std::optional<bool> parse_flag(std::string_view raw, size_t row, std::string_view column) {
  const std::string v = text::to_lower(text::trim(raw));
  if (v.empty()) return std::nullopt;
  if (v == "y" || v == "yes" || v == "true" || v == "1") return true;
  if (v == "n" || v == "no" || v == "false" || v == "0") return false;
  fail(ErrorCode::kMalformedManifest,
       "row " + std::to_string(row) + ": bad value '" + std::string(raw) + "' in column " + std::string(column));
}

std::optional<bool> json_flag(const nlohmann::json& entry, const char* key, const std::string& id) {
  if (!entry.contains(key) || entry[key].is_null()) return std::nullopt;
  if (!entry[key].is_boolean()) {
    fail(ErrorCode::kMalformedManifest, "best-paper cache entry '" + id + "': '" + key + "' must be boolean");
  }
  return entry[key].get<bool>();
}

}  // namespace

std::vector<ManifestRow> parse_manifest(std::string_view manifest) {
  std::vector<csv::Row> rows;
  try {
    rows = csv::parse(manifest);
  } catch (const Error& e) {
    fail(ErrorCode::kMalformedManifest, e.what());
  }
  if (rows.empty()) fail(ErrorCode::kMalformedManifest, "manifest is empty");
  std::map<std::string, size_t> col;
  for (size_t i = 0; i < rows[0].size(); ++i) {
    col[text::to_lower(text::trim(rows[0][i]))] = i;
  }
  for (const char* required : {"paper_id", "year", "title", "pdf_path"}) {
    if (!col.count(required)) fail(ErrorCode::kMalformedManifest, std::string("missing column ") + required);
  }
  auto optional_col = [&](const char* name) -> std::optional<size_t> {
    if (auto it = col.find(name); it != col.end()) return it->second;
    return std::nullopt;
  };
  const auto nominated = optional_col("nominated");
  const auto won = optional_col("won");
  const auto supplementary = optional_col("supplementary");

  std::vector<ManifestRow> out;
  std::set<std::string> ids;
  for (size_t r = 1; r < rows.size(); ++r) {
    const csv::Row& row = rows[r];
    if (row.size() == 1 && text::trim(row[0]).empty()) continue;
    if (row.size() != rows[0].size()) {
      fail(ErrorCode::kMalformedManifest, "row " + std::to_string(r) + ": expected " +
                                              std::to_string(rows[0].size()) + " fields, got " +
                                              std::to_string(row.size()));
    }
    ManifestRow m;
    m.row = r;
    m.paper_id = std::string(text::trim(row[col["paper_id"]]));
    if (m.paper_id.empty()) fail(ErrorCode::kMalformedManifest, "row " + std::to_string(r) + ": empty paper_id");
    if (m.paper_id.find_first_of("/\\") != std::string::npos || m.paper_id == "." || m.paper_id == "..") {
      fail(ErrorCode::kMalformedManifest, "row " + std::to_string(r) + ": paper_id must be usable as a file name");
    }
    const std::string_view year = text::trim(row[col["year"]]);
    auto [p, ec] = std::from_chars(year.data(), year.data() + year.size(), m.year);
    if (ec != std::errc() || p != year.data() + year.size()) {
      fail(ErrorCode::kMalformedManifest, "row " + std::to_string(r) + ": bad year '" + std::string(year) + "'");
    }
    m.title = std::string(text::trim(row[col["title"]]));
    m.pdf_path = std::string(text::trim(row[col["pdf_path"]]));
    if (nominated) m.flags.best_paper_nominated = parse_flag(row[*nominated], r, "nominated");
    if (won) m.flags.best_paper_won = parse_flag(row[*won], r, "won");
    if (supplementary) m.flags.has_supplementary = parse_flag(row[*supplementary], r, "supplementary");
    if (!ids.insert(m.paper_id).second) fail(ErrorCode::kDuplicatePaperId, "duplicate paper_id '" + m.paper_id + "'");
    out.push_back(std::move(m));
  }
  return out;
}

std::vector<std::pair<std::string, PaperFlags>> parse_best_paper_cache(std::string_view json) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::kMalformedManifest, std::string("best-paper cache: ") + e.what());
  }
  if (!doc.is_object()) fail(ErrorCode::kMalformedManifest, "best-paper cache must be an object");
  std::vector<std::pair<std::string, PaperFlags>> out;
  for (const auto& [id, entry] : doc.items()) {
    if (!entry.is_object()) fail(ErrorCode::kMalformedManifest, "best-paper cache entry '" + id + "' must be an object");
    PaperFlags f;
    f.best_paper_nominated = json_flag(entry, "nominated", id);
    f.best_paper_won = json_flag(entry, "won", id);
    f.has_supplementary = json_flag(entry, "supplementary", id);
    out.emplace_back(id, f);
  }
  return out;
}

PaperRecord load_paper(const ManifestRow& row, const fs::path& documents_root) {
  PaperRecord rec;
  rec.paper_id = row.paper_id;
  rec.year = row.year;
  rec.title = row.title;
  rec.flags = row.flags;
  fs::path path = row.pdf_path;
  if (path.is_relative()) path = documents_root / path;
  rec.document_path = path;
  std::error_code ec;
  if (!fs::is_regular_file(path, ec)) fail(ErrorCode::kIo, "document not found: " + path.string());
  const ExtractedText ex = extract_document(read_file(path));
  if (ex.no_text) fail(ErrorCode::kUnreadableDocument, "no extractable text in " + path.string());
  rec.text = ex.text;
  rec.pages = ex.pages;
  rec.links = extract_urls(rec.text);
  return rec;
}

void apply_best_paper_cache(std::vector<ManifestRow>& rows, const fs::path& cache_dir) {
  if (cache_dir.empty()) return;
  const fs::path cache = cache_dir / kBestPaperCacheFile;
  std::error_code ec;
  if (!fs::is_regular_file(cache, ec)) return;
  std::map<std::string, PaperFlags> by_id;
  for (auto& [id, f] : parse_best_paper_cache(read_file(cache))) by_id[id] = f;
  for (ManifestRow& r : rows) {
    const auto it = by_id.find(r.paper_id);
    if (it == by_id.end()) continue;
    if (!r.flags.best_paper_nominated) r.flags.best_paper_nominated = it->second.best_paper_nominated;
    if (!r.flags.best_paper_won) r.flags.best_paper_won = it->second.best_paper_won;
    if (!r.flags.has_supplementary) r.flags.has_supplementary = it->second.has_supplementary;
  }
}

std::vector<PaperRecord> manifest_records(std::string_view manifest, const fs::path& cache_dir) {
  std::vector<ManifestRow> rows = parse_manifest(manifest);
  apply_best_paper_cache(rows, cache_dir);
  std::vector<PaperRecord> out;
  for (const auto& r : rows) {
    PaperRecord rec;
    rec.paper_id = r.paper_id;
    rec.year = r.year;
    rec.title = r.title;
    rec.flags = r.flags;
    out.push_back(std::move(rec));
  }
  return out;
}

Corpus load_corpus(std::string_view manifest, const CorpusOptions& options) {
  std::vector<ManifestRow> rows = parse_manifest(manifest);
  apply_best_paper_cache(rows, options.cache_dir);
  const fs::path root = options.documents_root.empty() ? options.cache_dir : options.documents_root;

  std::vector<std::optional<PaperRecord>> loaded(rows.size());
  std::vector<std::optional<SkippedPaper>> skipped(rows.size());
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (size_t i = next++; i < rows.size(); i = next++) {
      try {
        loaded[i] = load_paper(rows[i], root);
      } catch (const Error& e) {
        skipped[i] = SkippedPaper{rows[i].paper_id, rows[i].row, e.code(), e.what()};
      } catch (const std::exception& e) {
        skipped[i] = SkippedPaper{rows[i].paper_id, rows[i].row, ErrorCode::kIo, e.what()};
      }
    }
  };
  const unsigned n = std::clamp<unsigned>(options.workers, 1, 64);
  std::vector<std::thread> threads;
  for (unsigned t = 1; t < n && t < rows.size(); ++t) threads.emplace_back(worker);
  worker();
  for (auto& t : threads) t.join();

  Corpus corpus;
  for (size_t i = 0; i < rows.size(); ++i) {
    if (loaded[i]) corpus.records.push_back(std::move(*loaded[i]));
    if (skipped[i]) corpus.skipped.push_back(std::move(*skipped[i]));
  }
  return corpus;
}

}  // namespace recap::ingest
