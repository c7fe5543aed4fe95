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
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "recap/common/error.hpp"
#include "recap/ingest/urls.hpp"

namespace recap::ingest {

namespace fs = std::filesystem;

struct PaperFlags {
  std::optional<bool> best_paper_nominated;
  std::optional<bool> best_paper_won;
  std::optional<bool> has_supplementary;
};

struct PaperRecord {
  std::string paper_id;
  int year = 0;
  std::string title;
  std::string text;
  std::vector<LinkRef> links;
  PaperFlags flags;
  fs::path document_path;
  size_t pages = 0;
};

struct SkippedPaper {
  std::string paper_id;
  size_t row = 0;  // 1-based data row
  ErrorCode reason = ErrorCode::kUnreadableDocument;
  std::string message;
};

struct Corpus {
  std::vector<PaperRecord> records;
  std::vector<SkippedPaper> skipped;
};

struct CorpusOptions {
  fs::path cache_dir;       // holds best_papers.json when present
  fs::path documents_root;  // base for relative pdf_path values; cache_dir when empty
  unsigned workers = 1;
};

inline constexpr std::string_view kBestPaperCacheFile = "best_papers.json";

struct ManifestRow {
  size_t row = 0;
  std::string paper_id;
  int year = 0;
  std::string title;
  std::string pdf_path;
  PaperFlags flags;
};

// Header `paper_id,year,title,pdf_path`; optional `nominated`, `won` and
// `supplementary` columns take Y/N/true/false/1/0 or blank.
// Throws MalformedManifest or DuplicatePaperId.
std::vector<ManifestRow> parse_manifest(std::string_view manifest);

// {paper_id: {nominated, won, supplementary}}. Throws MalformedManifest.
std::vector<std::pair<std::string, PaperFlags>> parse_best_paper_cache(std::string_view json);

// Unreadable, encrypted, missing or text-less documents are skipped and
// reported; manifest-level problems throw.
Corpus load_corpus(std::string_view manifest, const CorpusOptions& options);

// Fills unset manifest flags from <cache_dir>/best_papers.json when present.
void apply_best_paper_cache(std::vector<ManifestRow>& rows, const fs::path& cache_dir);

// Records carrying manifest metadata and flags only (no document text).
std::vector<PaperRecord> manifest_records(std::string_view manifest, const fs::path& cache_dir);

// Reads text and links for one document.
PaperRecord load_paper(const ManifestRow& row, const fs::path& documents_root);

}  // namespace recap::ingest
