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

#include <string>
#include <string_view>
#include <vector>

#include "recap/artifact/config.hpp"
#include "recap/artifact/snapshot.hpp"
#include "recap/artifact/tokens.hpp"

namespace recap::artifact {

// Binary when the sample has a NUL byte or is not UTF-8 (a sequence cut at
// the sample end is allowed).
bool looks_like_text(std::string_view sample);

struct InventoryResult {
  std::vector<FileEntry> files;
  bool partial = false;
  uint64_t total_bytes = 0;
};

// Walks `dir` in path order, skipping .git and symlinks. Files are admitted
// while the running size total stays within `size_ceiling`.
InventoryResult build_inventory(const fs::path& dir, uint64_t size_ceiling, const TokenEstimator& tokens,
                                size_t per_file_token_budget);

struct BundleEntry {
  std::string path;
  uint64_t size_bytes = 0;
  bool is_text = false;
  std::string content;
  size_t tokens = 0;
};

struct ContextBundle {
  std::vector<BundleEntry> entries;
  size_t total_tokens = 0;
  bool partial = false;
  std::string origin_url;

  std::string render() const;
};

ContextBundle truncate_for_context(const RepositorySnapshot& snapshot, size_t per_file_token_budget = 1000,
                                   const TokenEstimator& tokens = TokenEstimator());

// Bundles of several snapshots concatenated in the given order.
std::string render_bundles(const std::vector<ContextBundle>& bundles);

}  // namespace recap::artifact
