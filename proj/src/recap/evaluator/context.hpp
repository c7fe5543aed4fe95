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

#include <optional>
#include <string>
#include <string_view>

#include "recap/checklist/schema.hpp"
#include "recap/evaluator/provider.hpp"
#include "recap/ingest/corpus.hpp"

namespace recap::evaluator {

struct FieldExtras {
  // Serialized best-paper cache record (best_paper fields).
  std::optional<std::string> best_paper_record;
  // Rendered artifact context or the "no artifact" marker (artifact and
  // executable fields).
  std::optional<std::string> artifact_context;
};

struct ContextOptions {
  std::string preamble;  // empty: the bundled answer rules
  size_t max_response_tokens = 1024;
};

inline constexpr std::string_view kBestPaperHeader = "\n\n=== BEST PAPER RECORD ===\n";
inline constexpr std::string_view kArtifactHeader = "\n\n=== LINKED ARTIFACTS ===\n";

// {"type":"object", "answer": enum of the item's domain, "disambiguation": string}.
nlohmann::ordered_json response_schema(const checklist::ChecklistItem& item);

std::string system_prompt(const checklist::ChecklistItem& item, std::string_view preamble);

// Throws InvalidArgument for empty paper text and MissingExtras for an
// artifact/executable item without artifact context.
ProviderRequest build_field_context(const ingest::PaperRecord& paper, const checklist::ChecklistItem& item,
                                    const FieldExtras& extras, const ContextOptions& options = {});

// JSON record of the cached best-paper flags (null for unknown).
std::string best_paper_record(const ingest::PaperRecord& paper);

}  // namespace recap::evaluator
