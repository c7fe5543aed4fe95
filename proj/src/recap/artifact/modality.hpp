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

#include <string_view>
#include <vector>

#include "recap/artifact/snapshot.hpp"

namespace recap::artifact {

enum class FileKind { kCode, kData, kOther };

// By extension and well-known names; files below data-like directories
// (data, dataset(s), results, raw, processed) count as data unless they are code.
FileKind classify_file(std::string_view relative_path);

struct ModalityEvidence {
  bool artifact_linked = false;     // at least one artifact link
  bool artifact_reachable = false;  // at least one fetch succeeded
  bool has_code = false;
  bool has_data = false;
  bool has_supplement = false;      // supplementary PDF
};

// The rule table:
//   no link, no supplement          -> none
//   no link, supplement             -> pdf_only
//   code and data                   -> code_and_data
//   code                            -> code_only
//   data                            -> data_only
//   neither, some link reachable    -> unspecified
//   neither, no link reachable      -> pdf_only with a supplement, else unspecified
Modality classify_modality(const ModalityEvidence& evidence);

ModalityEvidence census(const std::vector<const RepositorySnapshot*>& snapshots, bool has_supplementary_pdf);

Modality classify_modality(const RepositorySnapshot* snapshot, bool has_supplementary_pdf);
Modality classify_modality(const std::vector<const RepositorySnapshot*>& snapshots, bool has_supplementary_pdf);

}  // namespace recap::artifact
