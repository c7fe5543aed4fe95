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

#include "recap/artifact/snapshot.hpp"

namespace recap::artifact {

std::string_view to_string(FetchStatus s) {
  switch (s) {
    case FetchStatus::kOk: return "ok";
    case FetchStatus::kUnreachable: return "unreachable";
    case FetchStatus::kAuthRequired: return "auth_required";
    case FetchStatus::kNotFound: return "not_found";
  }
  return "unreachable";
}

std::string_view to_string(ExecutionReason r) {
  switch (r) {
    case ExecutionReason::kExitOk: return "exit_ok";
    case ExecutionReason::kNonzeroExit: return "nonzero_exit";
    case ExecutionReason::kTimeout: return "timeout";
    case ExecutionReason::kNoEntrypoint: return "no_entrypoint";
    case ExecutionReason::kSandboxError: return "sandbox_error";
  }
  return "sandbox_error";
}

std::string_view to_string(Modality m) {
  switch (m) {
    case Modality::kPdfOnly: return "pdf_only";
    case Modality::kCodeOnly: return "code_only";
    case Modality::kDataOnly: return "data_only";
    case Modality::kCodeAndData: return "code_and_data";
    case Modality::kUnspecified: return "unspecified";
    case Modality::kNone: return "none";
  }
  return "none";
}

std::optional<Modality> parse_modality(std::string_view s) {
  for (Modality m : {Modality::kPdfOnly, Modality::kCodeOnly, Modality::kDataOnly, Modality::kCodeAndData,
                     Modality::kUnspecified, Modality::kNone}) {
    if (s == to_string(m)) return m;
  }
  return std::nullopt;
}

}  // namespace recap::artifact
