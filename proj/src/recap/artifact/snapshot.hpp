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

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "recap/common/files.hpp"

namespace recap::artifact {

namespace fs = std::filesystem;

enum class FetchStatus { kOk, kUnreachable, kAuthRequired, kNotFound };

std::string_view to_string(FetchStatus s);

struct FileEntry {
  std::string path;  // relative, '/'-separated
  uint64_t size_bytes = 0;
  bool is_text = false;
  std::string truncated_content;  // empty for binary files
};

struct RepositorySnapshot {
  std::string origin_url;
  FetchStatus fetch_status = FetchStatus::kUnreachable;
  std::vector<FileEntry> files;  // sorted by path
  Timestamp fetched_at{};
  bool partial = false;          // size ceiling reached
  std::string method;            // git, download, zenodo, local
  std::string message;           // diagnostic for failed fetches
  fs::path local_dir;            // checkout on disk (empty when not ok)
};

enum class ExecutionReason { kExitOk, kNonzeroExit, kTimeout, kNoEntrypoint, kSandboxError };

std::string_view to_string(ExecutionReason r);

struct ExecutionResult {
  char verdict = 'N';  // 'Y' iff reason == kExitOk
  ExecutionReason reason = ExecutionReason::kNoEntrypoint;
  double duration_s = 0;
  std::string log_excerpt;
  std::string entrypoint;  // command that was run, for the audit log
  std::string runtime;     // sandbox runtime used
};

enum class Modality { kPdfOnly, kCodeOnly, kDataOnly, kCodeAndData, kUnspecified, kNone };

std::string_view to_string(Modality m);
std::optional<Modality> parse_modality(std::string_view s);

struct AccessibilityResult {
  bool accessible = false;
  std::string status_class;  // ok, redirect_limit, not_found, auth_required, client_error,
                             // server_error, dns_failure, connect_failed, timeout, tls_error,
                             // invalid_url, error
  long http_status = 0;
  std::string final_url;
  int redirects = 0;
  Timestamp checked_at{};
};

}  // namespace recap::artifact
