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
#include <string>

namespace recap::artifact {

namespace fs = std::filesystem;

enum class ArchiveKind { kNone, kTar, kGzipTar, kGzip, kZip };

// Sniffs magic bytes, not the file name.
ArchiveKind sniff_archive(const fs::path& file);

struct UnpackResult {
  bool ok = false;
  bool partial = false;  // stopped at the size ceiling
  uint64_t bytes = 0;
  size_t files = 0;
  std::string message;
};

// Unpacks one level into `dest`; archives inside are written out as plain
// files. Entries escaping `dest`, links and devices are skipped.
UnpackResult unpack_archive(const fs::path& archive, const fs::path& dest, uint64_t size_ceiling);

}  // namespace recap::artifact
