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

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

namespace recap {

namespace fs = std::filesystem;

std::string read_file(const fs::path& path);

// Writes through a sibling temp file and rename, so readers never see a
// partially written file.
void write_file_atomic(const fs::path& path, std::string_view contents);

using Timestamp = std::chrono::system_clock::time_point;

std::string format_iso8601(Timestamp t);
Timestamp parse_iso8601(std::string_view text);

// SOURCE_DATE_EPOCH if set, else the Unix epoch. Used wherever outputs must be
// byte-identical across runs.
Timestamp reproducible_now();

}  // namespace recap
