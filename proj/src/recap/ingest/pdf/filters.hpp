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

#include "recap/ingest/pdf/object.hpp"

namespace recap::ingest::pdf {

std::string flate_decode(std::string_view in);
std::string ascii_hex_decode(std::string_view in);
std::string ascii85_decode(std::string_view in);
std::string lzw_decode(std::string_view in, bool early_change);
std::string run_length_decode(std::string_view in);
std::string apply_predictor(std::string in, const Object& parms);

// Applies one named filter. Image codecs pass data through unchanged.
std::string apply_filter(std::string_view name, std::string in, const Object& parms);

}  // namespace recap::ingest::pdf
