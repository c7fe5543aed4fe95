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
#include <vector>

#include "recap/artifact/config.hpp"
#include "recap/artifact/snapshot.hpp"

namespace recap::artifact {

// Absolute http(s) URLs are used verbatim; other forms go through
// normalize_url. nullopt when neither works.
std::optional<std::string> request_url(std::string_view url);

// HEAD first, GET when the server rejects HEAD. Never throws.
AccessibilityResult check_link(const std::string& url, const SandboxConfig& config = {});

// Built-in archival allowlist plus `extra_hosts`.
bool is_persistent_host(std::string_view url, const std::vector<std::string>& extra_hosts = {});

std::vector<std::string> default_persistent_hosts();

}  // namespace recap::artifact
