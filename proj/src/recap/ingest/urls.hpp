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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace recap::ingest {

enum class LinkKind { kRepository, kArchive, kDataset, kOther };

std::string_view to_string(LinkKind kind);
std::optional<LinkKind> parse_link_kind(std::string_view s);

struct LinkRef {
  std::string url;           // normalised absolute URL
  LinkKind kind = LinkKind::kOther;
  size_t source_offset = 0;  // code-point index of `raw` in the text
  std::string raw;           // matched text before normalisation
};

// Deduplicated links in order of first appearance.
std::vector<LinkRef> extract_urls(std::string_view text);

// Lowercases scheme and host, repairs broken schemes, promotes scheme-less
// forms to https, drops fragments, default ports and trailing slashes.
// nullopt when no usable host remains.
std::optional<std::string> normalize_url(std::string_view raw);

LinkKind classify_url(std::string_view normalized_url);

// Host of a normalised URL (lowercase, no port).
std::string url_host(std::string_view normalized_url);

// True when `host` equals `domain` or is a subdomain of it.
bool host_matches(std::string_view host, std::string_view domain);

}  // namespace recap::ingest
