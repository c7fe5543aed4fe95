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

#include "recap/artifact/config.hpp"
#include "recap/artifact/snapshot.hpp"

namespace recap::artifact {

enum class FetchMethod { kGit, kZenodo, kDownload, kLocal };

struct FetchPlan {
  FetchMethod method = FetchMethod::kDownload;
  std::string source;     // clone URL, download URL, record id or local path
};

// Chooses how to fetch `url`: hosted repositories (trimmed to the repository
// root), *.git and git:// URLs are cloned; Zenodo records go through the
// records API; file:// sources are cloned when they are git repositories and
// copied otherwise; anything else is downloaded.
FetchPlan plan_fetch(std::string_view url);

// Creates a fresh sandbox instance directory below config.root.
fs::path create_instance(const SandboxConfig& config);

// Never throws for remote failures; those become fetch_status values.
RepositorySnapshot fetch_artifact(const std::string& url, const SandboxConfig& config);

}  // namespace recap::artifact
