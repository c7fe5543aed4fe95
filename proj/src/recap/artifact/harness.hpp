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

#include <memory>
#include <condition_variable>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "recap/artifact/config.hpp"
#include "recap/artifact/inventory.hpp"
#include "recap/artifact/sandbox.hpp"
#include "recap/artifact/snapshot.hpp"
#include "recap/ingest/urls.hpp"

namespace recap::artifact {

// Seam between the evaluator and the network/sandbox; tests substitute fakes.
class Harness {
 public:
  virtual ~Harness() = default;
  virtual const SandboxConfig& config() const = 0;
  virtual AccessibilityResult check_link(const std::string& url) = 0;
  virtual RepositorySnapshot fetch(const std::string& url) = 0;
  virtual ExecutionResult execute(const RepositorySnapshot& snapshot) = 0;
};

class DefaultHarness : public Harness {
 public:
  explicit DefaultHarness(SandboxConfig config, size_t max_parallel_executions = 1);

  const SandboxConfig& config() const override { return config_; }
  AccessibilityResult check_link(const std::string& url) override;
  RepositorySnapshot fetch(const std::string& url) override;
  ExecutionResult execute(const RepositorySnapshot& snapshot) override;

 private:
  SandboxConfig config_;
  std::unique_ptr<SandboxRuntime> runtime_;
  std::mutex mu_;
  std::condition_variable cv_;
  size_t running_ = 0;
  size_t max_parallel_;
};

struct LinkProbe {
  ingest::LinkRef link;
  AccessibilityResult access;
  bool persistent = false;
  std::optional<RepositorySnapshot> snapshot;  // fetched for repository/archive/dataset links
};

struct ArtifactFindings {
  std::vector<LinkProbe> probes;
  std::vector<ContextBundle> bundles;  // one per successful fetch, in link order
  Modality modality = Modality::kNone;
  std::optional<ExecutionResult> execution;  // set when execution was attempted
  bool partial = false;                      // some fetch hit the size ceiling

  bool has_artifact() const;
  // Link summary plus rendered bundles; the "no artifact" marker when
  // nothing was retrieved.
  std::string context() const;
};

inline constexpr const char* kNoArtifactMarker =
    "NO ARTIFACT: the paper links no code, data or archive that could be retrieved.";

struct ProbeOptions {
  bool execute = true;
  bool check_links = true;
};

// Probes every link, fetches artifact-kind links, builds bundles, classifies
// modality and attempts one execution on the first fetched snapshot with an
// entrypoint (or the first fetched snapshot when none has one).
ArtifactFindings probe_artifacts(Harness& harness, const std::vector<ingest::LinkRef>& links,
                                 bool has_supplementary_pdf, const ProbeOptions& options = {});

nlohmann::json to_json(const AccessibilityResult& r);
nlohmann::json to_json(const RepositorySnapshot& s, bool with_contents = false);
nlohmann::json to_json(const ExecutionResult& r);
nlohmann::json to_json(const ArtifactFindings& f);

}  // namespace recap::artifact
