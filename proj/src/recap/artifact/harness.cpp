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

#include "recap/artifact/harness.hpp"

#include "recap/artifact/execution.hpp"
#include "recap/artifact/fetch.hpp"
#include "recap/artifact/links.hpp"
#include "recap/artifact/modality.hpp"
#include "recap/common/files.hpp"

namespace recap::artifact {

using nlohmann::json;

DefaultHarness::DefaultHarness(SandboxConfig config, size_t max_parallel_executions)
    : config_(std::move(config)), runtime_(make_runtime(config_)), max_parallel_(std::max<size_t>(1, max_parallel_executions)) {}

AccessibilityResult DefaultHarness::check_link(const std::string& url) { return artifact::check_link(url, config_); }

RepositorySnapshot DefaultHarness::fetch(const std::string& url) { return fetch_artifact(url, config_); }

ExecutionResult DefaultHarness::execute(const RepositorySnapshot& snapshot) {
  std::unique_lock lock(mu_);
  cv_.wait(lock, [&] { return running_ < max_parallel_; });
  ++running_;
  lock.unlock();
  ExecutionResult r;
  try {
    r = attempt_execution(snapshot, config_.limit_s, config_, *runtime_);
  } catch (...) {
    lock.lock();
    --running_;
    cv_.notify_one();
    throw;
  }
  lock.lock();
  --running_;
  cv_.notify_one();
  return r;
}

bool ArtifactFindings::has_artifact() const { return !bundles.empty(); }

std::string ArtifactFindings::context() const {
  if (probes.empty()) return kNoArtifactMarker;
  std::string out = "### Links found in the paper\n";
  for (const auto& p : probes) {
    out += "- " + p.link.url + " (" + std::string(ingest::to_string(p.link.kind)) + ")";
    if (!p.access.status_class.empty()) {
      out += p.access.accessible ? "; reachable" : "; not reachable (" + p.access.status_class + ")";
    }
    out += p.persistent ? "; archival host" : "; non-archival host";
    if (p.snapshot) out += "; fetch " + std::string(to_string(p.snapshot->fetch_status));
    out += "\n";
  }
  if (bundles.empty()) return out + "\n" + kNoArtifactMarker;
  return out + "\n" + render_bundles(bundles);
}

ArtifactFindings probe_artifacts(Harness& harness, const std::vector<ingest::LinkRef>& links,
                                 bool has_supplementary_pdf, const ProbeOptions& options) {
  ArtifactFindings findings;
  const auto& cfg = harness.config();
  std::vector<const RepositorySnapshot*> fetched;
  for (const auto& link : links) {
    LinkProbe probe;
    probe.link = link;
    probe.persistent = is_persistent_host(link.url, cfg.persistent_hosts);
    if (options.check_links) probe.access = harness.check_link(link.url);
    if (link.kind != ingest::LinkKind::kOther) probe.snapshot = harness.fetch(link.url);
    findings.probes.push_back(std::move(probe));
  }
  for (const auto& p : findings.probes) {
    if (!p.snapshot) continue;
    fetched.push_back(&*p.snapshot);
    findings.partial = findings.partial || p.snapshot->partial;
    if (p.snapshot->fetch_status == FetchStatus::kOk) {
      findings.bundles.push_back(
          truncate_for_context(*p.snapshot, cfg.per_file_token_budget, TokenEstimator(cfg.chars_per_token)));
    }
  }
  findings.modality = classify_modality(fetched, has_supplementary_pdf);
  if (options.execute) {
    const RepositorySnapshot* target = nullptr;
    for (const RepositorySnapshot* s : fetched) {
      if (s->fetch_status != FetchStatus::kOk) continue;
      if (!target) target = s;
      if (find_entrypoint(*s)) {
        target = s;
        break;
      }
    }
    if (target) findings.execution = harness.execute(*target);
  }
  return findings;
}

json to_json(const AccessibilityResult& r) {
  return {{"accessible", r.accessible},
          {"status_class", r.status_class},
          {"http_status", r.http_status},
          {"final_url", r.final_url},
          {"redirects", r.redirects},
          {"checked_at", format_iso8601(r.checked_at)}};
}

json to_json(const RepositorySnapshot& s, bool with_contents) {
  json files = json::array();
  for (const auto& f : s.files) {
    json e = {{"path", f.path}, {"size_bytes", f.size_bytes}, {"is_text", f.is_text}};
    if (with_contents) e["truncated_content"] = f.truncated_content;
    files.push_back(std::move(e));
  }
  json j = {{"origin_url", s.origin_url},
            {"fetch_status", to_string(s.fetch_status)},
            {"method", s.method},
            {"fetched_at", format_iso8601(s.fetched_at)},
            {"partial", s.partial},
            {"files", std::move(files)}};
  if (!s.message.empty()) j["message"] = s.message;
  return j;
}

json to_json(const ExecutionResult& r) {
  return {{"verdict", std::string(1, r.verdict)},
          {"reason", to_string(r.reason)},
          {"duration_s", r.duration_s},
          {"entrypoint", r.entrypoint},
          {"runtime", r.runtime},
          {"log_excerpt", r.log_excerpt}};
}

json to_json(const ArtifactFindings& f) {
  json probes = json::array();
  for (const auto& p : f.probes) {
    json j = {{"url", p.link.url}, {"kind", ingest::to_string(p.link.kind)}, {"persistent", p.persistent}};
    if (!p.access.status_class.empty()) j["access"] = to_json(p.access);
    if (p.snapshot) j["snapshot"] = to_json(*p.snapshot);
    probes.push_back(std::move(j));
  }
  json j = {{"links", std::move(probes)}, {"modality", to_string(f.modality)}, {"partial", f.partial}};
  size_t tokens = 0;
  for (const auto& b : f.bundles) tokens += b.total_tokens;
  j["bundle_tokens"] = tokens;
  if (f.execution) j["execution"] = to_json(*f.execution);
  return j;
}

}  // namespace recap::artifact
