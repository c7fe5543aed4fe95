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

#include "recap/app/commands.hpp"

#include <atomic>
#include <mutex>
#include <set>
#include <thread>

#include "recap/analysis/tables.hpp"
#include "recap/artifact/harness.hpp"
#include "recap/common/error.hpp"
#include "recap/common/files.hpp"
#include "recap/evaluator/http_provider.hpp"
#include "recap/evaluator/rate_limit.hpp"
#include "recap/evaluator/stub_provider.hpp"
#include "recap/ingest/corpus.hpp"

namespace recap::app {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

void write_tables(const fs::path& dir, const analysis::Tables& tables) {
  fs::create_directories(dir);
  for (const auto& [name, contents] : tables) write_file_atomic(dir / name, contents);
}

std::shared_ptr<evaluator::Provider> make_provider(const RunConfig& c, const fs::path& stub_override) {
  std::shared_ptr<evaluator::Provider> p;
  fs::path stub = stub_override;
  if (stub.empty() && c.provider.kind == "stub") {
    stub = c.provider.stub_path;
    if (stub.empty()) fail(ErrorCode::kConfig, "provider.kind is stub but provider.stub_path is not set");
  }
  if (!stub.empty()) {
    if (!fs::exists(stub)) fail(ErrorCode::kConfig, "stub source does not exist: " + stub.string());
    p = evaluator::StubProvider::from_path(stub);
  } else {
    evaluator::HttpProviderConfig h;
    h.endpoint = c.provider.endpoint;
    h.model = c.provider.model;
    h.api_key_env = c.provider.api_key_env;
    h.timeout_s = c.provider.timeout_s;
    h.transient_retries = c.provider.transient_retries;
    h.temperature = c.provider.temperature;
    p = std::make_shared<evaluator::HttpProvider>(h);
  }
  if (c.provider.rate_limit_per_s > 0) {
    p = std::make_shared<evaluator::RateLimitedProvider>(p, c.provider.rate_limit_per_s);
  }
  return p;
}

Timestamp stamp(bool deterministic) {
  return deterministic ? reproducible_now() : std::chrono::system_clock::now();
}

}  // namespace

const checklist::ChecklistSchema& schema_for(const fs::path& schema_path,
                                             std::optional<checklist::ChecklistSchema>& storage) {
  if (schema_path.empty()) return checklist::default_schema();
  storage.emplace(checklist::load_schema_file(schema_path));
  return *storage;
}

AssessSummary cmd_assess(const AssessRequest& request) {
  const RunConfig& c = request.config;
  auto log = [&](const std::string& msg) {
    if (request.log) request.log(msg);
  };
  if (c.manifest_path.empty()) fail(ErrorCode::kConfig, "config.manifest_path is not set");
  if (c.output_dir.empty()) fail(ErrorCode::kConfig, "config.output_dir is not set");
  std::optional<checklist::ChecklistSchema> schema_storage;
  const auto& schema = schema_for(c.schema_path, schema_storage);

  evaluator::AssessOptions options;
  options.retry = c.retry;
  options.context_limit_tokens = c.provider.context_limit_tokens;
  options.chars_per_token = c.provider.chars_per_token;
  options.context.max_response_tokens = c.provider.max_response_tokens;
  if (!c.preamble_path.empty()) options.context.preamble = read_file(c.preamble_path);
  options.probe.execute = c.execute;
  options.probe.check_links = c.check_links;

  auto provider = make_provider(c, request.stub);
  const bool deterministic = provider->deterministic();

  const fs::path out = c.output_dir;
  const fs::path assessments = out / kAssessmentsDir;
  fs::create_directories(assessments);

  std::unique_ptr<artifact::DefaultHarness> harness;
  if (c.artifacts) {
    auto sandbox = c.sandbox;
    if (sandbox.log_dir.empty()) sandbox.log_dir = out / "logs";
    fs::create_directories(sandbox.log_dir);
    harness = std::make_unique<artifact::DefaultHarness>(sandbox, c.max_parallel_executions);
  }

  const unsigned workers = std::clamp<unsigned>(request.workers.value_or(c.workers), 1, 256);
  ingest::CorpusOptions corpus_options;
  corpus_options.cache_dir = c.cache_dir;
  corpus_options.documents_root = c.documents_root;
  corpus_options.workers = workers;
  const ingest::Corpus corpus = ingest::load_corpus(read_file(c.manifest_path), corpus_options);
  log("ingested " + std::to_string(corpus.records.size()) + " papers, " + std::to_string(corpus.skipped.size()) +
      " skipped");

  RunState state = RunState::load(out);
  AssessSummary summary;
  std::mutex mu;
  const std::string started_at = format_iso8601(stamp(deterministic));

  for (const auto& s : corpus.skipped) {
    UnprocessedPaper u{std::string(to_string(s.reason)), s.message};
    state.mark_unprocessed(s.paper_id, u);
    summary.unprocessed.emplace_back(s.paper_id, u);
  }

  std::vector<const ingest::PaperRecord*> todo;
  for (const auto& rec : corpus.records) {
    if (!request.force && state.processed(rec.paper_id) && fs::exists(assessments / (rec.paper_id + ".json"))) {
      summary.skipped_existing.push_back(rec.paper_id);
    } else {
      todo.push_back(&rec);
    }
  }

  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (size_t i = next++; i < todo.size(); i = next++) {
      const auto& rec = *todo[i];
      try {
        auto result = evaluator::assess_paper(*provider, rec, schema, harness.get(), options);
        write_file_atomic(assessments / (rec.paper_id + ".json"), checklist::serialize(result.assessment, &schema));
        std::lock_guard lock(mu);
        state.mark_processed(rec.paper_id, {result.stats.provider_calls, result.stats.retries, result.stats.sentinels,
                                            format_iso8601(result.assessment.produced_at)});
        summary.processed.push_back(rec.paper_id);
        summary.sentinels += result.stats.sentinels;
        summary.provider_calls += result.stats.provider_calls;
        summary.retries += result.stats.retries;
        state.updated_at = format_iso8601(stamp(deterministic));
        state.save(out);
        log("assessed " + rec.paper_id + " (" + std::to_string(result.stats.provider_calls) + " calls, " +
            std::to_string(result.stats.sentinels) + " unparseable)");
      } catch (const std::exception& e) {
        const auto* err = dynamic_cast<const Error*>(&e);
        UnprocessedPaper u{err ? std::string(to_string(err->code())) : "Internal", e.what()};
        std::lock_guard lock(mu);
        state.mark_unprocessed(rec.paper_id, u);
        summary.unprocessed.emplace_back(rec.paper_id, u);
        state.updated_at = format_iso8601(stamp(deterministic));
        state.save(out);
        log("unprocessed " + rec.paper_id + ": " + u.reason + ": " + u.message);
      }
    }
  };
  std::vector<std::thread> threads;
  for (unsigned t = 1; t < workers && t < todo.size(); ++t) threads.emplace_back(worker);
  worker();
  for (auto& t : threads) t.join();

  std::sort(summary.processed.begin(), summary.processed.end());
  std::sort(summary.unprocessed.begin(), summary.unprocessed.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  state.updated_at = format_iso8601(stamp(deterministic));
  state.save(out);

  ordered_json unprocessed = ordered_json::array();
  for (const auto& [id, u] : summary.unprocessed) {
    unprocessed.push_back({{"paper_id", id}, {"reason", u.reason}, {"message", u.message}});
  }
  ordered_json sentinels = ordered_json::object();
  for (const auto& id : summary.processed) sentinels[id] = state.processed_papers().at(id).sentinels;
  const ordered_json report{{"started_at", started_at},
                            {"finished_at", format_iso8601(stamp(deterministic))},
                            {"provider", provider->describe()},
                            {"schema_version", schema.version()},
                            {"force", request.force},
                            {"processed", summary.processed},
                            {"skipped_existing", summary.skipped_existing},
                            {"unprocessed", unprocessed},
                            {"provider_calls", summary.provider_calls},
                            {"retries", summary.retries},
                            {"sentinels_total", summary.sentinels},
                            {"sentinels", sentinels}};
  write_file_atomic(out / kRunReportFile, report.dump(2) + "\n");
  return summary;
}

analysis::AgreementReport cmd_compare(const fs::path& human_dir, const fs::path& auto_dir, const fs::path& schema_path,
                                      const fs::path& out_dir) {
  std::optional<checklist::ChecklistSchema> storage;
  const auto& schema = schema_for(schema_path, storage);
  const auto human = checklist::load_assessment_dir(human_dir);
  const auto automated = checklist::load_assessment_dir(auto_dir);
  for (const auto* set : {&human, &automated}) {
    for (const auto& a : *set) {
      const auto v = checklist::validate_assessment(schema, a);
      for (const auto& issue : v.issues) {
        if (issue.kind == checklist::ValidationIssue::Kind::kMissingItem) continue;
        fail(ErrorCode::kMalformedAssessment, a.paper_id + ": " + issue.item_id + ": " + issue.detail);
      }
    }
  }
  std::set<std::string> ids;
  for (const auto& a : human) ids.insert(a.paper_id);
  const bool any = std::any_of(automated.begin(), automated.end(), [&](const auto& a) { return ids.count(a.paper_id); });
  if (!any) {
    fail(ErrorCode::kNoMatchingPapers, "no paper id occurs in both " + human_dir.string() + " and " +
                                           auto_dir.string());
  }
  auto report = analysis::agreement_report(human, automated, schema);
  if (!out_dir.empty()) write_tables(out_dir, analysis::agreement_tables(report));
  return report;
}

analysis::CorpusAnalytics cmd_report(const ReportRequest& r) {
  std::optional<checklist::ChecklistSchema> storage;
  const auto& schema = schema_for(r.schema_path, storage);
  const auto assessments = checklist::load_assessment_dir(r.assess_dir);
  if (assessments.empty()) fail(ErrorCode::kNoMatchingPapers, "no assessments in " + r.assess_dir.string());
  for (const auto& a : assessments) {
    const auto v = checklist::validate_assessment(schema, a);
    for (const auto& issue : v.issues) {
      if (issue.kind == checklist::ValidationIssue::Kind::kMissingItem) continue;
      fail(ErrorCode::kMalformedAssessment, a.paper_id + ": " + issue.item_id + ": " + issue.detail);
    }
  }
  const auto records = ingest::manifest_records(read_file(r.manifest), r.cache_dir);
  auto analytics = analysis::corpus_report(assessments, records, schema, r.alpha);
  if (!r.out_dir.empty()) write_tables(r.out_dir, analysis::corpus_tables(analytics));
  return analytics;
}

ordered_json cmd_probe_artifact(const std::string& url, const artifact::SandboxConfig& sandbox, bool execute) {
  const bool local = url.rfind("file://", 0) == 0;
  const auto normalized = local ? std::optional<std::string>(url) : ingest::normalize_url(url);
  if (!normalized) fail(ErrorCode::kInvalidArgument, "not a URL: " + url);
  ingest::LinkRef link;
  link.url = *normalized;
  link.raw = url;
  link.kind = ingest::classify_url(link.url);
  if (link.kind == ingest::LinkKind::kOther) link.kind = ingest::LinkKind::kArchive;
  artifact::DefaultHarness harness(sandbox);
  artifact::ProbeOptions options;
  options.execute = execute;
  const auto findings = artifact::probe_artifacts(harness, {link}, false, options);
  ordered_json j = ordered_json::parse(artifact::to_json(findings).dump());
  j["context"] = findings.context();
  return j;
}

}  // namespace recap::app
