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

#include <gtest/gtest.h>

#include <fstream>

#include "recap/app/commands.hpp"
#include "recap/app/run_config.hpp"
#include "recap/common/error.hpp"
#include "recap/common/files.hpp"
#include "test_support.hpp"

namespace recap::app {
namespace {

using nlohmann::json;
using testing::TempDir;

fs::path corpus_dir() { return testing::fixtures_dir() / "corpus"; }

fs::path write_config(const TempDir& dir, json overrides = json::object()) {
  json c = {{"manifest_path", (corpus_dir() / "manifest.csv").string()},
            {"cache_dir", corpus_dir().string()},
            {"output_dir", "out"},
            {"provider", {{"kind", "stub"}, {"stub_path", (corpus_dir() / "human").string()}}},
            {"retry", {{"max_attempts", 3}, {"backoff_ms", 0}}},
            {"artifacts", {{"sandbox_root", "sandbox"}, {"runtime", "namespace"}}}};
  c.merge_patch(overrides);
  const fs::path p = dir.path() / "config.json";
  write_file_atomic(p, c.dump(2));
  return p;
}

std::map<std::string, std::string> read_dir(const fs::path& dir) {
  std::map<std::string, std::string> out;
  for (const auto& e : fs::directory_iterator(dir)) out[e.path().filename().string()] = read_file(e.path());
  return out;
}

TEST(RunConfig, ResolvesRelativePathsAndDefaults) {
  const auto c = parse_run_config(R"({"manifest_path": "m.csv", "output_dir": "/abs/out"})", "/base");
  EXPECT_EQ(c.manifest_path, fs::path("/base/m.csv"));
  EXPECT_EQ(c.output_dir, fs::path("/abs/out"));
  EXPECT_DOUBLE_EQ(c.alpha, 0.05);
  EXPECT_EQ(c.retry.max_attempts, 3u);
  EXPECT_EQ(c.provider.chars_per_token, 4.0);
  EXPECT_EQ(c.sandbox.per_file_token_budget, 1000u);
}

TEST(RunConfig, Rejections) {
  for (const char* doc : {R"({"manifest": "x"})", R"({"alpha": 1.0})", R"({"alpha": 0})",
                          R"({"provider": {"api_key": "sk-1"}})", R"({"provider": {"kind": "other"}})",
                          R"({"workers": 0})", R"({"retry": {"max_attempts": 0}})", R"({"artifacts": {"runtime": "vm"}})",
                          R"({"artifacts": {"typo": 1}})", R"([1])", "not json"}) {
    try {
      parse_run_config(doc, "/");
      ADD_FAILURE() << doc;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kConfig) << doc;
    }
  }
}

TEST(Assess, EchoStubReproducesHumanAnnotations) {
  TempDir dir;
  AssessRequest req;
  req.config = load_run_config(write_config(dir));
  const auto s = cmd_assess(req);
  EXPECT_EQ(s.processed.size(), 3u);
  EXPECT_TRUE(s.unprocessed.empty());
  EXPECT_EQ(s.exit_code(), 0);
  const auto schema_size = checklist::default_schema().size();
  EXPECT_EQ(s.provider_calls, 3 * schema_size);

  const fs::path out = dir.path() / "out";
  const auto human = checklist::load_assessment_dir(corpus_dir() / "human");
  const auto automated = checklist::load_assessment_dir(out / kAssessmentsDir);
  ASSERT_EQ(automated.size(), 3u);
  for (size_t i = 0; i < 3; ++i) EXPECT_EQ(human[i].answers, automated[i].answers) << human[i].paper_id;

  const auto report = cmd_compare(corpus_dir() / "human", out / kAssessmentsDir, {}, out / "agreement");
  EXPECT_EQ(report.accuracy, 1.0);
  ASSERT_TRUE(report.kappa.kappa);
  EXPECT_EQ(*report.kappa.kappa, 1.0);
  EXPECT_TRUE(fs::exists(out / "agreement" / "confusion.csv"));

  const json run = json::parse(read_file(out / kRunReportFile));
  EXPECT_EQ(run["processed"].size(), 3u);
  EXPECT_EQ(run["unprocessed"].size(), 0u);
  EXPECT_EQ(run["sentinels_total"], 0);
}

TEST(Assess, RerunIsIdempotentAndForceRedoes) {
  TempDir dir;
  AssessRequest req;
  req.config = load_run_config(write_config(dir));
  cmd_assess(req);
  const fs::path assessments = dir.path() / "out" / kAssessmentsDir;
  const auto first = read_dir(assessments);
  const auto again = cmd_assess(req);
  EXPECT_EQ(again.provider_calls, 0u);
  EXPECT_EQ(again.skipped_existing.size(), 3u);
  EXPECT_TRUE(again.processed.empty());
  EXPECT_EQ(read_dir(assessments), first);

  req.force = true;
  const auto forced = cmd_assess(req);
  EXPECT_EQ(forced.processed.size(), 3u);
  EXPECT_EQ(read_dir(assessments), first);
}

TEST(Assess, ParallelWorkersGiveSameFiles) {
  TempDir a, b;
  AssessRequest ra, rb;
  ra.config = load_run_config(write_config(a));
  rb.config = load_run_config(write_config(b));
  rb.workers = 3;
  cmd_assess(ra);
  cmd_assess(rb);
  EXPECT_EQ(read_dir(a.path() / "out" / kAssessmentsDir), read_dir(b.path() / "out" / kAssessmentsDir));
}

TEST(Assess, OversizedPaperIsUnprocessed) {
  TempDir dir;
  AssessRequest req;
  req.config = load_run_config(write_config(
      dir, {{"manifest_path", (corpus_dir() / "manifest_with_oversized.csv").string()},
            {"provider", {{"context_limit_tokens", 8000}}}}));
  const auto s = cmd_assess(req);
  EXPECT_EQ(s.processed.size(), 3u);
  ASSERT_EQ(s.unprocessed.size(), 1u);
  EXPECT_EQ(s.unprocessed[0].first, "p99");
  EXPECT_EQ(s.unprocessed[0].second.reason, "ContextOverflow");
  EXPECT_EQ(s.exit_code(), 2);
  const auto state = RunState::load(dir.path() / "out");
  EXPECT_EQ(state.unprocessed_papers().count("p99"), 1u);
  EXPECT_EQ(state.processed_papers().size(), 3u);
  EXPECT_FALSE(fs::exists(dir.path() / "out" / kAssessmentsDir / "p99.json"));
}

TEST(Assess, ScriptedGarbageCountsSentinels) {
  TempDir dir;
  const fs::path script = dir.path() / "script.json";
  write_file_atomic(script, R"({"p01": {"pseudocode": ["junk", "junk", "junk"]}})");
  AssessRequest req;
  req.config = load_run_config(write_config(dir, {{"manifest_path", (dir.path() / "m.csv").string()},
                                                  {"documents_root", corpus_dir().string()}}));
  write_file_atomic(dir.path() / "m.csv", "paper_id,year,title,pdf_path\np01,2021,T,papers/p01.txt\n");
  req.stub = script;
  const auto s = cmd_assess(req);
  const size_t items = checklist::default_schema().size();
  // Every field is unscripted or junk, so every field exhausts its attempts.
  EXPECT_EQ(s.sentinels, items);
  EXPECT_EQ(s.provider_calls, 3 * items);
  EXPECT_EQ(s.retries, 2 * items);
  EXPECT_EQ(s.exit_code(), 0);
  const auto a = checklist::load_assessment_file(dir.path() / "out" / kAssessmentsDir / "p01.json");
  EXPECT_TRUE(a.answer("pseudocode")->is_sentinel());
}

TEST(Assess, MissingApiKeyIsProviderFailure) {
  TempDir dir;
  AssessRequest req;
  req.config = load_run_config(write_config(
      dir, {{"provider", {{"kind", "openai"}, {"model", "m"}, {"api_key_env", "RECAP_UNSET_TEST_KEY"}}}}));
  try {
    cmd_assess(req);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kProviderUnavailable);
  }
}

TEST(Compare, DisjointIdsNameBothDirectories) {
  TempDir dir;
  const fs::path other = dir.path() / "other";
  fs::create_directories(other);
  write_file_atomic(other / "zz.json", R"({"paper_id": "zz", "answers": {"pseudocode": "Y"}})");
  try {
    cmd_compare(corpus_dir() / "human", other, {}, {});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNoMatchingPapers);
    EXPECT_NE(std::string(e.what()).find((corpus_dir() / "human").string()), std::string::npos);
    EXPECT_NE(std::string(e.what()).find(other.string()), std::string::npos);
  }
}

TEST(Report, HumanCorpusTables) {
  TempDir dir;
  ReportRequest r;
  r.assess_dir = corpus_dir() / "human";
  r.manifest = corpus_dir() / "manifest.csv";
  r.cache_dir = corpus_dir();
  r.out_dir = dir.path() / "report";
  const auto a = cmd_report(r);
  EXPECT_EQ(a.papers.size(), 3u);
  EXPECT_EQ(a.yearly.size(), 2u);
  for (const char* f : {"yearly_completeness.csv", "item_reporting_rates.csv", "availability.csv",
                        "modality_overall.csv", "modality_by_year.csv", "tests.csv", "corpus_summary.json"}) {
    EXPECT_TRUE(fs::exists(r.out_dir / f)) << f;
  }
  const json summary = json::parse(read_file(r.out_dir / "corpus_summary.json"));
  EXPECT_EQ(summary["alpha"], 0.05);
  // Deterministic output.
  const auto first = read_dir(r.out_dir);
  cmd_report(r);
  EXPECT_EQ(read_dir(r.out_dir), first);
}

}  // namespace
}  // namespace recap::app
