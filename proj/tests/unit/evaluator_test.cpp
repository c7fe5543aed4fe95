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

#include <atomic>
#include <chrono>
#include <cstdlib>

#include "fixture_server.hpp"
#include "recap/common/error.hpp"
#include "recap/evaluator/context.hpp"
#include "recap/evaluator/evaluate.hpp"
#include "recap/evaluator/http_provider.hpp"
#include "recap/evaluator/rate_limit.hpp"
#include "recap/evaluator/response.hpp"
#include "recap/evaluator/stub_provider.hpp"
#include "test_support.hpp"

namespace recap::evaluator {
namespace {

using checklist::ChecklistItem;
using checklist::ChecklistSchema;
using checklist::FieldKind;
using checklist::ValueDomain;
using nlohmann::json;

ChecklistItem make_item(std::string id, FieldKind kind, ValueDomain domain = ValueDomain::ternary()) {
  ChecklistItem item;
  item.id = std::move(id);
  item.dimension = "Artifacts";
  item.title = item.id + " title";
  item.criteria_text = "Criteria for " + item.id + ".";
  item.domain = std::move(domain);
  item.field_kind = kind;
  return item;
}

ingest::PaperRecord make_paper(std::string id, std::string text) {
  ingest::PaperRecord p;
  p.paper_id = std::move(id);
  p.year = 2024;
  p.text = std::move(text);
  return p;
}

// Provider returning a fixed sequence of responses.
class SequenceProvider : public Provider {
 public:
  explicit SequenceProvider(std::vector<std::string> responses) : responses_(std::move(responses)) {}
  std::string complete(const ProviderRequest& req) override {
    last = req;
    const size_t i = std::min(calls++, responses_.size() - 1);
    return responses_[i];
  }
  nlohmann::ordered_json describe() const override { return {{"provider", "sequence"}}; }
  bool deterministic() const override { return true; }

  size_t calls = 0;
  ProviderRequest last;

 private:
  std::vector<std::string> responses_;
};

class FakeHarness : public artifact::Harness {
 public:
  const artifact::SandboxConfig& config() const override { return config_; }
  artifact::AccessibilityResult check_link(const std::string&) override {
    artifact::AccessibilityResult r;
    r.accessible = true;
    r.status_class = "ok";
    return r;
  }
  artifact::RepositorySnapshot fetch(const std::string& url) override {
    ++fetches;
    artifact::RepositorySnapshot s;
    s.origin_url = url;
    s.fetch_status = artifact::FetchStatus::kOk;
    s.files = files;
    return s;
  }
  artifact::ExecutionResult execute(const artifact::RepositorySnapshot&) override {
    ++executions;
    return execution;
  }

  artifact::SandboxConfig config_;
  std::vector<artifact::FileEntry> files;
  artifact::ExecutionResult execution;
  int fetches = 0;
  int executions = 0;
};

TEST(ResponseParse, DirectJson) {
  const auto item = make_item("x", FieldKind::kStandard);
  const auto a = parse_field_response(item, R"({"answer":"Y","disambiguation":"stated in the setup"})");
  EXPECT_EQ(a.item_id, "x");
  EXPECT_EQ(a.value, "Y");
  EXPECT_EQ(a.disambiguation, "stated in the setup");
}

TEST(ResponseParse, OutOfDomain) {
  const auto item = make_item("x", FieldKind::kStandard);
  try {
    parse_field_response(item, R"({"answer":"Perhaps","disambiguation":""})");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kOutOfDomainValue);
  }
}

TEST(ResponseParse, FencedEqualsUnfenced) {
  const auto item = make_item("x", FieldKind::kStandard);
  const std::string body = R"({"answer": "NA", "disambiguation": "no {tuning} step"})";
  const auto plain = parse_field_response(item, body);
  const auto fenced = parse_field_response(item, "Here is my answer:\n```json\n" + body + "\n```\nThanks.");
  EXPECT_EQ(plain, fenced);
  EXPECT_EQ(fenced.value, "NA");
  EXPECT_EQ(fenced.disambiguation, "no {tuning} step");
}

TEST(ResponseParse, CaseAndCategorical) {
  const auto t = make_item("t", FieldKind::kStandard);
  EXPECT_EQ(parse_field_response(t, R"({"answer":" y "})").value, "Y");
  const auto c = make_item("c", FieldKind::kStandard, ValueDomain::categorical({"Academia", "Industry", "Mixed"}));
  EXPECT_EQ(parse_field_response(c, R"({"answer":"industry","disambiguation":"d"})").value, "Industry");
}

TEST(ResponseParse, Malformed) {
  const auto item = make_item("x", FieldKind::kStandard);
  for (const char* raw : {"", "Y", "{not json}", R"({"value":"Y"})", R"({"answer":1})", "{\"answer\":\"Y\""}) {
    try {
      parse_field_response(item, raw);
      ADD_FAILURE() << raw;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kMalformedResponse) << raw;
    }
  }
}

TEST(ResponseParse, SkipsInvalidObjectBeforeValidOne) {
  const auto item = make_item("x", FieldKind::kStandard);
  EXPECT_EQ(parse_field_response(item, R"(see {this} then {"answer":"N"})").value, "N");
}

TEST(Context, StandardIsPaperTextOnly) {
  const auto item = make_item("s", FieldKind::kStandard);
  const auto paper = make_paper("p1", "Full text of the paper.\nSecond line.");
  const auto req = build_field_context(paper, item, {});
  EXPECT_EQ(req.user_content, paper.text);
  EXPECT_NE(req.system_prompt.find("Criteria for s."), std::string::npos);
  EXPECT_EQ(req.paper_id, "p1");
  EXPECT_EQ(req.item_id, "s");
}

TEST(Context, SchemaEnumeratesDomain) {
  const auto t = build_field_context(make_paper("p", "x"), make_item("t", FieldKind::kStandard), {});
  EXPECT_EQ(t.response_schema["properties"]["answer"]["enum"], json({"Y", "N", "NA"}));
  EXPECT_EQ(t.response_schema["required"], json({"answer", "disambiguation"}));
  const auto c = build_field_context(make_paper("p", "x"),
                                     make_item("c", FieldKind::kStandard, ValueDomain::categorical({"A", "B"})), {});
  EXPECT_EQ(c.response_schema["properties"]["answer"]["enum"], json({"A", "B"}));
  EXPECT_EQ(c.response_schema["properties"].size(), 2u);
}

TEST(Context, BestPaperAppendsRecord) {
  auto paper = make_paper("p1", "text");
  paper.flags.best_paper_nominated = true;
  FieldExtras extras;
  extras.best_paper_record = best_paper_record(paper);
  const auto req = build_field_context(paper, make_item("b", FieldKind::kBestPaper), extras);
  EXPECT_EQ(req.user_content.rfind(paper.text, 0), 0u);
  EXPECT_NE(req.user_content.find(R"("nominated":true)"), std::string::npos);
  EXPECT_NE(req.user_content.find(R"("won":null)"), std::string::npos);
}

TEST(Context, ArtifactNeedsExtras) {
  try {
    build_field_context(make_paper("p", "x"), make_item("a", FieldKind::kArtifact), {});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kMissingExtras);
  }
  FieldExtras marker;
  marker.artifact_context = artifact::kNoArtifactMarker;
  const auto req = build_field_context(make_paper("p", "x"), make_item("a", FieldKind::kExecutable), marker);
  EXPECT_NE(req.user_content.find(artifact::kNoArtifactMarker), std::string::npos);
}

TEST(Context, EmptyPaperRejected) {
  EXPECT_THROW(build_field_context(make_paper("p", ""), make_item("s", FieldKind::kStandard), {}), Error);
}

TEST(Context, ThreeFileSnapshotInPathOrder) {
  FakeHarness h;
  const std::string long_text(6000, 'q');
  h.files = {{"src/z.py", 6000, true, long_text}, {"README.md", 7, true, "# Demo\n"}, {"data/a.csv", 4, true, "1,2\n"}};
  auto paper = make_paper("p1", "Paper body.");
  paper.links = {{"https://github.com/o/r", ingest::LinkKind::kRepository, 0, "github.com/o/r"}};
  const auto findings = artifact::probe_artifacts(h, paper.links, false, {.execute = false, .check_links = true});
  FieldExtras extras;
  extras.artifact_context = findings.context();
  const auto req = build_field_context(paper, make_item("a", FieldKind::kArtifact), extras);

  // Sorted paths, each text file cut to 1,000 tokens of 4 characters.
  const std::string expected_files = "--- README.md ---\n# Demo\n"
                                     "--- data/a.csv ---\n1,2\n"
                                     "--- src/z.py ---\n" + std::string(4000, 'q') + "\n";
  const std::string expected_bundle = "### Repository: https://github.com/o/r\n" + expected_files;
  EXPECT_EQ(req.user_content.rfind(paper.text, 0), 0u);
  ASSERT_GE(req.user_content.size(), expected_bundle.size());
  EXPECT_EQ(req.user_content.substr(req.user_content.size() - expected_bundle.size()), expected_bundle);
}

TEST(EvaluateField, FirstAttempt) {
  SequenceProvider p({R"({"answer":"Y","disambiguation":"ok"})"});
  const auto item = make_item("x", FieldKind::kStandard);
  const auto out = evaluate_field(p, build_field_context(make_paper("p", "t"), item, {}), item, {});
  EXPECT_EQ(out.attempts, 1u);
  EXPECT_EQ(out.answer.value, "Y");
}

TEST(EvaluateField, GarbageTwiceThenValid) {
  SequenceProvider p({"garbage", "{\"answer\":\"maybe\"}", R"({"answer":"N","disambiguation":"absent"})"});
  const auto item = make_item("x", FieldKind::kStandard);
  const auto out = evaluate_field(p, build_field_context(make_paper("p", "t"), item, {}), item, {3, {}});
  EXPECT_EQ(out.attempts, 3u);
  EXPECT_EQ(out.answer.value, "N");
  EXPECT_EQ(p.calls, 3u);
}

TEST(EvaluateField, ExhaustionGivesSentinel) {
  SequenceProvider p({"garbage"});
  const auto item = make_item("x", FieldKind::kStandard);
  const auto out = evaluate_field(p, build_field_context(make_paper("p", "t"), item, {}), item, {2, {}});
  EXPECT_EQ(out.attempts, 2u);
  EXPECT_TRUE(out.sentinel());
  EXPECT_EQ(out.answer.value, checklist::kUnparseable);
  EXPECT_EQ(out.raw_last_response, "garbage");
}

TEST(EvaluateField, ZeroAttemptsRejected) {
  SequenceProvider p({"x"});
  const auto item = make_item("x", FieldKind::kStandard);
  EXPECT_THROW(evaluate_field(p, build_field_context(make_paper("p", "t"), item, {}), item, {0, {}}), Error);
}

ChecklistSchema small_schema() {
  return ChecklistSchema("test/1", {"Artifacts"},
                         {make_item("standard_item", FieldKind::kStandard),
                          make_item("artifact_provided", FieldKind::kArtifact),
                          make_item("artifact_executable", FieldKind::kExecutable)});
}

TEST(AssessPaper, ScriptedStubEndToEnd) {
  StubProvider stub(json{{"p1", {{"standard_item", "Y"}, {"artifact_provided", "N"}, {"artifact_executable", "NA"}}}});
  const auto r = assess_paper(stub, make_paper("p1", "text"), small_schema(), nullptr);
  const auto& a = r.assessment;
  ASSERT_EQ(a.answers.size(), 3u);
  EXPECT_EQ(a.answer("standard_item")->value, "Y");
  EXPECT_EQ(a.answer("artifact_provided")->value, "N");
  EXPECT_EQ(a.answer("artifact_executable")->value, "NA");
  EXPECT_EQ(a.rater, checklist::Rater::kAutomated);
  EXPECT_EQ(r.stats.provider_calls, 3u);
  EXPECT_EQ(stub.calls(), 3u);
  EXPECT_EQ(r.stats.sentinels, 0u);
}

TEST(AssessPaper, NoLinksSeesMarker) {
  FakeHarness h;
  SequenceProvider p({R"({"answer":"N","disambiguation":"no artifact"})"});
  const auto schema = ChecklistSchema("test/1", {"Artifacts"}, {make_item("artifact_provided", FieldKind::kArtifact)});
  const auto r = assess_paper(p, make_paper("p1", "text without links"), schema, &h);
  EXPECT_EQ(r.assessment.answer("artifact_provided")->value, "N");
  EXPECT_NE(p.last.user_content.find(artifact::kNoArtifactMarker), std::string::npos);
  EXPECT_EQ(h.fetches, 0);
}

TEST(AssessPaper, ProbesOnceAndExecutionVerdictWins) {
  FakeHarness h;
  h.files = {{"main.py", 5, true, "pass\n"}};
  h.execution.verdict = 'Y';
  h.execution.reason = artifact::ExecutionReason::kExitOk;
  h.execution.entrypoint = "python3 'main.py'";
  auto paper = make_paper("p1", "text");
  paper.links = {{"https://github.com/o/r", ingest::LinkKind::kRepository, 0, "github.com/o/r"}};
  SequenceProvider p({R"({"answer":"N","disambiguation":"provider says no"})"});
  const auto r = assess_paper(p, paper, small_schema(), &h);
  EXPECT_EQ(h.fetches, 1);
  EXPECT_EQ(h.executions, 1);
  EXPECT_EQ(p.calls, 2u);
  EXPECT_EQ(r.stats.execution_answers, 1u);
  EXPECT_EQ(r.assessment.answer("artifact_executable")->value, "Y");
  EXPECT_NE(r.assessment.answer("artifact_executable")->disambiguation.find("main.py"), std::string::npos);
  EXPECT_EQ(r.assessment.answer("artifact_provided")->value, "N");
  EXPECT_EQ((*r.assessment.details)["artifacts"]["execution"]["verdict"], "Y");
}

TEST(AssessPaper, OverflowBeforeAnyCall) {
  FakeHarness h;
  h.files = {{"big.txt", 4000, true, std::string(4000, 'b')}};
  auto paper = make_paper("p1", std::string(2000, 'x'));
  paper.links = {{"https://github.com/o/r", ingest::LinkKind::kRepository, 0, ""}};
  SequenceProvider p({R"({"answer":"N"})"});
  AssessOptions opt;
  opt.context_limit_tokens = 2500;
  opt.probe.execute = false;
  try {
    assess_paper(p, paper, small_schema(), &h, opt);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kContextOverflow);
  }
  EXPECT_EQ(p.calls, 0u);
}

TEST(AssessPaper, DeterministicUnderStub) {
  auto schema = checklist::default_schema();
  std::mt19937_64 rng(7);
  const auto human = testing::random_assessment(schema, "p9", rng);
  json script = json::object();
  for (const auto& [id, ans] : human.answers) script["p9"][id] = ans.value;
  StubProvider s1(script), s2(script);
  const auto paper = make_paper("p9", "Some paper.");
  const auto a = assess_paper(s1, paper, schema, nullptr).assessment;
  const auto b = assess_paper(s2, paper, schema, nullptr).assessment;
  EXPECT_EQ(checklist::serialize(a, &schema), checklist::serialize(b, &schema));
  for (const auto& [id, ans] : human.answers) EXPECT_EQ(a.answer(id)->value, ans.value) << id;
  EXPECT_EQ(s1.calls(), schema.size());
}

TEST(StubProvider, ArraysAdvanceAndRepeat) {
  StubProvider s(json{{"p", {{"i", json::array({json{{"raw", "bad"}}, "Y"})}}}});
  ProviderRequest r;
  r.paper_id = "p";
  r.item_id = "i";
  EXPECT_EQ(s.complete(r), "bad");
  EXPECT_EQ(json::parse(s.complete(r))["answer"], "Y");
  EXPECT_EQ(json::parse(s.complete(r))["answer"], "Y");
  r.item_id = "other";
  EXPECT_EQ(s.complete(r), kUnscriptedResponse);
}

TEST(StubProvider, RejectsNonObject) {
  EXPECT_THROW(StubProvider(json::array()), Error);
  EXPECT_THROW(StubProvider(json{{"p", 3}}), Error);
}

TEST(RateLimit, SpacesCalls) {
  auto inner = std::make_shared<SequenceProvider>(std::vector<std::string>{"x"});
  RateLimitedProvider p(inner, 20.0);
  const auto start = std::chrono::steady_clock::now();
  for (int i = 0; i < 5; ++i) p.complete({});
  const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  EXPECT_GE(elapsed, 0.19);
  EXPECT_EQ(inner->calls, 5u);
  EXPECT_EQ(p.describe()["rate_ceiling_per_s"], 20.0);
}

class HttpProviderTest : public ::testing::Test {
 protected:
  void SetUp() override { setenv("RECAP_TEST_KEY", "sk-test", 1); }
  void TearDown() override {
    server.stop();
    unsetenv("RECAP_TEST_KEY");
  }
  HttpProviderConfig config() {
    HttpProviderConfig c;
    c.endpoint = server.url("/v1/");
    c.model = "test-model";
    c.api_key_env = "RECAP_TEST_KEY";
    c.timeout_s = 10;
    c.retry_wait = std::chrono::milliseconds(1);
    return c;
  }
  static ProviderRequest request() {
    ProviderRequest r;
    r.system_prompt = "sys";
    r.user_content = "paper";
    r.response_schema = {{"type", "object"}};
    return r;
  }
  testing::FixtureServer server;
};

TEST_F(HttpProviderTest, SendsSchemaAndReturnsContent) {
  json seen;
  std::string auth;
  server.server().Post("/v1/chat/completions", [&](const httplib::Request& req, httplib::Response& res) {
    seen = json::parse(req.body);
    auth = req.get_header_value("Authorization");
    res.set_content(R"({"choices":[{"message":{"content":"{\"answer\":\"Y\",\"disambiguation\":\"d\"}"}}]})",
                    "application/json");
  });
  server.start();
  HttpProvider p(config());
  EXPECT_EQ(json::parse(p.complete(request()))["answer"], "Y");
  EXPECT_EQ(auth, "Bearer sk-test");
  EXPECT_EQ(seen["model"], "test-model");
  EXPECT_EQ(seen["messages"][0]["content"], "sys");
  EXPECT_EQ(seen["messages"][1]["content"], "paper");
  EXPECT_EQ(seen["response_format"]["json_schema"]["schema"], json({{"type", "object"}}));
  EXPECT_FALSE(seen.contains("temperature"));
  EXPECT_EQ(p.describe()["sampling"], "provider defaults");
}

TEST_F(HttpProviderTest, RetriesTransientThenSucceeds) {
  std::atomic<int> hits{0};
  server.server().Post("/v1/chat/completions", [&](const httplib::Request&, httplib::Response& res) {
    if (hits++ < 2) {
      res.status = hits == 1 ? 429 : 503;
      return;
    }
    res.set_content(R"({"choices":[{"message":{"content":"ok"}}]})", "application/json");
  });
  server.start();
  HttpProvider p(config());
  EXPECT_EQ(p.complete(request()), "ok");
  EXPECT_EQ(hits.load(), 3);
}

TEST_F(HttpProviderTest, ErrorMapping) {
  server.server().Post("/v1/chat/completions", [&](const httplib::Request& req, httplib::Response& res) {
    const auto body = json::parse(req.body);
    if (body["messages"][1]["content"] == "huge") {
      res.status = 400;
      res.set_content(R"({"error":{"message":"too long","code":"context_length_exceeded"}})", "application/json");
    } else if (body["messages"][1]["content"] == "busy") {
      res.status = 500;
    } else {
      res.status = 401;
      res.set_content(R"({"error":{"message":"bad key"}})", "application/json");
    }
  });
  server.start();
  HttpProvider p(config());
  auto code_of = [&](const std::string& content) {
    auto r = request();
    r.user_content = content;
    try {
      p.complete(r);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::kInvalidArgument;
  };
  EXPECT_EQ(code_of("huge"), ErrorCode::kContextOverflow);
  EXPECT_EQ(code_of("busy"), ErrorCode::kProviderUnavailable);
  EXPECT_EQ(code_of("x"), ErrorCode::kProviderUnavailable);
}

TEST_F(HttpProviderTest, UnreachableAndMissingKey) {
  server.start();
  auto cfg = config();
  server.stop();
  HttpProvider p(cfg);
  try {
    p.complete(request());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kProviderUnavailable);
  }
  unsetenv("RECAP_TEST_KEY");
  EXPECT_THROW(HttpProvider{cfg}, Error);
}

}  // namespace
}  // namespace recap::evaluator
