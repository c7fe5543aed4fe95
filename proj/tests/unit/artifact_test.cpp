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
#include <unistd.h>

#include <fstream>
#include <json.hpp>
#include <map>

#include "fixture_server.hpp"
#include "recap/artifact/archive.hpp"
#include "recap/artifact/execution.hpp"
#include "recap/artifact/fetch.hpp"
#include "recap/artifact/harness.hpp"
#include "recap/artifact/inventory.hpp"
#include "recap/artifact/links.hpp"
#include "recap/artifact/modality.hpp"
#include "recap/artifact/sandbox.hpp"
#include "recap/artifact/tokens.hpp"
#include "recap/common/error.hpp"
#include "recap/common/files.hpp"
#include "recap/common/subprocess.hpp"
#include "test_support.hpp"

namespace recap::artifact {
namespace {

using nlohmann::json;
using testing::FixtureServer;
using testing::fixtures_dir;
using testing::TempDir;

void write(const fs::path& p, std::string_view content) {
  fs::create_directories(p.parent_path());
  std::ofstream(p, std::ios::binary) << content;
}

// Independent recount: code points are bytes that are not UTF-8 continuation
// bytes; tokens = ceil(min(code points, 4 * budget) / 4).
size_t recount_tokens(std::string_view s, size_t budget) {
  size_t cps = 0;
  for (char c : s) cps += (static_cast<unsigned char>(c) & 0xC0) != 0x80;
  cps = std::min(cps, budget * 4);
  return (cps + 3) / 4;
}

SandboxConfig config_in(const TempDir& dir) {
  SandboxConfig c;
  c.root = dir / "sandboxes";
  c.runtime = "namespace";
  return c;
}

RepositorySnapshot snapshot_of(const fs::path& dir, const SandboxConfig& c) {
  return fetch_artifact("file://" + dir.string(), c);
}

TEST(TokenEstimator, CountsCodePointsInFours) {
  TokenEstimator t;
  EXPECT_EQ(t.count(""), 0u);
  EXPECT_EQ(t.count("abcd"), 1u);
  EXPECT_EQ(t.count("abcde"), 2u);
  EXPECT_EQ(t.count("\xC3\xA9\xC3\xA9\xC3\xA9\xC3\xA9"), 1u);
  EXPECT_EQ(t.prefix_bytes("\xC3\xA9\xC3\xA9\xC3\xA9\xC3\xA9\xC3\xA9", 1), 8u);
  EXPECT_EQ(TokenEstimator(2.0).count("abcde"), 3u);
  EXPECT_THROW(TokenEstimator(0.0), Error);
}

TEST(Inventory, TextBinarySniffing) {
  EXPECT_TRUE(looks_like_text("def f():\n\treturn 1\n"));
  EXPECT_TRUE(looks_like_text(""));
  EXPECT_FALSE(looks_like_text(std::string("ab\0cd", 5)));
  EXPECT_FALSE(looks_like_text("\x89PNG\r\n\x1a\n"));
  EXPECT_FALSE(looks_like_text("\xff\xfe\x00"));
  // A multi-byte sequence cut by the sample boundary is still text.
  EXPECT_TRUE(looks_like_text("caf\xC3"));
}

TEST(Inventory, SortedSkipsGitAndSymlinks) {
  TempDir dir;
  write(dir / "repo/b.txt", "b");
  write(dir / "repo/a/z.py", "z");
  write(dir / "repo/.git/config", "x");
  write(dir / "repo/img.bin", std::string("\0\1\2", 3));
  fs::create_symlink("/etc/passwd", dir / "repo/passwd");
  const auto inv = build_inventory(dir / "repo", kDefaultSizeCeiling, TokenEstimator(), 1000);
  ASSERT_EQ(inv.files.size(), 3u);
  EXPECT_EQ(inv.files[0].path, "a/z.py");
  EXPECT_EQ(inv.files[1].path, "b.txt");
  EXPECT_EQ(inv.files[2].path, "img.bin");
  EXPECT_FALSE(inv.files[2].is_text);
  EXPECT_TRUE(inv.files[2].truncated_content.empty());
  EXPECT_EQ(inv.files[2].size_bytes, 3u);
  EXPECT_FALSE(inv.partial);
}

TEST(Truncation, FileOf1500TokensKeepsFirst1000) {
  TempDir dir;
  std::string content;
  for (int i = 0; content.size() < 6000; ++i) content += "tok" + std::to_string(i % 10) + " ";
  content.resize(6000);
  write(dir / "repo/big.py", content);
  const auto snap = snapshot_of(dir / "repo", config_in(dir));
  ASSERT_EQ(snap.fetch_status, FetchStatus::kOk);
  const auto bundle = truncate_for_context(snap);
  ASSERT_EQ(bundle.entries.size(), 1u);
  EXPECT_EQ(bundle.entries[0].content, content.substr(0, 4000));
  EXPECT_EQ(bundle.entries[0].tokens, 1000u);
  EXPECT_EQ(bundle.total_tokens, 1000u);
}

TEST(Truncation, EmptyRepositoryGivesEmptyBundle) {
  TempDir dir;
  fs::create_directories(dir / "repo");
  const auto snap = snapshot_of(dir / "repo", config_in(dir));
  ASSERT_EQ(snap.fetch_status, FetchStatus::kOk);
  const auto bundle = truncate_for_context(snap);
  EXPECT_TRUE(bundle.entries.empty());
  EXPECT_EQ(bundle.total_tokens, 0u);
}

TEST(Truncation, FiveFileTotalMatchesIndependentRecount) {
  TempDir dir;
  const std::map<std::string, std::string> files = {
      {"README.md", "# Title\n\nSome words here.\n"},
      {"src/a.py", std::string(4321, 'a')},
      {"src/b.py", "print('\xC3\xA9t\xC3\xA9')\n"},
      {"data/x.csv", "1,2,3\n4,5,6\n"},
      {"notes.txt", std::string(9000, 'n')},
  };
  size_t expected = 0;
  for (const auto& [path, content] : files) {
    write(dir / "repo" / path, content);
    expected += recount_tokens(content, 1000);
  }
  const auto snap = snapshot_of(dir / "repo", config_in(dir));
  const auto bundle = truncate_for_context(snap, 1000);
  ASSERT_EQ(bundle.entries.size(), 5u);
  EXPECT_EQ(bundle.total_tokens, expected);
  size_t sum = 0;
  for (const auto& e : bundle.entries) sum += e.tokens;
  EXPECT_EQ(sum, bundle.total_tokens);
}

TEST(Truncation, DeterministicRenderInPathOrder) {
  TempDir dir;
  write(dir / "repo/z.py", "z = 1\n");
  write(dir / "repo/a.py", "a = 1\n");
  write(dir / "repo/m.bin", std::string("\0\0\0\0", 4));
  const auto snap = snapshot_of(dir / "repo", config_in(dir));
  const std::string first = truncate_for_context(snap).render();
  EXPECT_EQ(first, truncate_for_context(snap).render());
  EXPECT_LT(first.find("--- a.py ---"), first.find("--- m.bin (binary, 4 bytes) ---"));
  EXPECT_LT(first.find("--- m.bin"), first.find("--- z.py ---"));
  RepositorySnapshot reversed = snap;
  std::reverse(reversed.files.begin(), reversed.files.end());
  EXPECT_EQ(truncate_for_context(reversed).render(), first);
}

TEST(Archive, NestedArchiveUnpackedOneLevel) {
  TempDir dir;
  const auto r = unpack_archive(fixtures_dir() / "archives/nested.tar.gz", dir / "out", kDefaultSizeCeiling);
  ASSERT_TRUE(r.ok) << r.message;
  EXPECT_TRUE(fs::exists(dir / "out/project/main.py"));
  EXPECT_TRUE(fs::is_regular_file(dir / "out/project/data/inner.zip"));
  EXPECT_FALSE(fs::exists(dir / "out/project/data/inner.txt"));
  EXPECT_FALSE(fs::exists(dir / "out/project/link"));
  EXPECT_EQ(r.files, 3u);
}

TEST(Archive, ZipStoredAndDeflated) {
  TempDir dir;
  const auto r = unpack_archive(fixtures_dir() / "archives/mixed.zip", dir / "out", kDefaultSizeCeiling);
  ASSERT_TRUE(r.ok) << r.message;
  EXPECT_EQ(read_file(dir / "out/src/stored.py"), "x = 1\n");
  std::string csv = "a,b\n";
  for (int i = 0; i < 500; ++i) csv += "1,2\n";
  EXPECT_EQ(read_file(dir / "out/results/table.csv"), csv);
}

TEST(Archive, EscapingPathsSkippedLongNamesKept) {
  TempDir dir;
  const auto r = unpack_archive(fixtures_dir() / "archives/traversal.tar", dir / "out", kDefaultSizeCeiling);
  ASSERT_TRUE(r.ok) << r.message;
  EXPECT_FALSE(fs::exists(dir / "escape.txt"));
  EXPECT_FALSE(fs::exists(dir / "out/abs.txt"));
  EXPECT_TRUE(fs::exists(dir / "out/ok/plain.txt"));
  EXPECT_EQ(read_file(dir / "out/ok" / std::string(120, 'd') / "long_name.txt"), "long\n");
}

TEST(Archive, PlainGzipAndCeiling) {
  TempDir dir;
  const auto r = unpack_archive(fixtures_dir() / "archives/values.csv.gz", dir / "out", kDefaultSizeCeiling);
  ASSERT_TRUE(r.ok);
  EXPECT_EQ(read_file(dir / "out/values.csv"), "col1,col2\n1,2\n");
  const auto capped = unpack_archive(fixtures_dir() / "archives/mixed.zip", dir / "capped", 100);
  EXPECT_TRUE(capped.ok);
  EXPECT_TRUE(capped.partial);
  EXPECT_FALSE(fs::exists(dir / "capped/results/table.csv"));
  EXPECT_EQ(sniff_archive(fixtures_dir() / "pdf/hello.pdf"), ArchiveKind::kNone);
}

class HttpFixture : public ::testing::Test {
 protected:
  void SetUp() override {
    auto& s = server_.server();
    s.Get("/ok", [](const httplib::Request&, httplib::Response& res) { res.set_content("fine", "text/plain"); });
    s.Get("/hop1", [](const httplib::Request&, httplib::Response& res) { res.set_redirect("/hop2", 301); });
    s.Get("/hop2", [](const httplib::Request&, httplib::Response& res) { res.set_redirect("/ok", 301); });
    s.Get("/loop", [](const httplib::Request&, httplib::Response& res) { res.set_redirect("/loop", 302); });
    s.Get("/private", [](const httplib::Request&, httplib::Response& res) { res.status = 401; });
    s.Get("/broken", [](const httplib::Request&, httplib::Response& res) { res.status = 503; });
    s.Get("/teapot", [](const httplib::Request&, httplib::Response& res) { res.status = 418; });
    s.Get("/nohead", [](const httplib::Request& req, httplib::Response& res) {
      if (req.method == "HEAD") {
        res.status = 405;
      } else {
        res.set_content("body", "text/plain");
      }
    });
    s.Get("/files/nested.tar.gz", [](const httplib::Request&, httplib::Response& res) {
      res.set_content(read_file(fixtures_dir() / "archives/nested.tar.gz"), "application/gzip");
    });
    s.Get("/files/big.bin", [](const httplib::Request&, httplib::Response& res) {
      res.set_content(std::string(5000, 'x'), "application/octet-stream");
    });
    s.Get("/dl", [](const httplib::Request&, httplib::Response& res) {
      res.set_header("Content-Disposition", "attachment; filename=\"results.csv\"");
      res.set_content("a,b\n1,2\n", "text/csv");
    });
    s.Get("/api/records/4242", [this](const httplib::Request&, httplib::Response& res) {
      const json doc = {{"id", 4242},
                        {"files",
                         {{{"key", "table.csv"}, {"links", {{"self", server_.url("/api/records/4242/files/table.csv/content")}}}},
                          {{"key", "code.zip"}, {"links", {{"self", server_.url("/api/records/4242/files/code.zip/content")}}}}}}};
      res.set_content(doc.dump(), "application/json");
    });
    s.Get("/api/records/4242/files/table.csv/content", [](const httplib::Request&, httplib::Response& res) {
      res.set_content("x,y\n1,2\n", "text/csv");
    });
    s.Get("/api/records/4242/files/code.zip/content", [](const httplib::Request&, httplib::Response& res) {
      res.set_content(read_file(fixtures_dir() / "archives/mixed.zip"), "application/zip");
    });
    server_.start();
    config_ = config_in(dir_);
    config_.link_timeout_s = 5;
    config_.fetch_timeout_s = 10;
    config_.zenodo_api = server_.url("/api");
  }

  FixtureServer server_;
  TempDir dir_;
  SandboxConfig config_;
};

TEST_F(HttpFixture, LinkReturning200IsAccessible) {
  const auto r = check_link(server_.url("/ok"), config_);
  EXPECT_TRUE(r.accessible);
  EXPECT_EQ(r.status_class, "ok");
  EXPECT_EQ(r.http_status, 200);
  EXPECT_GT(r.checked_at.time_since_epoch().count(), 0);
}

TEST_F(HttpFixture, RedirectChainOfTwoIsFollowed) {
  const auto r = check_link(server_.url("/hop1"), config_);
  EXPECT_TRUE(r.accessible);
  EXPECT_EQ(r.redirects, 2);
  EXPECT_EQ(r.final_url, server_.url("/ok"));
}

TEST_F(HttpFixture, StatusClasses) {
  EXPECT_EQ(check_link(server_.url("/missing"), config_).status_class, "not_found");
  EXPECT_EQ(check_link(server_.url("/private"), config_).status_class, "auth_required");
  EXPECT_EQ(check_link(server_.url("/broken"), config_).status_class, "server_error");
  EXPECT_EQ(check_link(server_.url("/teapot"), config_).status_class, "client_error");
  EXPECT_EQ(check_link(server_.url("/loop"), config_).status_class, "redirect_limit");
  const auto nohead = check_link(server_.url("/nohead"), config_);
  EXPECT_TRUE(nohead.accessible);
  EXPECT_EQ(check_link("not a url", config_).status_class, "invalid_url");
}

TEST_F(HttpFixture, ClosedPortIsConnectFailure) {
  FixtureServer other;
  other.start();
  const std::string url = other.url("/ok");
  other.stop();
  const auto r = check_link(url, config_);
  EXPECT_FALSE(r.accessible);
  EXPECT_EQ(r.status_class, "connect_failed");
}

TEST(LinkCheck, UnresolvableHostIsDnsFailure) {
  SandboxConfig c;
  c.link_timeout_s = 10;
  const auto r = check_link("https://no-such-host.invalid/repo", c);
  EXPECT_FALSE(r.accessible);
  EXPECT_EQ(r.status_class, "dns_failure");
}

TEST_F(HttpFixture, DownloadedArchiveUnpackedIntoSnapshot) {
  const auto snap = fetch_artifact(server_.url("/files/nested.tar.gz"), config_);
  ASSERT_EQ(snap.fetch_status, FetchStatus::kOk) << snap.message;
  EXPECT_EQ(snap.method, "download");
  ASSERT_EQ(snap.files.size(), 3u);
  EXPECT_EQ(snap.files[0].path, "project/README.md");
  EXPECT_EQ(snap.files[1].path, "project/data/inner.zip");
  EXPECT_FALSE(snap.files[1].is_text);
  EXPECT_EQ(snap.files[2].path, "project/main.py");
  EXPECT_FALSE(fs::exists(snap.local_dir.parent_path() / "download"));
}

TEST_F(HttpFixture, PlainDownloadUsesContentDispositionName) {
  const auto snap = fetch_artifact(server_.url("/dl"), config_);
  ASSERT_EQ(snap.fetch_status, FetchStatus::kOk);
  ASSERT_EQ(snap.files.size(), 1u);
  EXPECT_EQ(snap.files[0].path, "results.csv");
  EXPECT_EQ(snap.files[0].truncated_content, "a,b\n1,2\n");
}

TEST_F(HttpFixture, DownloadFailuresBecomeStatuses) {
  auto missing = fetch_artifact(server_.url("/missing.zip"), config_);
  EXPECT_EQ(missing.fetch_status, FetchStatus::kNotFound);
  EXPECT_TRUE(missing.files.empty());
  EXPECT_EQ(fetch_artifact(server_.url("/private"), config_).fetch_status, FetchStatus::kAuthRequired);
  EXPECT_EQ(fetch_artifact(server_.url("/broken"), config_).fetch_status, FetchStatus::kUnreachable);
}

TEST_F(HttpFixture, DownloadOverCeilingIsPartial) {
  config_.size_ceiling_bytes = 4096;
  const auto snap = fetch_artifact(server_.url("/files/big.bin"), config_);
  EXPECT_EQ(snap.fetch_status, FetchStatus::kOk);
  EXPECT_TRUE(snap.partial);
}

TEST_F(HttpFixture, ZenodoRecordResolvedThroughApi) {
  EXPECT_EQ(plan_fetch("https://zenodo.org/records/4242").method, FetchMethod::kZenodo);
  EXPECT_EQ(plan_fetch("https://doi.org/10.5281/zenodo.4242").source, "4242");
  const auto snap = fetch_artifact("https://zenodo.org/record/4242", config_);
  ASSERT_EQ(snap.fetch_status, FetchStatus::kOk) << snap.message;
  EXPECT_EQ(snap.method, "zenodo");
  std::vector<std::string> paths;
  for (const auto& f : snap.files) paths.push_back(f.path);
  EXPECT_EQ(paths, (std::vector<std::string>{"results/table.csv", "src/stored.py", "table.csv"}));
}

TEST(FetchPlan, HostedRepositoriesTrimmedToRoot) {
  EXPECT_EQ(plan_fetch("https://github.com/org/repo/tree/main/src").source, "https://github.com/org/repo");
  EXPECT_EQ(plan_fetch("https://github.com/org/repo/tree/main/src").method, FetchMethod::kGit);
  EXPECT_EQ(plan_fetch("https://gitlab.com/group/sub/proj/-/tree/dev").source, "https://gitlab.com/group/sub/proj");
  EXPECT_EQ(plan_fetch("https://github.com/org/repo/releases/download/v1/x.zip").method, FetchMethod::kDownload);
  EXPECT_EQ(plan_fetch("https://example.org/code.git").method, FetchMethod::kGit);
  EXPECT_EQ(plan_fetch("https://example.org/data.zip").method, FetchMethod::kDownload);
  EXPECT_EQ(plan_fetch("https://zenodo.org/records/7/files/a.csv").method, FetchMethod::kDownload);
}

class GitFixture : public ::testing::Test {
 protected:
  void SetUp() override {
    if (!find_executable("git")) GTEST_SKIP() << "git not installed";
    repo_ = dir_ / "origin";
    write(repo_ / "README.md", "# Fixture\n");
    write(repo_ / "main.py", "print('hello')\n");
    write(repo_ / "data/values.csv", "a\n1\n");
    git({"init", "-q"});
    git({"add", "."});
    git({"-c", "user.name=t", "-c", "user.email=t@example.org", "commit", "-q", "-m", "init"});
  }

  void git(std::vector<std::string> args) {
    args.insert(args.begin(), {"git", "-C", repo_.string()});
    ProcessSpec spec;
    spec.argv = args;
    spec.timeout = std::chrono::seconds(30);
    const auto r = run_process(spec);
    ASSERT_TRUE(r.ok()) << r.output;
  }

  TempDir dir_;
  fs::path repo_;
};

TEST_F(GitFixture, ShallowCloneOfThreeFileRepository) {
  const auto snap = fetch_artifact("file://" + repo_.string(), config_in(dir_));
  ASSERT_EQ(snap.fetch_status, FetchStatus::kOk) << snap.message;
  EXPECT_EQ(snap.method, "git");
  ASSERT_EQ(snap.files.size(), 3u);
  EXPECT_EQ(snap.files[0].path, "README.md");
  EXPECT_EQ(snap.files[1].path, "data/values.csv");
  EXPECT_EQ(snap.files[2].path, "main.py");
  EXPECT_EQ(snap.files[2].truncated_content, "print('hello')\n");
  EXPECT_FALSE(snap.partial);
}

TEST_F(GitFixture, RepositoryOverCeilingIsPartial) {
  write(repo_ / "zz_large.txt", std::string(600, 'x'));
  git({"add", "."});
  git({"-c", "user.name=t", "-c", "user.email=t@example.org", "commit", "-q", "-m", "large"});
  auto c = config_in(dir_);
  // Just over the ceiling: the first three files fit, the fourth does not.
  c.size_ceiling_bytes = 10 + 15 + 4 + 599;
  const auto snap = fetch_artifact("file://" + repo_.string(), c);
  ASSERT_EQ(snap.fetch_status, FetchStatus::kOk) << snap.message;
  EXPECT_TRUE(snap.partial);
  EXPECT_EQ(snap.files.size(), 3u);
}

TEST_F(GitFixture, MissingRepositoryIsNotFound) {
  const auto snap = fetch_artifact("file://" + (dir_ / "nope.git").string(), config_in(dir_));
  EXPECT_EQ(snap.fetch_status, FetchStatus::kNotFound);
  EXPECT_TRUE(snap.files.empty());
  EXPECT_TRUE(snap.local_dir.empty());
}

TEST(Entrypoint, Priorities) {
  TempDir dir;
  auto c = config_in(dir);
  write(dir / "r1/README.md", "Usage:\n\n```\n$ python3 scripts/go.py --fast\n```\n");
  write(dir / "r1/scripts/go.py", "pass\n");
  write(dir / "r1/main.py", "pass\n");
  auto e = find_entrypoint(snapshot_of(dir / "r1", c));
  ASSERT_TRUE(e);
  EXPECT_EQ(e->source, EntrypointSource::kReadme);
  EXPECT_EQ(e->command, "python3 scripts/go.py --fast");

  write(dir / "r2/README.md", "Run python3 missing.py\n");
  write(dir / "r2/main.py", "pass\n");
  e = find_entrypoint(snapshot_of(dir / "r2", c));
  ASSERT_TRUE(e);
  EXPECT_EQ(e->source, EntrypointSource::kMainFile);
  EXPECT_EQ(e->command, "python3 'main.py'");

  write(dir / "r3/Makefile", "all:\n\tcc -o app app.c\n");
  write(dir / "r3/app.c", "int main(void) { return 0; }\n");
  e = find_entrypoint(snapshot_of(dir / "r3", c));
  ASSERT_TRUE(e);
  EXPECT_EQ(e->source, EntrypointSource::kBuildScript);

  write(dir / "r4/notes.txt", "nothing to run\n");
  EXPECT_FALSE(find_entrypoint(snapshot_of(dir / "r4", c)));
}

std::string tree_digest(const fs::path& root) {
  std::string acc;
  std::vector<fs::path> paths;
  for (const auto& e : fs::recursive_directory_iterator(root)) paths.push_back(e.path());
  std::sort(paths.begin(), paths.end());
  for (const auto& p : paths) {
    acc += p.string() + "\n";
    if (fs::is_regular_file(p)) acc += read_file(p) + "\n";
  }
  return std::to_string(std::hash<std::string>{}(acc)) + ":" + std::to_string(acc.size());
}

class SandboxFixture : public ::testing::Test {
 protected:
  void SetUp() override {
    if (auto why = make_namespace_runtime()->unavailable_reason()) GTEST_SKIP() << *why;
    config_ = config_in(dir_);
    config_.log_dir = dir_ / "logs";
  }

  ExecutionResult run_repo(const std::map<std::string, std::string>& files, double limit_s) {
    const fs::path src = dir_ / ("src" + std::to_string(counter_++));
    for (const auto& [p, content] : files) write(src / p, content);
    const auto snap = snapshot_of(src, config_);
    EXPECT_EQ(snap.fetch_status, FetchStatus::kOk);
    last_work_ = snap.local_dir;
    return attempt_execution(snap, limit_s, config_);
  }

  TempDir dir_;
  SandboxConfig config_;
  fs::path last_work_;
  int counter_ = 0;
};

TEST_F(SandboxFixture, ExitZeroIsYes) {
  const auto r = run_repo({{"run.sh", "sleep 1\necho done\n"}}, 10);
  EXPECT_EQ(r.verdict, 'Y') << r.log_excerpt;
  EXPECT_EQ(r.reason, ExecutionReason::kExitOk);
  EXPECT_GE(r.duration_s, 1.0);
  EXPECT_NE(r.log_excerpt.find("done"), std::string::npos);
  EXPECT_EQ(r.runtime, "namespace");
  EXPECT_EQ(r.entrypoint, "sh 'run.sh'");
}

TEST_F(SandboxFixture, NonzeroExitIsNo) {
  const auto r = run_repo({{"main.py", "import sys\nsys.exit(3)\n"}}, 10);
  EXPECT_EQ(r.verdict, 'N');
  EXPECT_EQ(r.reason, ExecutionReason::kNonzeroExit);
}

TEST_F(SandboxFixture, SleepPastLimitTimesOut) {
  const auto start = std::chrono::steady_clock::now();
  const auto r = run_repo({{"run.sh", "sleep 60\n"}}, 2);
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  EXPECT_EQ(r.verdict, 'N');
  EXPECT_EQ(r.reason, ExecutionReason::kTimeout);
  EXPECT_GE(r.duration_s, 2.0);
  EXPECT_LE(r.duration_s, 2.0 + 5.0);
  EXPECT_LE(wall, 2.0 + 5.0 + 5.0);
}

TEST_F(SandboxFixture, NoEntrypointIsNo) {
  const auto r = run_repo({{"notes.txt", "hi\n"}}, 10);
  EXPECT_EQ(r.verdict, 'N');
  EXPECT_EQ(r.reason, ExecutionReason::kNoEntrypoint);
}

TEST_F(SandboxFixture, HostFilesystemUnchanged) {
  const fs::path sentinel = dir_ / "host";
  write(sentinel / "keep.txt", "original\n");
  const std::string before = tree_digest(sentinel);
  const std::string script =
      "echo inside > inside.txt\n"
      "echo x > " + (sentinel / "keep.txt").string() + " 2>/dev/null\n"
      "echo x > " + (sentinel / "new.txt").string() + " 2>/dev/null\n"
      "echo x > /root/recap_escape 2>/dev/null\n"
      "echo x > /var/tmp/recap_escape 2>/dev/null\n"
      "echo x > /tmp/scratch && test -f /tmp/scratch\n";
  const auto r = run_repo({{"run.sh", script}}, 10);
  EXPECT_EQ(r.verdict, 'Y') << r.log_excerpt;
  EXPECT_EQ(tree_digest(sentinel), before);
  EXPECT_FALSE(fs::exists("/root/recap_escape"));
  EXPECT_FALSE(fs::exists("/var/tmp/recap_escape"));
  EXPECT_FALSE(fs::exists("/tmp/scratch"));
  EXPECT_EQ(read_file(last_work_ / "inside.txt"), "inside\n");
}

TEST_F(SandboxFixture, NoNetworkAndUnprivileged) {
  FixtureServer server;
  server.server().Get("/ok", [](const httplib::Request&, httplib::Response& res) { res.set_content("x", "text/plain"); });
  server.start();
  const std::string script = "test \"$(id -u)\" = 65534 || exit 10\n"
                             "if command -v curl >/dev/null; then curl -s -m 3 " + server.url("/ok") +
                             " && exit 11; fi\n"
                             "test \"$(cat /proc/1/cmdline | tr '\\0' ' ')\" != '' || exit 12\n"
                             "exit 0\n";
  const auto r = run_repo({{"run.sh", script}}, 10);
  EXPECT_EQ(r.verdict, 'Y') << r.log_excerpt;
}

TEST_F(SandboxFixture, BuildScriptThenBinary) {
  if (!find_executable("cc")) GTEST_SKIP() << "no C compiler";
  const auto r = run_repo({{"Makefile", "app: app.c\n\tcc -o app app.c\n"},
                           {"app.c", "#include <stdio.h>\nint main(void) { puts(\"built\"); return 0; }\n"}},
                          60);
  EXPECT_EQ(r.verdict, 'Y') << r.log_excerpt;
  EXPECT_NE(r.log_excerpt.find("built"), std::string::npos);
}

TEST_F(SandboxFixture, OneExecutionPerInstanceAndLogRetained) {
  const fs::path src = dir_ / "once";
  write(src / "run.sh", "exit 0\n");
  const auto snap = snapshot_of(src, config_);
  EXPECT_EQ(attempt_execution(snap, 10, config_).verdict, 'Y');
  const auto again = attempt_execution(snap, 10, config_);
  EXPECT_EQ(again.reason, ExecutionReason::kSandboxError);
  const fs::path log = config_.log_dir / (snap.local_dir.parent_path().filename().string() + ".execution.log");
  ASSERT_TRUE(fs::exists(log));
  EXPECT_NE(read_file(log).find("entrypoint (main_file, run.sh): sh 'run.sh'"), std::string::npos);
}

TEST(Sandbox, UnknownRuntimeIsSandboxError) {
  TempDir dir;
  auto c = config_in(dir);
  c.runtime = "nonesuch";
  write(dir / "src/run.sh", "exit 0\n");
  const auto snap = snapshot_of(dir / "src", c);
  const auto r = attempt_execution(snap, 5, c);
  EXPECT_EQ(r.verdict, 'N');
  EXPECT_EQ(r.reason, ExecutionReason::kSandboxError);
}

RepositorySnapshot synthetic(const json& j) {
  RepositorySnapshot s;
  const std::string status = j.at("fetch_status");
  s.fetch_status = status == "ok"          ? FetchStatus::kOk
                   : status == "not_found" ? FetchStatus::kNotFound
                   : status == "auth_required" ? FetchStatus::kAuthRequired
                                               : FetchStatus::kUnreachable;
  for (const auto& p : j.at("files")) s.files.push_back({p.get<std::string>(), 10, true, ""});
  return s;
}

TEST(Modality, AbsenceCases) {
  EXPECT_EQ(classify_modality(nullptr, false), Modality::kNone);
  EXPECT_EQ(classify_modality(nullptr, true), Modality::kPdfOnly);
}

TEST(Modality, SourceFilesAndResultTables) {
  const auto s = synthetic({{"fetch_status", "ok"}, {"files", {"src/train.py", "results/table.csv"}}});
  EXPECT_EQ(classify_modality(&s, false), Modality::kCodeAndData);
}

TEST(Modality, TwentySyntheticSnapshotsMatchHandLabels) {
  const json cases = json::parse(read_file(fixtures_dir() / "modality/snapshots.json"));
  ASSERT_EQ(cases.size(), 20u);
  for (const auto& c : cases) {
    std::optional<RepositorySnapshot> snap;
    if (!c.at("snapshot").is_null()) snap = synthetic(c.at("snapshot"));
    const Modality got = classify_modality(snap ? &*snap : nullptr, c.at("has_supplementary_pdf").get<bool>());
    EXPECT_EQ(to_string(got), c.at("expected").get<std::string>()) << c.at("id");
  }
}

TEST(Persistence, AllowlistAndConfig) {
  EXPECT_TRUE(is_persistent_host("https://doi.org/10.5281/zenodo.1234"));
  EXPECT_TRUE(is_persistent_host("https://zenodo.org/records/1234"));
  EXPECT_FALSE(is_persistent_host("https://github.com/org/repo"));
  EXPECT_FALSE(is_persistent_host("https://university.example.edu/~me/code.zip"));
  EXPECT_TRUE(is_persistent_host("https://university.example.edu/~me/code.zip", {"example.edu"}));
}

class FakeHarness : public Harness {
 public:
  const SandboxConfig& config() const override { return config_; }
  AccessibilityResult check_link(const std::string&) override {
    AccessibilityResult r;
    r.accessible = true;
    r.status_class = "ok";
    return r;
  }
  RepositorySnapshot fetch(const std::string& url) override {
    ++fetches;
    RepositorySnapshot s;
    s.origin_url = url;
    s.fetch_status = FetchStatus::kOk;
    s.local_dir = "/nonexistent/work";
    s.files = {{"main.py", 6, true, "pass\n"}, {"data/x.csv", 4, true, "1,2\n"}};
    return s;
  }
  ExecutionResult execute(const RepositorySnapshot&) override {
    ++executions;
    ExecutionResult r;
    r.verdict = 'Y';
    r.reason = ExecutionReason::kExitOk;
    return r;
  }

  SandboxConfig config_;
  int fetches = 0;
  int executions = 0;
};

TEST(ProbeArtifacts, FetchesArtifactLinksAndExecutesOnce) {
  FakeHarness h;
  const std::vector<ingest::LinkRef> links = {
      {"https://github.com/a/b", ingest::LinkKind::kRepository, 0, ""},
      {"https://example.org/about", ingest::LinkKind::kOther, 10, ""},
      {"https://zenodo.org/records/1", ingest::LinkKind::kArchive, 20, ""},
  };
  const auto f = probe_artifacts(h, links, false);
  EXPECT_EQ(h.fetches, 2);
  EXPECT_EQ(h.executions, 1);
  EXPECT_EQ(f.bundles.size(), 2u);
  EXPECT_EQ(f.modality, Modality::kCodeAndData);
  ASSERT_TRUE(f.execution);
  EXPECT_EQ(f.execution->verdict, 'Y');
  EXPECT_TRUE(f.probes[2].persistent);
  EXPECT_FALSE(f.probes[0].persistent);
  const json j = to_json(f);
  EXPECT_EQ(j["modality"], "code_and_data");
  EXPECT_EQ(j["links"].size(), 3u);
}

TEST(ProbeArtifacts, NoLinksGivesNoArtifactMarker) {
  FakeHarness h;
  const auto f = probe_artifacts(h, {}, false);
  EXPECT_FALSE(f.has_artifact());
  EXPECT_EQ(f.context(), kNoArtifactMarker);
  EXPECT_FALSE(f.execution);
  EXPECT_EQ(f.modality, Modality::kNone);
}

}  // namespace
}  // namespace recap::artifact
