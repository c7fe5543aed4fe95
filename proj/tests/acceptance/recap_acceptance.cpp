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

// Acceptance checks. One PASS/FAIL/SKIPPED line per criterion; exit status 1
// when any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <json.hpp>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "../unit/test_support.hpp"
#include "recap/analysis/agreement.hpp"
#include "recap/analysis/confusion.hpp"
#include "recap/analysis/nonparametric.hpp"
#include "recap/app/commands.hpp"
#include "recap/artifact/execution.hpp"
#include "recap/artifact/fetch.hpp"
#include "recap/artifact/inventory.hpp"
#include "recap/artifact/sandbox.hpp"
#include "recap/checklist/metrics.hpp"
#include "recap/common/error.hpp"
#include "recap/common/files.hpp"
#include "recap/common/subprocess.hpp"

namespace {

using namespace recap;
using nlohmann::json;
using analysis::ConfusionMatrix;
using checklist::Ternary;
using testing::TempDir;
namespace fs = std::filesystem;

// Collects failed expectations for one criterion.
class Check {
 public:
  void expect(bool ok, const std::string& what) {
    if (!ok && failures_.size() < 5) failures_.push_back(what);
    if (!ok) ++count_;
  }
  void near(double got, double want, double tol, const std::string& what) {
    std::ostringstream s;
    s.precision(12);
    s << what << ": got " << got << ", want " << want << " +/- " << tol;
    expect(std::isfinite(got) && std::fabs(got - want) <= tol, s.str());
  }
  bool ok() const { return count_ == 0; }
  std::string detail() const {
    std::string out;
    for (const auto& f : failures_) out += (out.empty() ? "" : "; ") + f;
    if (count_ > failures_.size()) out += "; " + std::to_string(count_ - failures_.size()) + " more";
    return out;
  }
  std::string note;

 private:
  std::vector<std::string> failures_;
  size_t count_ = 0;
};

struct Skipped {
  std::string reason;
};

int g_failed = 0;

void criterion(const char* name, const std::function<void(Check&)>& body) {
  Check c;
  const auto start = std::chrono::steady_clock::now();
  try {
    body(c);
  } catch (const Skipped& s) {
    std::printf("SKIPPED  %s (%s)\n", name, s.reason.c_str());
    return;
  } catch (const std::exception& e) {
    c.expect(false, std::string("exception: ") + e.what());
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::printf("%s  %s [%.2fs]", c.ok() ? "PASS" : "FAIL", name, secs);
  if (!c.note.empty()) std::printf(" %s", c.note.c_str());
  if (!c.ok()) std::printf(" :: %s", c.detail().c_str());
  std::printf("\n");
  std::fflush(stdout);
  if (!c.ok()) ++g_failed;
}

double elapsed_since(std::chrono::steady_clock::time_point t) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t).count();
}

// Brute-force agreement statistics straight from answer pairs.
struct Brute {
  double accuracy;
  std::optional<double> kappa;
};

Brute brute_force(const std::vector<std::pair<int, int>>& pairs, bool merge) {
  auto cls = [&](int v) { return merge && v == 2 ? 1 : v; };
  const double n = static_cast<double>(pairs.size());
  double agree = 0;
  std::map<int, double> ca, cb;
  for (auto [a, b] : pairs) {
    agree += cls(a) == cls(b);
    ca[cls(a)] += 1;
    cb[cls(b)] += 1;
  }
  double pe = 0;
  for (const auto& [k, v] : ca) pe += (v / n) * (cb.count(k) ? cb[k] / n : 0.0);
  const double po = agree / n;
  Brute r{po, std::nullopt};
  if (pe == 1.0) {
    if (po == 1.0) r.kappa = 1.0;
  } else {
    r.kappa = (po - pe) / (1 - pe);
  }
  return r;
}

void kappa_matches(Check& c, const analysis::KappaResult& got, const std::optional<double>& want,
                   const std::string& what) {
  c.expect(got.kappa.has_value() == want.has_value(), what + ": definedness differs");
  if (got.kappa && want) c.near(*got.kappa, *want, 1e-12, what);
}

void metric_oracle(Check& c) {
  const auto start = std::chrono::steady_clock::now();
  std::mt19937_64 rng(20260501);
  const auto schema = testing::ternary_schema(50);
  static const char* kValue[] = {"Y", "N", "NA"};
  for (int rep = 0; rep < 500; ++rep) {
    const size_t items = std::uniform_int_distribution<size_t>(1, 50)(rng);
    // Skewed marginals make undefined and near-degenerate kappa reachable.
    std::discrete_distribution<int> pick_a({1.0 + rep % 7, 1.0, 0.5 + rep % 3});
    std::discrete_distribution<int> pick_b({1.0, 1.0 + rep % 5, 1.0});
    std::vector<std::pair<int, int>> pairs;
    checklist::Assessment h, a;
    h.paper_id = a.paper_id = "p";
    a.rater = checklist::Rater::kAutomated;
    for (size_t i = 0; i < items; ++i) {
      int x = pick_a(rng);
      int y = rep % 11 == 0 ? x : pick_b(rng);
      pairs.emplace_back(x, y);
      const std::string id = schema.items()[i].id;
      h.add({id, kValue[x], ""});
      a.add({id, kValue[y], ""});
    }
    const std::vector<checklist::Assessment> hs{h}, as{a};
    const auto report = analysis::agreement_report(hs, as, schema);
    const auto plain = brute_force(pairs, false);
    const auto merged = brute_force(pairs, true);
    const std::string tag = "pair " + std::to_string(rep);
    c.expect(report.overall.matrix.n() == items, tag + ": n");
    c.near(report.accuracy, plain.accuracy, 1e-12, tag + " accuracy");
    c.near(analysis::accuracy(report.overall.matrix), plain.accuracy, 1e-12, tag + " matrix accuracy");
    kappa_matches(c, report.kappa, plain.kappa, tag + " kappa");
    kappa_matches(c, report.kappa_merged, merged.kappa, tag + " merged kappa");
  }
  const double secs = elapsed_since(start);
  c.expect(secs < 5.0, "runtime " + std::to_string(secs) + " s >= 5 s");
}

void worked_kappa(Check& c) {
  ConfusionMatrix cm;
  cm.add(Ternary::kYes, Ternary::kYes, 4);
  cm.add(Ternary::kNo, Ternary::kNo, 2);
  cm.add(Ternary::kNotApplicable, Ternary::kNotApplicable, 2);
  cm.add(Ternary::kYes, Ternary::kNo, 1);
  cm.add(Ternary::kNo, Ternary::kYes, 1);
  const auto k = analysis::cohen_kappa(cm);
  const auto m = analysis::kappa_merged(cm);
  c.expect(k.kappa && m.kappa, "kappa undefined");
  if (k.kappa) c.near(*k.kappa, 0.6774, 1e-4, "kappa");
  if (m.kappa) c.near(*m.kappa, 0.6000, 1e-4, "merged kappa");
  if (k.kappa && m.kappa) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "(kappa %.4f, merged %.4f)", *k.kappa, *m.kappa);
    c.note = buf;
  }
}

fs::path corpus_dir() { return testing::fixtures_dir() / "corpus"; }

ProcessResult run_cli(const std::vector<std::string>& args) {
  ProcessSpec spec;
  spec.argv = {RECAP_CLI_PATH};
  spec.argv.insert(spec.argv.end(), args.begin(), args.end());
  spec.timeout = std::chrono::seconds(30);
  std::vector<std::string> env;
  for (char** e = environ; *e; ++e) {
    const std::string kv = *e;
    // No credentials and no proxy: the run must not touch the network.
    if (kv.rfind("OPENAI_API_KEY=", 0) == 0 || kv.find("_proxy=") != std::string::npos) continue;
    env.push_back(kv);
  }
  env.push_back("SOURCE_DATE_EPOCH=0");
  spec.env = env;
  return run_process(spec);
}

void echo_stub(Check& c) {
  const auto start = std::chrono::steady_clock::now();
  TempDir dir;
  const json config = {{"manifest_path", (corpus_dir() / "manifest.csv").string()},
                       {"cache_dir", corpus_dir().string()},
                       {"output_dir", (dir / "out").string()},
                       {"provider", {{"kind", "stub"}}},
                       {"artifacts", {{"sandbox_root", (dir / "sandboxes").string()}, {"check_links", false}}}};
  write_file_atomic(dir / "config.json", config.dump(2));

  const auto assess = run_cli({"assess", "--config", (dir / "config.json").string(), "--stub",
                               (corpus_dir() / "human").string(), "--quiet"});
  c.expect(assess.ok(), "assess exit " + std::to_string(assess.exit_code) + ": " + assess.output);
  const auto compare = run_cli({"compare", (corpus_dir() / "human").string(), (dir / "out/assessments").string(),
                                "--out", (dir / "out/agreement").string()});
  c.expect(compare.ok(), "compare exit " + std::to_string(compare.exit_code) + ": " + compare.output);
  if (!assess.ok() || !compare.ok()) return;

  const json summary = json::parse(read_file(dir / "out/agreement/agreement_summary.json"));
  c.expect(summary["matched_papers"] == 3, "expected 3 matched papers, got " + summary["matched_papers"].dump());
  c.near(summary["accuracy"].get<double>(), 1.0, 0.0, "accuracy");
  c.expect(summary["kappa"]["kappa"].is_number(), "kappa undefined");
  if (summary["kappa"]["kappa"].is_number()) c.near(summary["kappa"]["kappa"].get<double>(), 1.0, 0.0, "kappa");
  const double secs = elapsed_since(start);
  c.expect(secs < 10.0, "runtime " + std::to_string(secs) + " s >= 10 s");
}

void random_rater(Check& c) {
  std::mt19937_64 rng(7);
  const auto schema = testing::ternary_schema(100);
  // Fixed, deliberately unbalanced human answers.
  std::discrete_distribution<int> human_pick({0.5, 0.3, 0.2});
  static const char* kValue[] = {"Y", "N", "NA"};
  std::vector<checklist::Assessment> human, automated;
  for (int p = 0; p < 100; ++p) {
    checklist::Assessment h, a;
    h.paper_id = a.paper_id = "p" + std::to_string(1000 + p);
    a.rater = checklist::Rater::kAutomated;
    for (const auto& item : schema.items()) {
      h.add({item.id, kValue[human_pick(rng)], ""});
      a.add({item.id, testing::random_ternary(rng), ""});
    }
    human.push_back(std::move(h));
    automated.push_back(std::move(a));
  }
  const auto r = analysis::agreement_report(human, automated, schema);
  c.expect(r.overall.matrix.n() == 10000, "expected 10^4 items");
  c.near(r.accuracy, 0.33, 0.02, "accuracy");
  c.expect(r.kappa.kappa.has_value(), "kappa undefined");
  if (r.kappa.kappa) c.near(*r.kappa.kappa, 0.0, 0.03, "kappa");
  char buf[64];
  std::snprintf(buf, sizeof buf, "(accuracy %.4f, kappa %.4f)", r.accuracy, r.kappa.kappa.value_or(NAN));
  c.note = buf;
}

// Exact two-sided p by enumerating every assignment of ranks 1..n to the
// first sample.
void nonparametric(Check& c) {
  const auto start = std::chrono::steady_clock::now();
  size_t partitions = 0;
  for (int n = 2; n <= 10; ++n) {
    std::vector<std::vector<int>> u_by_m(n);  // u_by_m[m][U] = count
    for (int m = 1; m < n; ++m) u_by_m[m].assign(m * (n - m) + 1, 0);
    auto u_of = [n](unsigned mask) {
      int u = 0;
      for (int i = 0; i < n; ++i) {
        if (!(mask >> i & 1)) continue;
        for (int j = 0; j < n; ++j) u += !(mask >> j & 1) && i > j;
      }
      return u;
    };
    for (unsigned mask = 1; mask + 1 < (1u << n); ++mask) ++u_by_m[__builtin_popcount(mask)][u_of(mask)];
    for (unsigned mask = 1; mask + 1 < (1u << n); ++mask) {
      const int m = __builtin_popcount(mask);
      std::vector<double> a, b;
      for (int i = 0; i < n; ++i) ((mask >> i & 1) ? a : b).push_back(i + 1);
      const int u = u_of(mask);
      const auto& dist = u_by_m[m];
      double total = 0, le = 0, ge = 0;
      for (size_t k = 0; k < dist.size(); ++k) {
        total += dist[k];
        if (static_cast<int>(k) <= u) le += dist[k];
        if (static_cast<int>(k) >= u) ge += dist[k];
      }
      const double p = std::min(1.0, 2.0 * std::min(le, ge) / total);
      const auto r = analysis::mann_whitney_u(a, b);
      const std::string tag = "n=" + std::to_string(n) + " mask=" + std::to_string(mask);
      c.expect(r.statistic == u, tag + ": U " + std::to_string(r.statistic) + " vs " + std::to_string(u));
      c.expect(r.p_method == analysis::PValueMethod::kExact, tag + ": not exact");
      c.expect(r.p_value == p, tag + ": p " + std::to_string(r.p_value) + " vs " + std::to_string(p));
      ++partitions;
    }
  }

  const std::vector<std::vector<double>> groups = {{1, 2}, {3, 4}};
  const auto kw = analysis::kruskal_wallis(groups);
  c.near(kw.statistic, 2.4, 1e-9, "KW H");

  std::mt19937_64 rng(12345);
  std::normal_distribution<double> normal;
  auto sample = [&](size_t n) {
    std::vector<double> v(n);
    for (auto& x : v) x = normal(rng);
    return v;
  };
  int mw_hits = 0, kw_hits = 0;
  const int reps = 1000;
  for (int i = 0; i < reps; ++i) {
    const auto a = sample(20), b = sample(20);
    mw_hits += analysis::mann_whitney_u(a, b).p_value < 0.05;
    const std::vector<std::vector<double>> g = {sample(15), sample(15), sample(15)};
    kw_hits += analysis::kruskal_wallis(g).p_value < 0.05;
  }
  const double mw_rate = double(mw_hits) / reps, kw_rate = double(kw_hits) / reps;
  c.expect(mw_rate >= 0.03 && mw_rate <= 0.07, "MW false-positive rate " + std::to_string(mw_rate));
  c.expect(kw_rate >= 0.03 && kw_rate <= 0.07, "KW false-positive rate " + std::to_string(kw_rate));
  const double secs = elapsed_since(start);
  c.expect(secs < 60.0, "runtime " + std::to_string(secs) + " s >= 60 s");
  char buf[128];
  std::snprintf(buf, sizeof buf, "(%zu partitions, H %.6f, FPR MW %.3f KW %.3f)", partitions, kw.statistic, mw_rate,
                kw_rate);
  c.note = buf;
}

void completeness_oracle(Check& c) {
  const auto& schema = checklist::default_schema();
  // Counting items straight from the bundled schema document.
  std::vector<std::string> counting;
  const json document = json::parse(checklist::default_schema_document());
  for (const auto& item : document["items"]) {
    if (item["domain"]["type"] == "ternary" && !item.value("descriptive", false) &&
        item.value("counts_toward_completeness", true)) {
      counting.push_back(item["id"]);
    }
  }
  c.expect(!counting.empty(), "no counting items");

  std::mt19937_64 rng(99);
  std::vector<checklist::Assessment> corpus;
  for (int i = 0; i < 200; ++i) {
    auto a = testing::random_assessment(schema, "p" + std::to_string(1000 + i), rng, true);
    // Some sentinels among the answers.
    for (auto& [id, ans] : a.answers) {
      if (std::uniform_int_distribution<int>(0, 19)(rng) == 0) ans.value = std::string(checklist::kUnparseable);
    }
    corpus.push_back(std::move(a));
  }

  for (const auto& a : corpus) {
    size_t yes = 0, applicable = 0;
    for (const auto& id : counting) {
      auto it = a.answers.find(id);
      if (it == a.answers.end()) continue;
      yes += it->second.value == "Y";
      applicable += it->second.value == "Y" || it->second.value == "N";
    }
    const auto got = checklist::completeness(schema, a);
    c.expect(got.yes_count == yes && got.applicable_count == applicable, a.paper_id + ": counts differ");
    c.expect(got.defined() == (applicable > 0), a.paper_id + ": definedness differs");
    if (got.value && applicable) c.near(*got.value, double(yes) / applicable, 1e-12, a.paper_id + " completeness");

    // Filling every unanswered item with NA leaves completeness unchanged.
    auto filled = a;
    for (const auto& item : schema.items()) {
      if (item.is_ternary() && !filled.answer(item.id)) filled.add({item.id, "NA", ""});
    }
    const auto after = checklist::completeness(schema, filled);
    c.expect(after.defined() == got.defined() && after.value == got.value, a.paper_id + ": NA insertion changed it");
  }

  for (const auto& id : counting) {
    double y = 0, n = 0;
    for (const auto& a : corpus) {
      auto it = a.answers.find(id);
      if (it == a.answers.end()) continue;
      y += it->second.value == "Y";
      n += it->second.value == "N";
    }
    const auto rate = checklist::reporting_rate(schema, corpus, id);
    c.expect(rate.has_value() == (y + n > 0), id + ": rate definedness");
    if (rate && y + n > 0) c.near(*rate, y / (y + n), 1e-12, id + " reporting rate");
  }
  c.note = "(" + std::to_string(counting.size()) + " counting items)";
}

std::string tree_digest(const fs::path& root) {
  std::vector<fs::path> paths;
  for (const auto& e : fs::recursive_directory_iterator(root)) paths.push_back(e.path());
  std::sort(paths.begin(), paths.end());
  std::string acc;
  for (const auto& p : paths) {
    acc += p.string() + "\n";
    if (fs::is_regular_file(p)) acc += read_file(p) + "\n";
  }
  return std::to_string(std::hash<std::string>{}(acc)) + ":" + std::to_string(acc.size());
}

void write(const fs::path& p, const std::string& content) {
  fs::create_directories(p.parent_path());
  std::ofstream(p, std::ios::binary) << content;
}

void sandbox_contract(Check& c) {
  using namespace artifact;
  constexpr double kLimit = 10;
  if (auto why = make_namespace_runtime()->unavailable_reason()) {
    c.expect(false, "namespace runtime unavailable: " + *why);
    return;
  }
  TempDir dir;
  SandboxConfig config;
  config.root = dir / "sandboxes";
  config.runtime = "namespace";
  config.log_dir = dir / "logs";

  const fs::path host = dir / "host";
  write(host / "keep.txt", "original\n");
  const std::string before = tree_digest(host);

  write(dir / "ok/run.sh",
        "echo inside > inside.txt\n"
        "echo x > " + (host / "keep.txt").string() + " 2>/dev/null\n"
        "echo x > " + (host / "new.txt").string() + " 2>/dev/null\n"
        "echo x > /var/tmp/recap_acceptance_escape 2>/dev/null\n"
        "exit 0\n");
  write(dir / "slow/run.sh", "sleep 600\n");
  const std::string ok_src = tree_digest(dir / "ok");

  const auto ok = attempt_execution(fetch_artifact("file://" + (dir / "ok").string(), config), kLimit, config);
  c.expect(ok.verdict == 'Y', "exit-0 fixture gave " + std::string(1, ok.verdict) + " (" +
                                  std::string(to_string(ok.reason)) + ")");

  const auto t0 = std::chrono::steady_clock::now();
  const auto slow = attempt_execution(fetch_artifact("file://" + (dir / "slow").string(), config), kLimit, config);
  const double wall = elapsed_since(t0);
  c.expect(slow.verdict == 'N' && slow.reason == ExecutionReason::kTimeout,
           "sleep fixture gave " + std::string(1, slow.verdict) + " (" + std::string(to_string(slow.reason)) + ")");
  c.expect(slow.duration_s <= kLimit + 5, "timeout duration " + std::to_string(slow.duration_s));
  c.expect(wall <= kLimit + 5 + 10, "timeout wall time " + std::to_string(wall));

  c.expect(tree_digest(host) == before, "host directory changed");
  c.expect(tree_digest(dir / "ok") == ok_src, "artifact source changed");
  c.expect(!fs::exists("/var/tmp/recap_acceptance_escape"), "write escaped to /var/tmp");
  char buf[96];
  std::snprintf(buf, sizeof buf, "(timeout after %.2fs, limit %.0fs)", slow.duration_s, kLimit);
  c.note = buf;
}

void truncation(Check& c) {
  using namespace artifact;
  TempDir dir;
  SandboxConfig config;
  config.root = dir / "sandboxes";
  std::string ascii;
  for (int i = 0; ascii.size() < 6000; ++i) ascii += "w" + std::to_string(i) + " ";
  ascii.resize(6000);
  // 6000 code points of two-byte characters.
  std::string wide;
  for (int i = 0; i < 6000; ++i) wide += i % 2 ? "\xc3\xa9" : "\xc3\xbc";
  write(dir / "repo/a.py", ascii);
  write(dir / "repo/b.txt", wide);
  const TokenEstimator tokens;
  c.expect(tokens.count(ascii) == 1500 && tokens.count(wide) == 1500, "fixtures are not 1500 tokens");

  const auto snap = fetch_artifact("file://" + (dir / "repo").string(), config);
  const auto bundle = truncate_for_context(snap);
  c.expect(bundle.entries.size() == 2, "expected two bundle entries");
  if (bundle.entries.size() != 2) return;
  c.expect(bundle.entries[0].content == ascii.substr(0, 4000), "a.py is not its first 1000 tokens");
  c.expect(bundle.entries[1].content == wide.substr(0, 8000), "b.txt is not its first 1000 tokens");
  c.expect(bundle.entries[0].tokens == 1000 && bundle.entries[1].tokens == 1000, "entry token counts");
  c.expect(bundle.total_tokens == 2000, "total tokens " + std::to_string(bundle.total_tokens));
}

// Layout: <dir>/human/*.json, <dir>/auto/*.json, <dir>/manifest.csv and an
// optional <dir>/best_papers.json.
void replication(Check& c) {
  const char* root = std::getenv("RECAP_REPLICATION_DIR");
  if (!root || !*root) throw Skipped{"RECAP_REPLICATION_DIR not set"};
  const fs::path dir = root;
  const auto agreement = app::cmd_compare(dir / "human", dir / "auto", {}, {});
  c.expect(agreement.kappa.kappa && agreement.kappa_merged.kappa, "kappa undefined");
  if (agreement.kappa.kappa) c.near(*agreement.kappa.kappa, 0.67, 0.01, "kappa");
  if (agreement.kappa_merged.kappa) c.near(*agreement.kappa_merged.kappa, 0.75, 0.01, "merged kappa");

  app::ReportRequest req;
  req.assess_dir = dir / "human";
  req.manifest = dir / "manifest.csv";
  req.cache_dir = dir;
  const auto report = app::cmd_report(req);
  c.expect(report.mean_completeness.has_value(), "mean completeness undefined");
  if (report.mean_completeness) c.near(*report.mean_completeness, 0.62, 0.01, "mean completeness");
  const auto avail = report.availability();
  c.expect(avail.has_value(), "availability undefined");
  if (avail) c.near(100.0 * *avail, 36.9, 0.1, "availability %");
}

}  // namespace

int main() {
  criterion("metric oracle: 500 random rater pairs within 1e-12, < 5 s", metric_oracle);
  criterion("worked kappa example: 0.6774 / merged 0.6000 +/- 1e-4", worked_kappa);
  criterion("echo-stub end-to-end: assess then compare gives accuracy 1, kappa 1, < 10 s", echo_stub);
  criterion("random-rater calibration: accuracy 0.33 +/- 0.02, kappa 0 +/- 0.03", random_rater);
  criterion("nonparametric tests: exact MW enumeration, KW H = 2.4, MC false positives in [0.03, 0.07]",
            nonparametric);
  criterion("completeness and reporting-rate oracle on 200 assessments within 1e-12", completeness_oracle);
  criterion("sandbox contract: exit 0 -> Y, timeout -> N within limit + 5 s, host unchanged", sandbox_contract);
  criterion("truncation contract: 1500-token file keeps its first 1000 tokens", truncation);
  criterion("replication: kappa 0.67 / merged 0.75, completeness 0.62, availability 36.9%", replication);
  std::printf("%s\n", g_failed ? "acceptance: FAILED" : "acceptance: all criteria met");
  return g_failed ? 1 : 0;
}
