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

// Command-line driver. Talks to the library only through recap/recap.h.

#include <cstdio>
#include <memory>
#include <string>

#include <CLI11.hpp>

#include "recap/recap.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;

struct ContextDeleter {
  void operator()(recap_context* c) const { recap_context_free(c); }
};
using Context = std::unique_ptr<recap_context, ContextDeleter>;

const char* or_null(const std::string& s) { return s.empty() ? nullptr : s.c_str(); }

int report_error(const recap_context* ctx, recap_status st) {
  std::fprintf(stderr, "recap: %s: %s\n", recap_status_name(st), recap_last_error(ctx));
  return kExitUsage;
}

void log_line(const char* message, void*) { std::fprintf(stderr, "%s\n", message); }

std::string kappa_text(const recap_kappa& k) {
  return k.defined ? std::to_string(k.kappa) : std::string("undefined");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Reproducibility checklist assessment and agreement analysis"};
  app.require_subcommand(1);
  app.set_version_flag("--version", recap_version());

  std::string config;
  bool force = false;
  unsigned workers = 0;
  std::string stub;
  bool quiet = false;
  auto* assess = app.add_subcommand("assess", "Assess every paper of the configured corpus");
  assess->add_option("--config", config, "Run config (JSON)")->required()->check(CLI::ExistingFile);
  assess->add_flag("--force", force, "Reassess papers that already have an assessment");
  assess->add_option("--workers", workers, "Papers assessed in parallel (overrides the config)")
      ->check(CLI::Range(1u, 256u));
  assess->add_option("--stub", stub, "Scripted responses: a JSON script or a directory of assessments")
      ->check(CLI::ExistingPath);
  assess->add_flag("--quiet", quiet, "No progress messages");

  std::string human_dir, auto_dir, schema, out_dir;
  auto* compare = app.add_subcommand("compare", "Agreement between two directories of assessments");
  compare->add_option("human_dir", human_dir, "Reference assessments")->required()->check(CLI::ExistingDirectory);
  compare->add_option("auto_dir", auto_dir, "Automated assessments")->required()->check(CLI::ExistingDirectory);
  compare->add_option("--schema", schema, "Checklist schema (default: bundled)")->check(CLI::ExistingFile);
  compare->add_option("--out", out_dir, "Directory for the tables");
  compare->add_option("--config", config, "Run config supplying defaults")->check(CLI::ExistingFile);

  std::string assess_dir, manifest, cache_dir;
  double alpha = 0;
  auto* report = app.add_subcommand("report", "Corpus analytics over a directory of assessments");
  report->add_option("assess_dir", assess_dir, "Assessments (default: <output_dir>/assessments)")
      ->check(CLI::ExistingDirectory);
  report->add_option("--manifest", manifest, "Corpus manifest (CSV)")->check(CLI::ExistingFile);
  report->add_option("--schema", schema, "Checklist schema (default: bundled)")->check(CLI::ExistingFile);
  report->add_option("--cache-dir", cache_dir, "Directory holding best_papers.json")->check(CLI::ExistingDirectory);
  report->add_option("--out", out_dir, "Directory for the tables");
  report->add_option("--alpha", alpha, "Significance level")->check(CLI::Range(1e-9, 1.0 - 1e-9));
  report->add_option("--config", config, "Run config supplying defaults")->check(CLI::ExistingFile);

  std::string url;
  bool no_execute = false;
  auto* probe = app.add_subcommand("probe-artifact", "Check, fetch, inventory and run one artifact link");
  probe->add_option("url", url, "Artifact URL")->required();
  probe->add_option("--config", config, "Run config supplying sandbox settings")->check(CLI::ExistingFile);
  probe->add_flag("--no-execute", no_execute, "Skip the bounded execution");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  Context ctx(recap_context_new());
  if (!ctx) return kExitUsage;

  if (*assess) {
    recap_assess_options opt{};
    opt.config_path = config.c_str();
    opt.force = force;
    opt.workers = workers;
    opt.stub_path = or_null(stub);
    if (!quiet) opt.log = log_line;
    recap_assess_summary s{};
    if (const auto st = recap_cmd_assess(ctx.get(), &opt, &s); st != RECAP_OK) return report_error(ctx.get(), st);
    std::printf("processed %zu, skipped %zu, unprocessed %zu, unparseable answers %zu, provider calls %zu\n",
                s.processed, s.skipped_existing, s.unprocessed, s.sentinels, s.provider_calls);
    return s.exit_code;
  }

  if (*compare) {
    recap_compare_options opt{};
    opt.human_dir = human_dir.c_str();
    opt.auto_dir = auto_dir.c_str();
    opt.schema_path = or_null(schema);
    opt.out_dir = or_null(out_dir);
    opt.config_path = or_null(config);
    recap_agreement_summary s{};
    if (const auto st = recap_cmd_compare(ctx.get(), &opt, &s); st != RECAP_OK) return report_error(ctx.get(), st);
    std::printf("papers %zu, items %zu\naccuracy %.6f\nmean per-paper accuracy %.6f\nkappa %s\nkappa merged %s\n",
                s.matched_papers, s.comparable_items, s.accuracy, s.mean_per_paper_accuracy,
                kappa_text(s.kappa).c_str(), kappa_text(s.kappa_merged).c_str());
    if (s.unmatched_human || s.unmatched_automated) {
      std::printf("unmatched papers: %zu reference, %zu automated\n", s.unmatched_human, s.unmatched_automated);
    }
    return kExitOk;
  }

  if (*report) {
    recap_report_options opt{};
    opt.assess_dir = or_null(assess_dir);
    opt.manifest_path = or_null(manifest);
    opt.schema_path = or_null(schema);
    opt.cache_dir = or_null(cache_dir);
    opt.out_dir = or_null(out_dir);
    opt.alpha = alpha;
    opt.config_path = or_null(config);
    recap_report_summary s{};
    if (const auto st = recap_cmd_report(ctx.get(), &opt, &s); st != RECAP_OK) return report_error(ctx.get(), st);
    std::printf("papers %zu over %zu years\n", s.papers, s.years);
    if (s.mean_completeness_defined) std::printf("mean completeness %.6f\n", s.mean_completeness);
    std::printf("availability %.4f%% (%zu papers)\nexternal artifacts %zu, persistent %zu\n", 100.0 * s.availability,
                s.available, s.external_artifacts, s.persistent);
    return kExitOk;
  }

  char* json = nullptr;
  if (const auto st = recap_cmd_probe_artifact(ctx.get(), url.c_str(), or_null(config), !no_execute, &json);
      st != RECAP_OK) {
    return report_error(ctx.get(), st);
  }
  std::printf("%s\n", json);
  recap_string_free(json);
  return kExitOk;
}
