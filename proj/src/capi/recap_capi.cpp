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

#include "recap/recap.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>
#include <vector>

#include "recap/analysis/agreement.hpp"
#include "recap/analysis/nonparametric.hpp"
#include "recap/app/commands.hpp"
#include "recap/checklist/metrics.hpp"
#include "recap/common/error.hpp"

struct recap_context {
  std::string last_error;
};

struct recap_schema {
  recap::checklist::ChecklistSchema schema;
};

struct recap_assessment_set {
  std::vector<recap::checklist::Assessment> items;
};

namespace {

using recap::ErrorCode;

static_assert(static_cast<int>(ErrorCode::kNoMatchingPapers) + 1 == RECAP_E_NO_MATCHING_PAPERS,
              "status codes follow the library error codes");

recap_status status_of(ErrorCode code) { return static_cast<recap_status>(static_cast<int>(code) + 1); }

template <typename F>
recap_status guarded(recap_context* ctx, F&& body) {
  try {
    body();
    if (ctx) ctx->last_error.clear();
    return RECAP_OK;
  } catch (const recap::Error& e) {
    if (ctx) ctx->last_error = e.what();
    return status_of(e.code());
  } catch (const std::bad_alloc&) {
    if (ctx) ctx->last_error = "out of memory";
    return RECAP_E_INTERNAL;
  } catch (const std::filesystem::filesystem_error& e) {
    if (ctx) ctx->last_error = e.what();
    return RECAP_E_IO;
  } catch (const std::exception& e) {
    if (ctx) ctx->last_error = e.what();
    return RECAP_E_INTERNAL;
  }
}

void require(bool cond, const char* what) {
  if (!cond) recap::fail(ErrorCode::kInvalidArgument, what);
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.data(), s.size() + 1);
  return out;
}

std::filesystem::path opt_path(const char* p) { return p ? std::filesystem::path(p) : std::filesystem::path(); }

recap_kappa to_c(const recap::analysis::KappaResult& k) {
  return {k.p_o, k.p_e, k.kappa.has_value(), k.kappa.value_or(0.0)};
}

recap_test_result to_c(const recap::analysis::TestResult& r) {
  return {r.statistic, r.p_value, r.p_method == recap::analysis::PValueMethod::kExact, r.degenerate, r.u_min};
}

recap_agreement_summary summarize(const recap::analysis::AgreementReport& r) {
  recap_agreement_summary s{};
  s.comparable_items = r.overall.matrix.n();
  s.matched_papers = r.overall.matched_papers.size();
  s.unmatched_human = r.overall.unmatched_a.size();
  s.unmatched_automated = r.overall.unmatched_b.size();
  s.skipped_sentinels = r.overall.skipped_sentinels;
  s.accuracy = r.accuracy;
  double total = 0;
  for (const auto& [id, acc] : r.per_paper.accuracy) total += acc;
  s.mean_per_paper_accuracy = r.per_paper.accuracy.empty() ? 0.0 : total / r.per_paper.accuracy.size();
  s.kappa = to_c(r.kappa);
  s.kappa_merged = to_c(r.kappa_merged);
  return s;
}

}  // namespace

extern "C" {

recap_context* recap_context_new(void) { return new (std::nothrow) recap_context(); }
void recap_context_free(recap_context* ctx) { delete ctx; }
const char* recap_last_error(const recap_context* ctx) { return ctx ? ctx->last_error.c_str() : ""; }
const char* recap_version(void) { return "0.1.0"; }
void recap_string_free(char* s) { std::free(s); }

const char* recap_status_name(recap_status status) {
  if (status == RECAP_OK) return "Ok";
  if (status == RECAP_E_INTERNAL) return "Internal";
  if (status > RECAP_OK && status <= RECAP_E_NO_MATCHING_PAPERS) {
    return recap::to_string(static_cast<ErrorCode>(static_cast<int>(status) - 1)).data();
  }
  return "Unknown";
}

recap_status recap_schema_load(recap_context* ctx, const char* path, recap_schema** out) {
  return guarded(ctx, [&] {
    require(out, "out is null");
    *out = nullptr;
    if (!path || !*path) {
      *out = new recap_schema{recap::checklist::default_schema()};
    } else {
      *out = new recap_schema{recap::checklist::load_schema_file(path)};
    }
  });
}

void recap_schema_free(recap_schema* schema) { delete schema; }
size_t recap_schema_item_count(const recap_schema* schema) { return schema ? schema->schema.size() : 0; }

recap_status recap_schema_to_json(recap_context* ctx, const recap_schema* schema, char** out) {
  return guarded(ctx, [&] {
    require(schema && out, "schema and out must be set");
    *out = dup_string(schema->schema.to_json().dump(2));
  });
}

recap_status recap_assessments_load_dir(recap_context* ctx, const char* dir, recap_assessment_set** out) {
  return guarded(ctx, [&] {
    require(dir && out, "dir and out must be set");
    *out = nullptr;
    *out = new recap_assessment_set{recap::checklist::load_assessment_dir(dir)};
  });
}

void recap_assessments_free(recap_assessment_set* set) { delete set; }
size_t recap_assessments_count(const recap_assessment_set* set) { return set ? set->items.size() : 0; }

recap_status recap_completeness_at(recap_context* ctx, const recap_schema* schema, const recap_assessment_set* set,
                                   size_t index, recap_completeness* out) {
  return guarded(ctx, [&] {
    require(schema && set && out, "schema, set and out must be set");
    require(index < set->items.size(), "index out of range");
    const auto c = recap::checklist::completeness(schema->schema, set->items[index]);
    *out = {c.yes_count, c.applicable_count, c.value.has_value(), c.value.value_or(0.0)};
  });
}

recap_status recap_confusion_metrics(recap_context* ctx, const size_t counts[9], double* accuracy,
                                     recap_kappa* kappa, recap_kappa* kappa_merged) {
  return guarded(ctx, [&] {
    require(counts, "counts is null");
    recap::analysis::ConfusionMatrix::Counts c{};
    for (size_t i = 0; i < 9; ++i) c[i / 3][i % 3] = counts[i];
    const recap::analysis::ConfusionMatrix cm(c);
    if (accuracy) *accuracy = recap::analysis::accuracy(cm);
    if (kappa) *kappa = to_c(recap::analysis::cohen_kappa(cm));
    if (kappa_merged) *kappa_merged = to_c(recap::analysis::kappa_merged(cm));
  });
}

recap_status recap_agreement(recap_context* ctx, const recap_schema* schema, const recap_assessment_set* human,
                             const recap_assessment_set* automated, recap_agreement_summary* out) {
  return guarded(ctx, [&] {
    require(schema && human && automated && out, "schema, both sets and out must be set");
    *out = summarize(recap::analysis::agreement_report(human->items, automated->items, schema->schema));
  });
}

recap_status recap_mann_whitney_u(recap_context* ctx, const double* a, size_t na, const double* b, size_t nb,
                                  recap_test_result* out) {
  return guarded(ctx, [&] {
    require(a && b && out, "a, b and out must be set");
    *out = to_c(recap::analysis::mann_whitney_u({a, na}, {b, nb}));
  });
}

recap_status recap_kruskal_wallis(recap_context* ctx, const double* values, const size_t* sizes, size_t groups,
                                  recap_test_result* out) {
  return guarded(ctx, [&] {
    require(values && sizes && out, "values, sizes and out must be set");
    std::vector<std::vector<double>> g(groups);
    size_t at = 0;
    for (size_t i = 0; i < groups; ++i) {
      g[i].assign(values + at, values + at + sizes[i]);
      at += sizes[i];
    }
    *out = to_c(recap::analysis::kruskal_wallis(g));
  });
}

recap_status recap_cles(recap_context* ctx, const double* a, size_t na, const double* b, size_t nb, double* out) {
  return guarded(ctx, [&] {
    require(a && b && out && na && nb, "cles needs two nonempty samples");
    *out = recap::analysis::cles({a, na}, {b, nb});
  });
}

recap_status recap_cmd_assess(recap_context* ctx, const recap_assess_options* options, recap_assess_summary* out) {
  return guarded(ctx, [&] {
    require(options && options->config_path && out, "options.config_path and out must be set");
    recap::app::AssessRequest req;
    req.config = recap::app::load_run_config(options->config_path);
    req.force = options->force != 0;
    if (options->workers) req.workers = options->workers;
    req.stub = opt_path(options->stub_path);
    if (options->log) {
      req.log = [fn = options->log, ud = options->log_user_data](const std::string& m) { fn(m.c_str(), ud); };
    }
    const auto s = recap::app::cmd_assess(req);
    *out = {s.processed.size(), s.skipped_existing.size(), s.unprocessed.size(), s.sentinels,
            s.provider_calls,   s.retries,                 s.exit_code()};
  });
}

recap_status recap_cmd_compare(recap_context* ctx, const recap_compare_options* options,
                               recap_agreement_summary* out) {
  return guarded(ctx, [&] {
    require(options && options->human_dir && options->auto_dir, "both directories must be set");
    std::filesystem::path schema = opt_path(options->schema_path);
    std::filesystem::path out_dir = opt_path(options->out_dir);
    if (options->config_path && *options->config_path) {
      const auto c = recap::app::load_run_config(options->config_path);
      if (schema.empty()) schema = c.schema_path;
      if (out_dir.empty() && !c.output_dir.empty()) out_dir = c.output_dir / "agreement";
    }
    const auto r = recap::app::cmd_compare(options->human_dir, options->auto_dir, schema, out_dir);
    if (out) *out = summarize(r);
  });
}

recap_status recap_cmd_report(recap_context* ctx, const recap_report_options* options, recap_report_summary* out) {
  return guarded(ctx, [&] {
    require(options, "options is null");
    recap::app::ReportRequest req;
    req.assess_dir = opt_path(options->assess_dir);
    req.manifest = opt_path(options->manifest_path);
    req.schema_path = opt_path(options->schema_path);
    req.cache_dir = opt_path(options->cache_dir);
    req.out_dir = opt_path(options->out_dir);
    if (options->config_path && *options->config_path) {
      const auto c = recap::app::load_run_config(options->config_path);
      if (req.assess_dir.empty() && !c.output_dir.empty()) req.assess_dir = c.output_dir / recap::app::kAssessmentsDir;
      if (req.manifest.empty()) req.manifest = c.manifest_path;
      if (req.schema_path.empty()) req.schema_path = c.schema_path;
      if (req.cache_dir.empty()) req.cache_dir = c.cache_dir;
      if (req.out_dir.empty() && !c.output_dir.empty()) req.out_dir = c.output_dir / "report";
      req.alpha = c.alpha;
    }
    if (options->alpha != 0) req.alpha = options->alpha;
    if (req.assess_dir.empty() || req.manifest.empty()) {
      recap::fail(ErrorCode::kConfig, "report needs an assessment directory and a manifest");
    }
    const auto a = recap::app::cmd_report(req);
    if (out) {
      *out = {};
      out->papers = a.papers.size();
      out->years = a.yearly.size();
      out->mean_completeness_defined = a.mean_completeness.has_value();
      out->mean_completeness = a.mean_completeness.value_or(0.0);
      out->availability = a.availability().value_or(0.0);
      out->available = a.available;
      out->external_artifacts = a.external_artifacts;
      out->persistent = a.persistent;
    }
  });
}

recap_status recap_cmd_probe_artifact(recap_context* ctx, const char* url, const char* config_path, int execute,
                                      char** json_out) {
  return guarded(ctx, [&] {
    require(url && json_out, "url and json_out must be set");
    recap::artifact::SandboxConfig sandbox;
    if (config_path && *config_path) sandbox = recap::app::load_run_config(config_path).sandbox;
    *json_out = dup_string(recap::app::cmd_probe_artifact(url, sandbox, execute != 0).dump(2));
  });
}

}  // extern "C"
