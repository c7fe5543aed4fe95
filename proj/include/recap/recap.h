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

#ifndef RECAP_RECAP_H_
#define RECAP_RECAP_H_

#include <stddef.h>

#if defined(RECAP_BUILDING_LIBRARY)
#define RECAP_API __attribute__((visibility("default")))
#else
#define RECAP_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum recap_status {
  RECAP_OK = 0,
  RECAP_E_INVALID_ARGUMENT,
  RECAP_E_IO,
  RECAP_E_CONFIG,
  RECAP_E_MALFORMED_SCHEMA,
  RECAP_E_DUPLICATE_ITEM_ID,
  RECAP_E_EMPTY_DOMAIN,
  RECAP_E_MALFORMED_ASSESSMENT,
  RECAP_E_UNKNOWN_ITEM,
  RECAP_E_NON_TERNARY_ITEM,
  RECAP_E_UNREADABLE_DOCUMENT,
  RECAP_E_ENCRYPTED_DOCUMENT,
  RECAP_E_MALFORMED_MANIFEST,
  RECAP_E_DUPLICATE_PAPER_ID,
  RECAP_E_MISSING_EXTRAS,
  RECAP_E_MALFORMED_RESPONSE,
  RECAP_E_OUT_OF_DOMAIN_VALUE,
  RECAP_E_PROVIDER_UNAVAILABLE,
  RECAP_E_CONTEXT_OVERFLOW,
  RECAP_E_EMPTY_MATRIX,
  RECAP_E_NO_COMPARABLE_ITEMS,
  RECAP_E_TOO_FEW_GROUPS,
  RECAP_E_NO_MATCHING_PAPERS,
  RECAP_E_INTERNAL = 100
} recap_status;

/* Error state for one thread of calls. Every function taking a context
   stores the message of its last failure there. */
typedef struct recap_context recap_context;

RECAP_API recap_context* recap_context_new(void);
RECAP_API void recap_context_free(recap_context* ctx);
RECAP_API const char* recap_last_error(const recap_context* ctx);
RECAP_API const char* recap_status_name(recap_status status);
RECAP_API const char* recap_version(void);

/* Strings returned by the library are released with recap_string_free. */
RECAP_API void recap_string_free(char* s);

/* Progress messages; user_data is passed through. */
typedef void (*recap_log_fn)(const char* message, void* user_data);

/* ---- checklist ---- */

typedef struct recap_schema recap_schema;

/* path NULL or "" loads the bundled checklist. */
RECAP_API recap_status recap_schema_load(recap_context* ctx, const char* path, recap_schema** out);
RECAP_API void recap_schema_free(recap_schema* schema);
RECAP_API size_t recap_schema_item_count(const recap_schema* schema);
/* JSON document of the schema. */
RECAP_API recap_status recap_schema_to_json(recap_context* ctx, const recap_schema* schema, char** out);

typedef struct recap_assessment_set recap_assessment_set;

RECAP_API recap_status recap_assessments_load_dir(recap_context* ctx, const char* dir, recap_assessment_set** out);
RECAP_API void recap_assessments_free(recap_assessment_set* set);
RECAP_API size_t recap_assessments_count(const recap_assessment_set* set);

typedef struct recap_completeness {
  size_t yes;
  size_t applicable;
  int defined;   /* 0 when no counting item is applicable */
  double value;
} recap_completeness;

RECAP_API recap_status recap_completeness_at(recap_context* ctx, const recap_schema* schema,
                                             const recap_assessment_set* set, size_t index,
                                             recap_completeness* out);

/* ---- agreement ---- */

typedef struct recap_kappa {
  double p_o;
  double p_e;
  int defined;
  double kappa;
} recap_kappa;

/* counts: row-major 3x3 over (Y, N, NA) x (Y, N, NA). */
RECAP_API recap_status recap_confusion_metrics(recap_context* ctx, const size_t counts[9], double* accuracy,
                                               recap_kappa* kappa, recap_kappa* kappa_merged);

typedef struct recap_agreement_summary {
  size_t comparable_items;
  size_t matched_papers;
  size_t unmatched_human;
  size_t unmatched_automated;
  size_t skipped_sentinels;
  double accuracy;
  double mean_per_paper_accuracy;
  recap_kappa kappa;
  recap_kappa kappa_merged;
} recap_agreement_summary;

RECAP_API recap_status recap_agreement(recap_context* ctx, const recap_schema* schema,
                                       const recap_assessment_set* human, const recap_assessment_set* automated,
                                       recap_agreement_summary* out);

/* ---- nonparametric tests ---- */

typedef struct recap_test_result {
  double statistic;
  double p_value;
  int exact;       /* p from full enumeration */
  int degenerate;  /* all pooled values equal */
  double u_min;    /* Mann-Whitney only */
} recap_test_result;

RECAP_API recap_status recap_mann_whitney_u(recap_context* ctx, const double* a, size_t na, const double* b,
                                            size_t nb, recap_test_result* out);
/* Groups are concatenated in values; sizes[i] is the length of group i. */
RECAP_API recap_status recap_kruskal_wallis(recap_context* ctx, const double* values, const size_t* sizes,
                                            size_t groups, recap_test_result* out);
RECAP_API recap_status recap_cles(recap_context* ctx, const double* a, size_t na, const double* b, size_t nb,
                                  double* out);

/* ---- commands ---- */

typedef struct recap_assess_options {
  const char* config_path;
  int force;
  unsigned workers;      /* 0: from config */
  const char* stub_path; /* NULL: configured provider */
  recap_log_fn log;
  void* log_user_data;
} recap_assess_options;

typedef struct recap_assess_summary {
  size_t processed;
  size_t skipped_existing;
  size_t unprocessed;
  size_t sentinels;
  size_t provider_calls;
  size_t retries;
  int exit_code; /* 0 all assessed, 2 some papers unprocessed */
} recap_assess_summary;

RECAP_API recap_status recap_cmd_assess(recap_context* ctx, const recap_assess_options* options,
                                        recap_assess_summary* out);

/* Unset fields fall back to the run config when config_path is given:
   schema_path, out_dir = <output_dir>/agreement. out_dir NULL and no config:
   no tables are written. */
typedef struct recap_compare_options {
  const char* human_dir;
  const char* auto_dir;
  const char* schema_path;
  const char* out_dir;
  const char* config_path;
} recap_compare_options;

RECAP_API recap_status recap_cmd_compare(recap_context* ctx, const recap_compare_options* options,
                                         recap_agreement_summary* out);

/* Unset fields fall back to the run config when config_path is given:
   assess_dir = <output_dir>/assessments, manifest_path, schema_path,
   cache_dir, alpha, out_dir = <output_dir>/report. */
typedef struct recap_report_options {
  const char* assess_dir;
  const char* manifest_path;
  const char* schema_path;
  const char* cache_dir;
  const char* out_dir;
  double alpha; /* 0: config value or 0.05 */
  const char* config_path;
} recap_report_options;

typedef struct recap_report_summary {
  size_t papers;
  size_t years;
  int mean_completeness_defined;
  double mean_completeness;
  double availability;
  size_t available;
  size_t external_artifacts;
  size_t persistent;
} recap_report_summary;

RECAP_API recap_status recap_cmd_report(recap_context* ctx, const recap_report_options* options,
                                        recap_report_summary* out);

/* Findings JSON for one link. config_path may be NULL (defaults). */
RECAP_API recap_status recap_cmd_probe_artifact(recap_context* ctx, const char* url, const char* config_path,
                                                int execute, char** json_out);

#ifdef __cplusplus
}
#endif

#endif  // RECAP_RECAP_H_
