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

#include <chrono>
#include <cstddef>
#include <string>

#include "recap/artifact/harness.hpp"
#include "recap/checklist/assessment.hpp"
#include "recap/evaluator/context.hpp"
#include "recap/evaluator/provider.hpp"

namespace recap::evaluator {

struct RetryPolicy {
  unsigned max_attempts = 3;
  std::chrono::milliseconds backoff{1000};  // fixed wait between attempts
};

struct EvaluationOutcome {
  checklist::FieldAnswer answer;
  unsigned attempts = 0;
  std::string raw_last_response;

  bool sentinel() const { return answer.is_sentinel(); }
};

// Retries MalformedResponse/OutOfDomainValue; returns the UNPARSEABLE
// sentinel on exhaustion. Provider errors propagate. Backoff is skipped for
// deterministic providers.
EvaluationOutcome evaluate_field(Provider& provider, const ProviderRequest& request,
                                 const checklist::ChecklistItem& item, const RetryPolicy& policy);

struct AssessOptions {
  ContextOptions context;
  RetryPolicy retry;
  size_t context_limit_tokens = 400000;  // 0 disables the pre-flight check
  double chars_per_token = 4.0;
  artifact::ProbeOptions probe;
};

struct AssessStats {
  size_t provider_calls = 0;
  size_t retries = 0;
  size_t sentinels = 0;
  size_t execution_answers = 0;  // fields answered from the execution verdict
  size_t max_request_tokens = 0;
};

struct AssessResult {
  checklist::Assessment assessment;
  AssessStats stats;
};

// Estimated tokens of a request: characters / chars_per_token rounded up,
// plus the response budget.
size_t estimate_request_tokens(const ProviderRequest& request, double chars_per_token);

// Evaluates every schema item in order. Artifact findings are probed once
// (harness may be null: no probing, artifact fields see the "no artifact"
// marker). The executable field takes the execution verdict when execution
// was attempted. Throws ContextOverflow before any provider call when a
// request would exceed the context limit.
AssessResult assess_paper(Provider& provider, const ingest::PaperRecord& paper,
                          const checklist::ChecklistSchema& schema, artifact::Harness* harness,
                          const AssessOptions& options = {});

}  // namespace recap::evaluator
