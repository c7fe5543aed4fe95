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

#include "recap/evaluator/evaluate.hpp"

#include <cmath>
#include <thread>

#include "recap/common/error.hpp"
#include "recap/common/files.hpp"
#include "recap/common/text.hpp"
#include "recap/evaluator/response.hpp"

namespace recap::evaluator {

namespace {

std::string_view reason_text(artifact::ExecutionReason r) {
  switch (r) {
    case artifact::ExecutionReason::kExitOk: return "entrypoint exited with status 0";
    case artifact::ExecutionReason::kNonzeroExit: return "entrypoint exited with a nonzero status";
    case artifact::ExecutionReason::kTimeout: return "entrypoint exceeded the time limit";
    case artifact::ExecutionReason::kNoEntrypoint: return "no entrypoint found";
    case artifact::ExecutionReason::kSandboxError: return "sandbox could not be established";
  }
  return "unknown";
}

}  // namespace

EvaluationOutcome evaluate_field(Provider& provider, const ProviderRequest& request,
                                 const checklist::ChecklistItem& item, const RetryPolicy& policy) {
  if (policy.max_attempts < 1) fail(ErrorCode::kInvalidArgument, "retry policy needs at least one attempt");
  EvaluationOutcome out;
  std::string last_error;
  for (unsigned attempt = 1; attempt <= policy.max_attempts; ++attempt) {
    if (attempt > 1 && policy.backoff.count() > 0 && !provider.deterministic()) {
      std::this_thread::sleep_for(policy.backoff);
    }
    out.attempts = attempt;
    out.raw_last_response = provider.complete(request);
    try {
      out.answer = parse_field_response(item, out.raw_last_response);
      return out;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kMalformedResponse && e.code() != ErrorCode::kOutOfDomainValue) throw;
      last_error = e.what();
    } catch (const nlohmann::json::exception& e) {
      last_error = e.what();
    }
  }
  out.answer.item_id = item.id;
  out.answer.value = std::string(checklist::kUnparseable);
  out.answer.disambiguation = last_error;
  return out;
}

size_t estimate_request_tokens(const ProviderRequest& request, double chars_per_token) {
  if (!(chars_per_token > 0)) fail(ErrorCode::kInvalidArgument, "chars_per_token must be positive");
  const size_t chars = text::utf8_length(request.system_prompt) + text::utf8_length(request.user_content) +
                       text::utf8_length(request.response_schema.dump());
  return static_cast<size_t>(std::ceil(static_cast<double>(chars) / chars_per_token)) + request.max_response_tokens;
}

AssessResult assess_paper(Provider& provider, const ingest::PaperRecord& paper,
                          const checklist::ChecklistSchema& schema, artifact::Harness* harness,
                          const AssessOptions& options) {
  AssessResult result;
  auto& a = result.assessment;
  a.paper_id = paper.paper_id;
  a.rater = checklist::Rater::kAutomated;

  bool needs_artifacts = false;
  for (const auto& item : schema.items()) {
    if (item.field_kind == checklist::FieldKind::kArtifact || item.field_kind == checklist::FieldKind::kExecutable) {
      needs_artifacts = true;
    }
  }
  artifact::ArtifactFindings findings;
  if (needs_artifacts && harness) {
    findings = artifact::probe_artifacts(*harness, paper.links, paper.flags.has_supplementary.value_or(false),
                                         options.probe);
  }

  FieldExtras extras;
  extras.best_paper_record = best_paper_record(paper);
  if (needs_artifacts) extras.artifact_context = findings.context();

  std::vector<ProviderRequest> requests;
  requests.reserve(schema.size());
  for (const auto& item : schema.items()) {
    requests.push_back(build_field_context(paper, item, extras, options.context));
    const size_t tokens = estimate_request_tokens(requests.back(), options.chars_per_token);
    result.stats.max_request_tokens = std::max(result.stats.max_request_tokens, tokens);
  }
  if (options.context_limit_tokens > 0 && result.stats.max_request_tokens > options.context_limit_tokens) {
    fail(ErrorCode::kContextOverflow, "paper " + paper.paper_id + " needs about " +
                                          std::to_string(result.stats.max_request_tokens) +
                                          " tokens; the context limit is " +
                                          std::to_string(options.context_limit_tokens));
  }

  for (size_t i = 0; i < schema.size(); ++i) {
    const auto& item = schema.items()[i];
    if (item.field_kind == checklist::FieldKind::kExecutable && findings.execution) {
      const auto& ex = *findings.execution;
      std::string note(reason_text(ex.reason));
      if (!ex.entrypoint.empty()) note += " (" + ex.entrypoint + ")";
      a.add({item.id, std::string(1, ex.verdict), note});
      ++result.stats.execution_answers;
      continue;
    }
    const auto outcome = evaluate_field(provider, requests[i], item, options.retry);
    result.stats.provider_calls += outcome.attempts;
    result.stats.retries += outcome.attempts - 1;
    if (outcome.sentinel()) ++result.stats.sentinels;
    a.add(outcome.answer);
  }

  a.produced_at = provider.deterministic() ? reproducible_now() : std::chrono::system_clock::now();
  a.provider_info = provider.describe();
  nlohmann::ordered_json details;
  details["artifacts_probed"] = needs_artifacts && harness != nullptr;
  details["artifacts"] = artifact::to_json(findings);
  details["stats"] = {{"provider_calls", result.stats.provider_calls},
                      {"retries", result.stats.retries},
                      {"sentinels", result.stats.sentinels},
                      {"execution_answers", result.stats.execution_answers},
                      {"max_request_tokens", result.stats.max_request_tokens}};
  a.details = std::move(details);
  return result;
}

}  // namespace recap::evaluator
