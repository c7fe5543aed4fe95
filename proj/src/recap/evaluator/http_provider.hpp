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
#include <optional>
#include <string>

#include "recap/evaluator/provider.hpp"

namespace recap::evaluator {

struct HttpProviderConfig {
  std::string endpoint;  // base URL; "/chat/completions" is appended
  std::string model;
  std::string api_key_env = "OPENAI_API_KEY";
  double timeout_s = 300;
  unsigned transient_retries = 3;            // for 429 and 5xx
  std::chrono::milliseconds retry_wait{2000};  // doubled per retry
  std::optional<double> temperature;         // unset: provider default
};

// OpenAI-compatible chat completions with a json_schema response format.
// Safe for concurrent use. 401/403 and transport failures throw
// ProviderUnavailable, as do 429/5xx once retries are spent; a
// context-length rejection throws ContextOverflow.
class HttpProvider : public Provider {
 public:
  explicit HttpProvider(HttpProviderConfig config);

  std::string complete(const ProviderRequest& request) override;
  nlohmann::ordered_json describe() const override;

  // Request body sent for `request`.
  nlohmann::ordered_json body(const ProviderRequest& request) const;

 private:
  HttpProviderConfig config_;
  std::string api_key_;
};

}  // namespace recap::evaluator
