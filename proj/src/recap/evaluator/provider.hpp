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

#include <string>

#include <json.hpp>

namespace recap::evaluator {

struct ProviderRequest {
  std::string system_prompt;
  nlohmann::ordered_json response_schema;
  std::string user_content;
  size_t max_response_tokens = 1024;
  // Routing keys for scripted providers; real providers ignore them.
  std::string paper_id;
  std::string item_id;
};

// Text-completion backend. complete() throws Error(kProviderUnavailable) on
// transport/auth failures and Error(kContextOverflow) when the backend
// rejects the request size; anything it returns is parsed by the caller.
class Provider {
 public:
  virtual ~Provider() = default;
  virtual std::string complete(const ProviderRequest& request) = 0;
  virtual nlohmann::ordered_json describe() const = 0;
  // Deterministic providers get reproducible timestamps.
  virtual bool deterministic() const { return false; }
};

}  // namespace recap::evaluator
