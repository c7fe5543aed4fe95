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
#include <memory>
#include <mutex>

#include "recap/evaluator/provider.hpp"

namespace recap::evaluator {

// Spaces request starts at least 1/requests_per_second apart across all
// threads. A non-positive rate disables the ceiling.
class RateLimitedProvider : public Provider {
 public:
  RateLimitedProvider(std::shared_ptr<Provider> inner, double requests_per_second);

  std::string complete(const ProviderRequest& request) override;
  nlohmann::ordered_json describe() const override;
  bool deterministic() const override { return inner_->deterministic(); }

 private:
  std::shared_ptr<Provider> inner_;
  double rate_;
  std::chrono::steady_clock::duration interval_{};
  std::mutex mu_;
  std::chrono::steady_clock::time_point next_{};
};

}  // namespace recap::evaluator
