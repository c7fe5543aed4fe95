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

#include "recap/evaluator/rate_limit.hpp"

#include <thread>

#include "recap/common/error.hpp"

namespace recap::evaluator {

RateLimitedProvider::RateLimitedProvider(std::shared_ptr<Provider> inner, double requests_per_second)
    : inner_(std::move(inner)), rate_(requests_per_second) {
  if (!inner_) fail(ErrorCode::kInvalidArgument, "rate limiter needs a provider");
  if (rate_ > 0) {
    interval_ = std::chrono::duration_cast<std::chrono::steady_clock::duration>(
        std::chrono::duration<double>(1.0 / rate_));
  }
}

std::string RateLimitedProvider::complete(const ProviderRequest& request) {
  if (rate_ > 0) {
    std::chrono::steady_clock::time_point slot;
    {
      std::lock_guard lock(mu_);
      slot = std::max(next_, std::chrono::steady_clock::now());
      next_ = slot + interval_;
    }
    std::this_thread::sleep_until(slot);
  }
  return inner_->complete(request);
}

nlohmann::ordered_json RateLimitedProvider::describe() const {
  auto info = inner_->describe();
  if (rate_ > 0) info["rate_ceiling_per_s"] = rate_;
  return info;
}

}  // namespace recap::evaluator
