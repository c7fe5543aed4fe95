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

#include "recap/artifact/tokens.hpp"

#include <cmath>

#include "recap/common/error.hpp"
#include "recap/common/text.hpp"

namespace recap::artifact {

TokenEstimator::TokenEstimator(double chars_per_token) : chars_per_token_(chars_per_token) {
  if (!(chars_per_token > 0)) fail(ErrorCode::kInvalidArgument, "chars_per_token must be positive");
}

size_t TokenEstimator::count(std::string_view text) const {
  return static_cast<size_t>(std::ceil(static_cast<double>(text::utf8_length(text)) / chars_per_token_));
}

size_t TokenEstimator::prefix_bytes(std::string_view text, size_t tokens) const {
  const double chars = std::floor(static_cast<double>(tokens) * chars_per_token_);
  return text::utf8_prefix_bytes(text, static_cast<size_t>(chars));
}

}  // namespace recap::artifact
