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

#include <cstddef>
#include <string_view>

namespace recap::artifact {

// Token estimate from code points: ceil(code_points / chars_per_token).
class TokenEstimator {
 public:
  explicit TokenEstimator(double chars_per_token = 4.0);

  double chars_per_token() const { return chars_per_token_; }
  size_t count(std::string_view text) const;
  // Byte length of the longest whole-code-point prefix worth at most `tokens`.
  size_t prefix_bytes(std::string_view text, size_t tokens) const;

 private:
  double chars_per_token_;
};

}  // namespace recap::artifact
