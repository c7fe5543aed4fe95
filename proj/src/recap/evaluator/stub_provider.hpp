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

#include <atomic>
#include <filesystem>
#include <map>
#include <mutex>
#include <string>
#include <vector>

#include "recap/evaluator/provider.hpp"

namespace recap::evaluator {

// Scripted provider. Script: {paper_id: {item_id: response | [responses]}}.
// A response is either an answer value, wrapped as
// {"answer": v, "disambiguation": "scripted"}, or {"raw": text} returned
// verbatim. A list is consumed one entry per call; the last entry repeats.
// Unscripted fields get a response that never parses.
class StubProvider : public Provider {
 public:
  explicit StubProvider(nlohmann::json script, std::string label = "script");

  // Script from a JSON file, or the echo stub when `path` is a directory of
  // assessment files (each field answered with the stored value).
  static std::unique_ptr<StubProvider> from_path(const std::filesystem::path& path);

  std::string complete(const ProviderRequest& request) override;
  nlohmann::ordered_json describe() const override;
  bool deterministic() const override { return true; }

  size_t calls() const { return calls_.load(); }

 private:
  nlohmann::json script_;
  std::string label_;
  std::mutex mu_;
  std::map<std::pair<std::string, std::string>, size_t> cursor_;
  std::atomic<size_t> calls_{0};
};

inline constexpr const char* kUnscriptedResponse = "(no scripted response for this field)";

}  // namespace recap::evaluator
