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

#include "recap/app/run_state.hpp"

#include "recap/common/error.hpp"

namespace recap::app {

using nlohmann::json;
using nlohmann::ordered_json;

RunState RunState::load(const std::filesystem::path& output_dir) {
  RunState s;
  const auto path = output_dir / kFileName;
  std::error_code ec;
  if (!std::filesystem::exists(path, ec)) return s;
  const json doc = json::parse(read_file(path), nullptr, false);
  if (doc.is_discarded() || !doc.is_object()) fail(ErrorCode::kConfig, path.string() + " is not a run state file");
  try {
    s.updated_at = doc.value("updated_at", "");
    const json processed = doc.value("processed", json::object());
    const json unprocessed = doc.value("unprocessed", json::object());
    for (const auto& [id, p] : processed.items()) {
      s.processed_[id] = {p.value("provider_calls", size_t{0}), p.value("retries", size_t{0}),
                          p.value("sentinels", size_t{0}), p.value("finished_at", "")};
    }
    for (const auto& [id, p] : unprocessed.items()) {
      if (!s.processed_.count(id)) s.unprocessed_[id] = {p.value("reason", ""), p.value("message", "")};
    }
  } catch (const json::exception& e) {
    fail(ErrorCode::kConfig, path.string() + ": " + e.what());
  }
  return s;
}

void RunState::mark_processed(const std::string& paper_id, ProcessedPaper info) {
  unprocessed_.erase(paper_id);
  processed_[paper_id] = std::move(info);
}

void RunState::mark_unprocessed(const std::string& paper_id, UnprocessedPaper info) {
  processed_.erase(paper_id);
  unprocessed_[paper_id] = std::move(info);
}

ordered_json RunState::to_json() const {
  ordered_json processed = ordered_json::object();
  for (const auto& [id, p] : processed_) {
    processed[id] = {{"provider_calls", p.provider_calls},
                     {"retries", p.retries},
                     {"sentinels", p.sentinels},
                     {"finished_at", p.finished_at}};
  }
  ordered_json unprocessed = ordered_json::object();
  for (const auto& [id, u] : unprocessed_) unprocessed[id] = {{"reason", u.reason}, {"message", u.message}};
  return {{"updated_at", updated_at}, {"processed", processed}, {"unprocessed", unprocessed}};
}

void RunState::save(const std::filesystem::path& output_dir) const {
  write_file_atomic(output_dir / kFileName, to_json().dump(2) + "\n");
}

}  // namespace recap::app
