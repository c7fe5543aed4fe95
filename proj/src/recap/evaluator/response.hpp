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

#include <optional>
#include <string_view>

#include "recap/checklist/assessment.hpp"
#include "recap/checklist/schema.hpp"

namespace recap::evaluator {

// The first balanced JSON object in `raw` after removing markdown fences.
std::optional<std::string_view> find_json_object(std::string_view raw);

// Throws MalformedResponse (no object, bad JSON, missing or non-string
// "answer") or OutOfDomainValue. Values match the domain after trimming and
// ignoring case; the stored value is the domain's spelling.
checklist::FieldAnswer parse_field_response(const checklist::ChecklistItem& item, std::string_view raw);

}  // namespace recap::evaluator
