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

#include <map>
#include <string>

#include <json.hpp>

#include "recap/analysis/agreement.hpp"
#include "recap/analysis/corpus.hpp"

namespace recap::analysis {

// File name -> CSV (or JSON summary) contents. Undefined values are empty
// cells; numbers use the shortest round-trip form.
using Tables = std::map<std::string, std::string>;

Tables agreement_tables(const AgreementReport& report);
nlohmann::ordered_json agreement_summary(const AgreementReport& report);

Tables corpus_tables(const CorpusAnalytics& analytics);
nlohmann::ordered_json corpus_summary(const CorpusAnalytics& analytics);

}  // namespace recap::analysis
