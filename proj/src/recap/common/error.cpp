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

#include "recap/common/error.hpp"

namespace recap {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kIo: return "Io";
    case ErrorCode::kConfig: return "Config";
    case ErrorCode::kMalformedSchema: return "MalformedSchema";
    case ErrorCode::kDuplicateItemId: return "DuplicateItemId";
    case ErrorCode::kEmptyDomain: return "EmptyDomain";
    case ErrorCode::kMalformedAssessment: return "MalformedAssessment";
    case ErrorCode::kUnknownItem: return "UnknownItem";
    case ErrorCode::kNonTernaryItem: return "NonTernaryItem";
    case ErrorCode::kUnreadableDocument: return "UnreadableDocument";
    case ErrorCode::kEncryptedDocument: return "EncryptedDocument";
    case ErrorCode::kMalformedManifest: return "MalformedManifest";
    case ErrorCode::kDuplicatePaperId: return "DuplicatePaperId";
    case ErrorCode::kMissingExtras: return "MissingExtras";
    case ErrorCode::kMalformedResponse: return "MalformedResponse";
    case ErrorCode::kOutOfDomainValue: return "OutOfDomainValue";
    case ErrorCode::kProviderUnavailable: return "ProviderUnavailable";
    case ErrorCode::kContextOverflow: return "ContextOverflow";
    case ErrorCode::kEmptyMatrix: return "EmptyMatrix";
    case ErrorCode::kNoComparableItems: return "NoComparableItems";
    case ErrorCode::kTooFewGroups: return "TooFewGroups";
    case ErrorCode::kNoMatchingPapers: return "NoMatchingPapers";
  }
  return "Unknown";
}

}  // namespace recap
