// Copyright 2026 The mecheval Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "mecheval/status.h"

namespace mecheval {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kMalformedDocument: return "MalformedDocument";
    case ErrorCode::kMissingField: return "MissingField";
    case ErrorCode::kBadEnumValue: return "BadEnumValue";
    case ErrorCode::kInvariantViolation: return "InvariantViolation";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kNotFound: return "NotFound";
    case ErrorCode::kIoError: return "IoError";
    case ErrorCode::kMissingAssessment: return "MissingAssessment";
    case ErrorCode::kStaleRevision: return "StaleRevision";
    case ErrorCode::kUnknownCard: return "UnknownCard";
    case ErrorCode::kEmptyDenominator: return "EmptyDenominator";
    case ErrorCode::kEmptyScoredSample: return "EmptyScoredSample";
    case ErrorCode::kNonpositiveDays: return "NonpositiveDays";
    case ErrorCode::kMissingProvenance: return "MissingProvenance";
    case ErrorCode::kTooFewCurators: return "TooFewCurators";
    case ErrorCode::kDanglingEndpoint: return "DanglingEndpoint";
    case ErrorCode::kDuplicateId: return "DuplicateId";
    case ErrorCode::kSignMismatch: return "SignMismatch";
    case ErrorCode::kUnknownEntity: return "UnknownEntity";
    case ErrorCode::kNonpositiveFold: return "NonpositiveFold";
    case ErrorCode::kUnsignedEdge: return "UnsignedEdge";
    case ErrorCode::kDisconnectedPath: return "DisconnectedPath";
    case ErrorCode::kUnknownEdge: return "UnknownEdge";
    case ErrorCode::kUnknownObservation: return "UnknownObservation";
    case ErrorCode::kPendingVerdicts: return "PendingVerdicts";
    case ErrorCode::kParseFailures: return "ParseFailures";
    case ErrorCode::kMissingInput: return "MissingInput";
    case ErrorCode::kDuplicateRun: return "DuplicateRun";
    case ErrorCode::kUnknownRun: return "UnknownRun";
    case ErrorCode::kAlreadyClaimed: return "AlreadyClaimed";
    case ErrorCode::kNotClaimant: return "NotClaimant";
    case ErrorCode::kUnknownItem: return "UnknownItem";
    case ErrorCode::kUnauthorized: return "Unauthorized";
  }
  return "Unknown";
}

std::string Error::ToString() const {
  std::string out(ErrorCodeName(code));
  if (!path.empty()) out += "(" + path + ")";
  if (!detail.empty()) out += ": " + detail;
  return out;
}

std::string JoinErrors(const ErrorList& errors, std::string_view sep) {
  std::string out;
  for (const Error& e : errors) {
    if (!out.empty()) out += sep;
    out += e.ToString();
  }
  return out;
}

}  // namespace mecheval
