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

#ifndef MECHEVAL_STATUS_H_
#define MECHEVAL_STATUS_H_

#include <cassert>
#include <initializer_list>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace mecheval {

// Every failure the library reports. Names follow the operation contracts so
// callers can branch on them without string matching.
enum class ErrorCode {
  kMalformedDocument,
  kMissingField,
  kBadEnumValue,
  kInvariantViolation,
  kInvalidArgument,
  kNotFound,
  kIoError,
  // judgments
  kMissingAssessment,
  kStaleRevision,
  kUnknownCard,
  // metrics
  kEmptyDenominator,
  kEmptyScoredSample,
  kNonpositiveDays,
  kMissingProvenance,
  // refset
  kTooFewCurators,
  // model graph
  kDanglingEndpoint,
  kDuplicateId,
  kSignMismatch,
  kUnknownEntity,
  // explanation checker
  kNonpositiveFold,
  kUnsignedEdge,
  kDisconnectedPath,
  kUnknownEdge,
  kUnknownObservation,
  kPendingVerdicts,
  // harness
  kParseFailures,
  kMissingInput,
  kDuplicateRun,
  kUnknownRun,
  kAlreadyClaimed,
  kNotClaimant,
  kUnknownItem,
  kUnauthorized,
};

std::string_view ErrorCodeName(ErrorCode code);

struct Error {
  ErrorCode code;
  // Dotted field path or entity id the error refers to; may be empty.
  std::string path;
  std::string detail;

  std::string ToString() const;
  friend bool operator==(const Error&, const Error&) = default;
};

using ErrorList = std::vector<Error>;

// Value-or-errors. Parsers return every violation they find, so the error
// side is a list rather than a single error.
template <typename T>
class Result {
 public:
  Result(T value) : state_(std::move(value)) {}  // NOLINT
  Result(Error error) : state_(ErrorList{std::move(error)}) {}  // NOLINT
  Result(ErrorList errors) : state_(std::move(errors)) {  // NOLINT
    assert(!std::get<ErrorList>(state_).empty());
  }

  bool ok() const { return std::holds_alternative<T>(state_); }
  explicit operator bool() const { return ok(); }

  const T& value() const& { return std::get<T>(state_); }
  T& value() & { return std::get<T>(state_); }
  T&& value() && { return std::get<T>(std::move(state_)); }
  const T& operator*() const& { return value(); }
  T& operator*() & { return value(); }
  const T* operator->() const { return &value(); }
  T* operator->() { return &value(); }

  const ErrorList& errors() const { return std::get<ErrorList>(state_); }
  const Error& error() const { return errors().front(); }
  ErrorCode code() const { return error().code; }

 private:
  std::variant<T, ErrorList> state_;
};

class Status {
 public:
  Status() = default;
  Status(Error error) : errors_{std::move(error)} {}  // NOLINT
  Status(ErrorList errors) : errors_(std::move(errors)) {}  // NOLINT

  static Status Ok() { return Status(); }

  bool ok() const { return errors_.empty(); }
  explicit operator bool() const { return ok(); }
  const ErrorList& errors() const { return errors_; }
  const Error& error() const { return errors_.front(); }
  ErrorCode code() const { return error().code; }

 private:
  ErrorList errors_;
};

inline Error MakeError(ErrorCode code, std::string path, std::string detail = {}) {
  return Error{code, std::move(path), std::move(detail)};
}

std::string JoinErrors(const ErrorList& errors, std::string_view sep = "\n");

}  // namespace mecheval

#endif  // MECHEVAL_STATUS_H_
