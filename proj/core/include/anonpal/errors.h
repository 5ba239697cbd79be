// Copyright 2026 The anonpal Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef ANONPAL_ERRORS_H_
#define ANONPAL_ERRORS_H_

#include <optional>
#include <string>

#include "absl/status/status.h"
#include "absl/strings/string_view.h"

namespace anonpal {

// Domain error kinds. Each maps onto a canonical absl status code and is
// attached to the status as a payload so callers can branch on the kind
// without parsing messages.
enum class ErrorKind {
  kSchemaError,
  kMissingCategory,
  kRangeError,
  kUnresolvedScore,
  kZeroMass,
  kEmptyFrontier,
  kTooLarge,
  kEmptyInput,
  kAlignmentFailed,
  kTransport,
  kBadResponse,
  kExhaustedRetries,
  kSpanMismatch,
  kInconsistent,
  kOutOfVocab,
  kBadIndex,
  kIoError,
  kCorruptSession,
  kCorpusError,
  kConfigError,
  kBindError,
};

absl::string_view ErrorKindName(ErrorKind kind);

absl::Status MakeError(ErrorKind kind, absl::string_view message);

// Returns the kind attached by MakeError, if any.
std::optional<ErrorKind> ErrorKindOf(const absl::Status& status);

// Kind name, or the canonical status code name for statuses without a kind.
std::string ErrorCode(const absl::Status& status);

// Prepends `context` to the message; code and payloads are kept.
absl::Status Annotate(const absl::Status& status, absl::string_view context);

inline bool IsErrorKind(const absl::Status& status, ErrorKind kind) {
  return ErrorKindOf(status) == kind;
}

}  // namespace anonpal

#endif  // ANONPAL_ERRORS_H_
