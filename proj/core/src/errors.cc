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

#include "anonpal/errors.h"

#include <array>
#include <string>

#include "absl/strings/cord.h"
#include "absl/strings/str_cat.h"

namespace anonpal {
namespace {

constexpr char kPayloadUrl[] = "type.anonpal/error_kind";

struct KindInfo {
  ErrorKind kind;
  absl::string_view name;
  absl::StatusCode code;
};

constexpr std::array<KindInfo, 21> kKinds = {{
    {ErrorKind::kSchemaError, "SchemaError", absl::StatusCode::kInvalidArgument},
    {ErrorKind::kMissingCategory, "MissingCategory",
     absl::StatusCode::kInvalidArgument},
    {ErrorKind::kRangeError, "RangeError", absl::StatusCode::kOutOfRange},
    {ErrorKind::kUnresolvedScore, "UnresolvedScore",
     absl::StatusCode::kFailedPrecondition},
    {ErrorKind::kZeroMass, "ZeroMass", absl::StatusCode::kFailedPrecondition},
    {ErrorKind::kEmptyFrontier, "EmptyFrontier",
     absl::StatusCode::kFailedPrecondition},
    {ErrorKind::kTooLarge, "TooLarge", absl::StatusCode::kResourceExhausted},
    {ErrorKind::kEmptyInput, "EmptyInput", absl::StatusCode::kInvalidArgument},
    {ErrorKind::kAlignmentFailed, "AlignmentFailed",
     absl::StatusCode::kDataLoss},
    {ErrorKind::kTransport, "Transport", absl::StatusCode::kUnavailable},
    {ErrorKind::kBadResponse, "BadResponse", absl::StatusCode::kDataLoss},
    {ErrorKind::kExhaustedRetries, "ExhaustedRetries",
     absl::StatusCode::kResourceExhausted},
    {ErrorKind::kSpanMismatch, "SpanMismatch",
     absl::StatusCode::kInvalidArgument},
    {ErrorKind::kInconsistent, "Inconsistent", absl::StatusCode::kDataLoss},
    {ErrorKind::kOutOfVocab, "OutOfVocab", absl::StatusCode::kNotFound},
    {ErrorKind::kBadIndex, "BadIndex", absl::StatusCode::kOutOfRange},
    {ErrorKind::kIoError, "IoError", absl::StatusCode::kInternal},
    {ErrorKind::kCorruptSession, "CorruptSession", absl::StatusCode::kDataLoss},
    {ErrorKind::kCorpusError, "CorpusError", absl::StatusCode::kInvalidArgument},
    {ErrorKind::kConfigError, "ConfigError", absl::StatusCode::kInvalidArgument},
    {ErrorKind::kBindError, "BindError", absl::StatusCode::kUnavailable},
}};

const KindInfo& Info(ErrorKind kind) {
  for (const auto& info : kKinds) {
    if (info.kind == kind) return info;
  }
  return kKinds[0];
}

}  // namespace

absl::string_view ErrorKindName(ErrorKind kind) { return Info(kind).name; }

absl::Status MakeError(ErrorKind kind, absl::string_view message) {
  const KindInfo& info = Info(kind);
  absl::Status status(info.code, absl::StrCat(info.name, ": ", message));
  status.SetPayload(kPayloadUrl, absl::Cord(std::string(info.name)));
  return status;
}

std::optional<ErrorKind> ErrorKindOf(const absl::Status& status) {
  absl::optional<absl::Cord> payload = status.GetPayload(kPayloadUrl);
  if (!payload.has_value()) return std::nullopt;
  const std::string name(*payload);
  for (const auto& info : kKinds) {
    if (info.name == name) return info.kind;
  }
  return std::nullopt;
}

std::string ErrorCode(const absl::Status& status) {
  if (std::optional<ErrorKind> kind = ErrorKindOf(status)) {
    return std::string(ErrorKindName(*kind));
  }
  return absl::StatusCodeToString(status.code());
}

absl::Status Annotate(const absl::Status& status, absl::string_view context) {
  if (status.ok()) return status;
  absl::Status out(status.code(), absl::StrCat(context, ": ", status.message()));
  status.ForEachPayload([&out](absl::string_view url, const absl::Cord& payload) {
    out.SetPayload(url, payload);
  });
  return out;
}

}  // namespace anonpal
