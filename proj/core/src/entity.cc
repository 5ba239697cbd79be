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

#include "anonpal/entity.h"

#include "absl/strings/str_cat.h"
#include "anonpal/errors.h"

namespace anonpal {

absl::string_view SpanSourceName(SpanSource source) {
  switch (source) {
    case SpanSource::kRules:
      return "RULES";
    case SpanSource::kLlm:
      return "LLM";
    case SpanSource::kUserEdit:
      return "USER_EDIT";
  }
  return "RULES";
}

std::optional<SpanSource> ParseSpanSource(absl::string_view name) {
  for (SpanSource s : {SpanSource::kRules, SpanSource::kLlm,
                       SpanSource::kUserEdit}) {
    if (SpanSourceName(s) == name) return s;
  }
  return std::nullopt;
}

bool IsCharBoundary(absl::string_view text, std::size_t offset) {
  if (offset == 0 || offset >= text.size()) return offset <= text.size();
  return (static_cast<unsigned char>(text[offset]) & 0xC0) != 0x80;
}

absl::Status ValidateSpans(absl::string_view text,
                           const std::vector<EntitySpan>& spans) {
  std::size_t previous_end = 0;
  for (std::size_t i = 0; i < spans.size(); ++i) {
    const EntitySpan& span = spans[i];
    if (span.start >= span.end || span.end > text.size()) {
      return MakeError(ErrorKind::kSpanMismatch,
                       absl::StrCat("span ", i, " has invalid bounds [",
                                    span.start, ", ", span.end, ")"));
    }
    if (!IsCharBoundary(text, span.start) || !IsCharBoundary(text, span.end)) {
      return MakeError(ErrorKind::kSpanMismatch,
                       absl::StrCat("span ", i, " splits a UTF-8 character"));
    }
    if (text.substr(span.start, span.end - span.start) != span.surface) {
      return MakeError(ErrorKind::kSpanMismatch,
                       absl::StrCat("span ", i, " surface does not match text"));
    }
    if (i > 0 && span.start < previous_end) {
      return MakeError(ErrorKind::kSpanMismatch,
                       absl::StrCat("span ", i,
                                    " overlaps or precedes the previous span"));
    }
    previous_end = span.end;
  }
  return absl::OkStatus();
}

}  // namespace anonpal
