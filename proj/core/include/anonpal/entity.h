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

#ifndef ANONPAL_ENTITY_H_
#define ANONPAL_ENTITY_H_

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/strings/string_view.h"
#include "anonpal/taxonomy.h"

namespace anonpal {

enum class SpanSource { kRules, kLlm, kUserEdit };

absl::string_view SpanSourceName(SpanSource source);
std::optional<SpanSource> ParseSpanSource(absl::string_view name);

// A located sensitive substring: text[start, end) == surface.
struct EntitySpan {
  std::size_t start = 0;
  std::size_t end = 0;
  std::string surface;
  std::string type_name;
  CategoryId category;
  SpanSource source = SpanSource::kRules;

  friend bool operator==(const EntitySpan&, const EntitySpan&) = default;
};

// Checks bounds, surface equality, UTF-8 boundaries, ordering and
// non-overlap. Returns a kSpanMismatch error describing the first violation.
absl::Status ValidateSpans(absl::string_view text,
                           const std::vector<EntitySpan>& spans);

// True when `offset` does not fall inside a multi-byte UTF-8 sequence.
bool IsCharBoundary(absl::string_view text, std::size_t offset);

}  // namespace anonpal

#endif  // ANONPAL_ENTITY_H_
