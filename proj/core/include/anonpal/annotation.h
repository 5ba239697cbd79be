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

// Parser for the "(surface)[Label]" annotated echo produced by the LLM
// recognizer, and alignment of parsed entities back onto the input text.
//
// Grammar:
//   annotated := (plain | entity | label_only)*
//   entity    := "(" surface ")" "[" label "]"
//   label_only := "(" "[" label "]" ("," "[" label "]")* ")"
//              | "(" known-label ")"
// A surface may contain balanced parentheses. A label is non-empty and
// contains no brackets, parentheses or newlines. Markup that does not fit
// the grammar is kept as plain text and reported in `warnings`.

#ifndef ANONPAL_ANNOTATION_H_
#define ANONPAL_ANNOTATION_H_

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "anonpal/entity.h"
#include "anonpal/taxonomy.h"

namespace anonpal {

struct AnnotatedEntity {
  std::string surface;
  std::string label;
  // Offset of the surface within the stripped text.
  std::size_t stripped_offset = 0;

  friend bool operator==(const AnnotatedEntity&, const AnnotatedEntity&) = default;
};

struct ParsedAnnotations {
  std::vector<AnnotatedEntity> entities;
  // Labels annotated without a surface, e.g. "([Dynamic Password])".
  std::vector<std::string> label_only;
  // Input with all recognized markup removed.
  std::string stripped;
  std::vector<std::string> warnings;
};

// Returns true for labels that may appear bare, as "(Label)".
using KnownLabelPredicate = std::function<bool(absl::string_view)>;

ParsedAnnotations ParseAnnotations(absl::string_view annotated,
                                   const KnownLabelPredicate& is_known_label = {});

// Inverse of ParseAnnotations for plain segments free of markup:
// plain[0] entity[0] plain[1] ... entity[n-1] plain[n].
std::string RenderAnnotations(const std::vector<std::string>& plain,
                              const std::vector<AnnotatedEntity>& entities);

// Collapses whitespace runs to one space and trims both ends.
std::string NormalizeWhitespace(absl::string_view text);

// Finds `needle` in `haystack` at or after `from`, letting any whitespace run
// in the needle match any non-empty whitespace run. Returns [start, end).
std::optional<std::pair<std::size_t, std::size_t>> FindWhitespaceTolerant(
    absl::string_view haystack, absl::string_view needle, std::size_t from = 0);

struct AlignedSpans {
  std::vector<EntitySpan> spans;
  std::vector<std::string> warnings;
};

// Locates each parsed entity in `original`. When the echo is faithful (equal
// after whitespace normalization) surfaces are matched left to right;
// otherwise each is searched independently and non-overlapping hits kept.
// Labels are resolved through `taxonomy`. Fails with kAlignmentFailed only
// when no entity at all could be placed.
absl::StatusOr<AlignedSpans> Align(const std::vector<AnnotatedEntity>& entities,
                                   absl::string_view stripped,
                                   absl::string_view original,
                                   const ScoreTable& taxonomy,
                                   SpanSource source);

}  // namespace anonpal

#endif  // ANONPAL_ANNOTATION_H_
