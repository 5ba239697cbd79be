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

#include "anonpal/annotation.h"

#include <algorithm>
#include <utility>

#include "absl/strings/ascii.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"
#include "absl/strings/str_split.h"
#include "absl/strings/strip.h"
#include "anonpal/errors.h"

namespace anonpal {
namespace {

constexpr std::size_t kNoMatch = absl::string_view::npos;

bool IsSpace(char c) { return absl::ascii_isspace(static_cast<unsigned char>(c)); }

// match[i] holds the index of the parenthesis closing the '(' at i.
std::vector<std::size_t> MatchParens(absl::string_view text) {
  std::vector<std::size_t> match(text.size(), kNoMatch);
  std::vector<std::size_t> open;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '(') {
      open.push_back(i);
    } else if (text[i] == ')' && !open.empty()) {
      match[open.back()] = i;
      open.pop_back();
    }
  }
  return match;
}

bool IsValidLabel(absl::string_view label) {
  if (absl::StripAsciiWhitespace(label).empty()) return false;
  return label.find_first_of("[]()\n") == absl::string_view::npos;
}

// "[A]" or "[A], [B], ..." with optional surrounding whitespace.
bool IsLabelList(absl::string_view inner, std::vector<std::string>* labels) {
  std::vector<std::string> found;
  for (absl::string_view part : absl::StrSplit(inner, ',')) {
    part = absl::StripAsciiWhitespace(part);
    if (part.size() < 3 || part.front() != '[' || part.back() != ']') {
      return false;
    }
    absl::string_view label = part.substr(1, part.size() - 2);
    if (!IsValidLabel(label)) return false;
    found.emplace_back(absl::StripAsciiWhitespace(label));
  }
  if (found.empty()) return false;
  *labels = std::move(found);
  return true;
}

void DropTrailingSpace(std::string& text) {
  if (!text.empty() && text.back() == ' ') text.pop_back();
}

}  // namespace

ParsedAnnotations ParseAnnotations(absl::string_view annotated,
                                   const KnownLabelPredicate& is_known_label) {
  ParsedAnnotations result;
  const std::vector<std::size_t> match = MatchParens(annotated);
  std::size_t i = 0;
  while (i < annotated.size()) {
    if (annotated[i] != '(') {
      result.stripped.push_back(annotated[i++]);
      continue;
    }
    const std::size_t close = match[i];
    if (close != kNoMatch) {
      const absl::string_view inner = annotated.substr(i + 1, close - i - 1);
      if (close + 1 < annotated.size() && annotated[close + 1] == '[') {
        const std::size_t label_end = annotated.find(']', close + 2);
        if (label_end != kNoMatch && !inner.empty()) {
          const absl::string_view label =
              annotated.substr(close + 2, label_end - close - 2);
          if (IsValidLabel(label)) {
            result.entities.push_back(AnnotatedEntity{
                std::string(inner), std::string(absl::StripAsciiWhitespace(label)),
                result.stripped.size()});
            absl::StrAppend(&result.stripped, inner);
            i = label_end + 1;
            continue;
          }
        }
        result.warnings.push_back(
            absl::StrCat("malformed entity markup at offset ", i));
      } else {
        std::vector<std::string> labels;
        if (IsLabelList(inner, &labels)) {
          DropTrailingSpace(result.stripped);
          for (std::string& label : labels) {
            result.label_only.push_back(std::move(label));
          }
          i = close + 1;
          continue;
        }
        const absl::string_view bare = absl::StripAsciiWhitespace(inner);
        if (is_known_label && IsValidLabel(bare) && is_known_label(bare)) {
          DropTrailingSpace(result.stripped);
          result.label_only.emplace_back(bare);
          i = close + 1;
          continue;
        }
      }
    }
    result.stripped.push_back(annotated[i++]);
  }
  return result;
}

std::string RenderAnnotations(const std::vector<std::string>& plain,
                              const std::vector<AnnotatedEntity>& entities) {
  std::string out;
  for (std::size_t i = 0; i < entities.size(); ++i) {
    if (i < plain.size()) out += plain[i];
    absl::StrAppend(&out, "(", entities[i].surface, ")[", entities[i].label,
                    "]");
  }
  if (plain.size() > entities.size()) out += plain[entities.size()];
  return out;
}

std::string NormalizeWhitespace(absl::string_view text) {
  std::vector<absl::string_view> words =
      absl::StrSplit(text, absl::ByAnyChar(" \t\r\n\f\v"), absl::SkipEmpty());
  return absl::StrJoin(words, " ");
}

std::optional<std::pair<std::size_t, std::size_t>> FindWhitespaceTolerant(
    absl::string_view haystack, absl::string_view needle, std::size_t from) {
  std::vector<absl::string_view> words =
      absl::StrSplit(needle, absl::ByAnyChar(" \t\r\n\f\v"), absl::SkipEmpty());
  if (words.empty() || from > haystack.size()) return std::nullopt;
  std::size_t pos = from;
  while (true) {
    const std::size_t start = haystack.find(words.front(), pos);
    if (start == kNoMatch) return std::nullopt;
    std::size_t cursor = start + words.front().size();
    bool matched = true;
    for (std::size_t w = 1; w < words.size(); ++w) {
      std::size_t gap = cursor;
      while (gap < haystack.size() && IsSpace(haystack[gap])) ++gap;
      if (gap == cursor || haystack.substr(gap, words[w].size()) != words[w]) {
        matched = false;
        break;
      }
      cursor = gap + words[w].size();
    }
    if (matched) return std::make_pair(start, cursor);
    pos = start + 1;
  }
}

absl::StatusOr<AlignedSpans> Align(const std::vector<AnnotatedEntity>& entities,
                                   absl::string_view stripped,
                                   absl::string_view original,
                                   const ScoreTable& taxonomy,
                                   SpanSource source) {
  AlignedSpans result;
  const bool faithful =
      NormalizeWhitespace(stripped) == NormalizeWhitespace(original);
  std::vector<EntitySpan> placed;
  std::size_t cursor = 0;
  for (const AnnotatedEntity& entity : entities) {
    auto hit = FindWhitespaceTolerant(original, entity.surface, cursor);
    if (!hit.has_value() && !faithful) {
      for (std::size_t from = 0; (hit = FindWhitespaceTolerant(
                                      original, entity.surface, from));
           from = hit->first + 1) {
        const bool overlaps = std::any_of(
            placed.begin(), placed.end(), [&](const EntitySpan& s) {
              return hit->first < s.end && s.start < hit->second;
            });
        if (!overlaps) break;
      }
    }
    if (!hit.has_value()) {
      result.warnings.push_back(absl::StrCat("entity '", entity.label,
                                             "' not found in input; dropped"));
      continue;
    }
    cursor = hit->second;
    EntitySpan span;
    span.start = hit->first;
    span.end = hit->second;
    span.surface = std::string(original.substr(span.start, span.end - span.start));
    span.type_name = entity.label;
    span.category = taxonomy.CategoryOf(entity.label);
    span.source = source;
    if (!taxonomy.IsKnownName(entity.label)) {
      result.warnings.push_back(absl::StrCat(
          "unknown label '", entity.label, "' mapped to ",
          categories::kOther));
    }
    placed.push_back(std::move(span));
  }
  if (!entities.empty() && placed.empty()) {
    return MakeError(ErrorKind::kAlignmentFailed,
                     "none of the annotated entities occur in the input");
  }
  std::stable_sort(placed.begin(), placed.end(),
                   [](const EntitySpan& a, const EntitySpan& b) {
                     return a.start < b.start;
                   });
  for (EntitySpan& span : placed) {
    if (!result.spans.empty() && span.start < result.spans.back().end) {
      result.warnings.push_back(absl::StrCat("entity '", span.type_name,
                                             "' overlaps a previous entity; "
                                             "dropped"));
      continue;
    }
    result.spans.push_back(std::move(span));
  }
  return result;
}

}  // namespace anonpal
