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

// Consistent, format-preserving pseudonyms for recognized spans.

#ifndef ANONPAL_PSEUDONYMIZER_H_
#define ANONPAL_PSEUDONYMIZER_H_

#include <array>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "anonpal/entity.h"
#include "anonpal/taxonomy.h"
#include "anonpal/tradeoff.h"

namespace anonpal {

using Salt = std::array<std::uint8_t, 16>;

// Per-session surface -> replacement mapping. Injective per category.
// Not synchronized: one writer at a time.
class PseudonymSession {
 public:
  using Key = std::pair<CategoryId, std::string>;

  PseudonymSession(std::string session_id, const Salt& salt,
                   std::chrono::system_clock::time_point created_at =
                       std::chrono::system_clock::now());

  // Random salt.
  static PseudonymSession Fresh(std::string session_id);
  // Salt derived from `seed`, for reproducible runs.
  static PseudonymSession FromSeed(std::string session_id, std::uint64_t seed);

  const std::string& session_id() const { return session_id_; }
  const Salt& salt() const { return salt_; }
  std::chrono::system_clock::time_point created_at() const { return created_at_; }
  const std::map<Key, std::string>& mapping() const { return mapping_; }

  std::optional<std::string> Lookup(const CategoryId& category,
                                    absl::string_view surface) const;
  bool IsTaken(const CategoryId& category, absl::string_view replacement) const;

  // Fails with kInconsistent when the replacement equals the surface or is
  // already used by another surface of the same category.
  absl::Status Insert(const CategoryId& category, std::string surface,
                      std::string replacement);

  // Session-constant date shift in [30, 365] days.
  int DateOffsetDays() const;

 private:
  std::string session_id_;
  Salt salt_{};
  std::chrono::system_clock::time_point created_at_;
  std::map<Key, std::string> mapping_;
  std::map<Key, std::string> reverse_;
};

std::string SessionToJson(const PseudonymSession& session);
// Fails with kCorruptSession on any schema or consistency violation.
absl::StatusOr<PseudonymSession> SessionFromJson(absl::string_view json_text);

struct PseudonymOptions {
  // Type name -> candidate replacements. "Name" and "Nickname" fall back to
  // BuiltinPseudonymNames().
  std::map<std::string, std::vector<std::string>> lists;
  // Make digit pseudonyms of card numbers pass the Luhn check.
  bool luhn_valid_cards = false;
  std::string email_domain = "example.com";
};

const std::vector<std::string>& BuiltinPseudonymNames();

// One entry per non-empty line, trimmed.
absl::StatusOr<std::vector<std::string>> LoadPseudonymList(
    const std::filesystem::path& path);

inline constexpr int kMaxReplacementAttempts = 16;

// Message hashed for list and email strategies:
// category '\x1f' surface, plus '\x1f' attempt when attempt > 0.
std::string PseudonymHashMessage(const CategoryId& category,
                                 absl::string_view surface, int attempt);

// Deterministic in (salt, category, surface) for a fresh session; records
// the result in `session`. Names pick from a list by keyed hash, digit-bearing
// identifiers get keyed digits with separators preserved, emails get a
// keyed local part, dates a session-constant shift, and everything else a
// "[Type Name]" placeholder.
absl::StatusOr<std::string> GenerateReplacement(
    absl::string_view surface, const CategoryId& category,
    absl::string_view type_name, PseudonymSession& session,
    const PseudonymOptions& options = {});

struct ChangeRegion {
  // Offsets into the output text.
  std::size_t start = 0;
  std::size_t end = 0;
  // Offsets of the replaced slice in the input text.
  std::size_t original_start = 0;
  std::size_t original_end = 0;
  std::string replacement;
  CategoryId category;
  std::string type_name;
  SpanSource source = SpanSource::kRules;

  friend bool operator==(const ChangeRegion&, const ChangeRegion&) = default;
};

struct AnonymizedDoc {
  std::string output_text;
  std::vector<ChangeRegion> changes;
  Coordinates achieved;
  std::vector<std::string> warnings;
};

// Replaces exactly the spans whose category is in plan.categories.
absl::StatusOr<AnonymizedDoc> Pseudonymize(absl::string_view text,
                                           const std::vector<EntitySpan>& spans,
                                           const SelectionPlan& plan,
                                           PseudonymSession& session,
                                           const PseudonymOptions& options = {});

struct DiffEntry {
  std::string original_slice;
  std::string replacement;
  CategoryId category;
  std::string type_name;
};

// One entry per change region. Fails with kInconsistent when `doc` does not
// reconstruct against `original`.
absl::StatusOr<std::vector<DiffEntry>> Diff(absl::string_view original,
                                            const AnonymizedDoc& doc);

// Writes `originals[i]` back over change region i.
absl::StatusOr<std::string> Restore(const AnonymizedDoc& doc,
                                    const std::vector<std::string>& originals);

// Replaces the text of region `index` and shifts later regions.
absl::Status EditRegion(AnonymizedDoc& doc, std::size_t index,
                        absl::string_view new_text);

}  // namespace anonpal

#endif  // ANONPAL_PSEUDONYMIZER_H_
