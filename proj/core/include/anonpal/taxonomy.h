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

// Personal-information taxonomy: categories, their member types, and the
// mean privacy/utility ratings used to place each category on the trade-off
// plane.

#ifndef ANONPAL_TAXONOMY_H_
#define ANONPAL_TAXONOMY_H_

#include <compare>
#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"

namespace anonpal {

struct CategoryId {
  std::string value;

  friend auto operator<=>(const CategoryId&, const CategoryId&) = default;
  friend bool operator==(const CategoryId&, const CategoryId&) = default;
};

using CategorySet = std::set<CategoryId>;

// Canonical ids of the shipped categories.
namespace categories {
inline constexpr absl::string_view kBasic = "basic";
inline constexpr absl::string_view kIdentity = "identity";
inline constexpr absl::string_view kOnlineIdentity = "online_identity";
inline constexpr absl::string_view kHealth = "health";
inline constexpr absl::string_view kExercise = "exercise";
inline constexpr absl::string_view kEducationWork = "education_work";
inline constexpr absl::string_view kProperty = "property";
inline constexpr absl::string_view kVerification = "verification";
inline constexpr absl::string_view kCommunication = "communication";
inline constexpr absl::string_view kContacts = "contacts";
inline constexpr absl::string_view kInternetHistory = "internet_history";
inline constexpr absl::string_view kLocation = "location";
inline constexpr absl::string_view kOther = "other";

// All ids a loaded table must contain.
const std::vector<CategoryId>& Canonical();

inline CategoryId Id(absl::string_view id) { return CategoryId{std::string(id)}; }
}  // namespace categories

enum class Provenance { kPaperTable, kPaperText, kConfig, kUnspecified };

absl::string_view ProvenanceName(Provenance provenance);
std::optional<Provenance> ParseProvenance(absl::string_view name);

struct PiType {
  std::string type_name;
  CategoryId category;
};

inline constexpr double kMinRawScore = 1.0;
inline constexpr double kMaxRawScore = 7.0;

struct ScoreEntry {
  CategoryId id;
  std::string name;
  double privacy_raw = 0.0;
  // nullopt marks an unspecified utility rating.
  std::optional<double> utility_raw;
  Provenance privacy_provenance = Provenance::kConfig;
  Provenance utility_provenance = Provenance::kUnspecified;
  std::vector<std::string> types;
  // Alternative spellings (category names, class labels) that also resolve
  // to this category.
  std::vector<std::string> aliases;
};

class ScoreTable {
 public:
  // Validates ranges and uniqueness of ids and type names. Does not require
  // the canonical category set; the file loaders do.
  static absl::StatusOr<ScoreTable> Create(std::vector<ScoreEntry> entries);

  const std::vector<ScoreEntry>& entries() const { return entries_; }
  const ScoreEntry* Find(const CategoryId& id) const;

  std::vector<PiType> types() const;

  // Case-insensitive lookup over type names, aliases and category names.
  // Unknown names resolve to the "other" category.
  CategoryId CategoryOf(absl::string_view type_name) const;
  bool IsKnownName(absl::string_view name) const;

  bool HasUnresolvedUtility() const;

  // Resolves every unspecified utility to `value` (provenance CONFIG).
  absl::StatusOr<ScoreTable> WithUtilityDefault(double value) const;

 private:
  explicit ScoreTable(std::vector<ScoreEntry> entries);

  std::vector<ScoreEntry> entries_;
  std::unordered_map<std::string, CategoryId> lookup_;
};

// The shipped dataset. Privacy means come from the published per-category
// table, utility means from the published running text; the four categories
// without a published utility mean carry PublishedUtilityMean() with
// provenance CONFIG.
const ScoreTable& BuiltinScoreTable();

// Mean of the nine published utility means.
double PublishedUtilityMean();

// Parses the scores data file. Rejects unknown fields and requires every
// canonical category.
absl::StatusOr<ScoreTable> ParseScoreTable(absl::string_view json_text);
absl::StatusOr<ScoreTable> LoadScoreTable(const std::filesystem::path& path);
std::string ScoreTableToJson(const ScoreTable& table);

class NormalizedScoreTable {
 public:
  struct Entry {
    CategoryId id;
    double p_hat = 0.0;
    double m_hat = 0.0;
  };

  // Values must lie in [0,1] and ids must be unique.
  static absl::StatusOr<NormalizedScoreTable> Create(std::vector<Entry> entries);

  const std::vector<Entry>& entries() const { return entries_; }
  const Entry* Find(const CategoryId& id) const;
  std::size_t size() const { return entries_.size(); }

 private:
  explicit NormalizedScoreTable(std::vector<Entry> entries)
      : entries_(std::move(entries)) {}

  std::vector<Entry> entries_;
};

// Per-axis min-max scaling onto [0,1]. An axis with zero range maps every
// category to 0.5.
absl::StatusOr<NormalizedScoreTable> Normalize(const ScoreTable& table);

// Re-applies the same scaling to already-normalized values; the identity on
// any output of Normalize.
NormalizedScoreTable Normalize(const NormalizedScoreTable& table);

}  // namespace anonpal

#endif  // ANONPAL_TAXONOMY_H_
