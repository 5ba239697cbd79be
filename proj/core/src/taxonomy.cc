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

#include "anonpal/taxonomy.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iterator>
#include <numeric>
#include <set>
#include <sstream>
#include <utility>

#include "absl/strings/ascii.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_replace.h"
#include "absl/strings/str_join.h"
#include "absl/strings/str_split.h"
#include "anonpal/errors.h"
#include "json.hpp"

namespace anonpal {
namespace {

using nlohmann::json;

std::string LookupKey(absl::string_view name) {
  std::string text = absl::StrReplaceAll(name, {{"\xE2\x80\x99", "'"}});
  std::vector<absl::string_view> words =
      absl::StrSplit(text, absl::ByAnyChar(" \t\r\n"), absl::SkipEmpty());
  return absl::AsciiStrToLower(absl::StrJoin(words, " "));
}

bool InRawRange(double value) {
  return std::isfinite(value) && value >= kMinRawScore && value <= kMaxRawScore;
}

// Published utility means, keyed by category.
constexpr std::pair<absl::string_view, double> kPublishedUtility[] = {
    {categories::kEducationWork, 4.91}, {categories::kOnlineIdentity, 4.80},
    {categories::kProperty, 4.74},      {categories::kExercise, 3.84},
    {categories::kLocation, 4.25},      {categories::kContacts, 4.29},
    {categories::kIdentity, 4.31},      {categories::kHealth, 4.61},
    {categories::kBasic, 4.36},
};

std::optional<double> PublishedUtility(absl::string_view id) {
  for (const auto& [key, value] : kPublishedUtility) {
    if (key == id) return value;
  }
  return std::nullopt;
}

ScoreEntry MakeBuiltinEntry(absl::string_view id, std::string name,
                            double privacy, std::vector<std::string> types,
                            std::vector<std::string> aliases) {
  ScoreEntry entry;
  entry.id = categories::Id(id);
  entry.name = std::move(name);
  entry.privacy_raw = privacy;
  entry.privacy_provenance = Provenance::kPaperTable;
  if (std::optional<double> utility = PublishedUtility(id)) {
    entry.utility_raw = *utility;
    entry.utility_provenance = Provenance::kPaperText;
  } else {
    entry.utility_raw = PublishedUtilityMean();
    entry.utility_provenance = Provenance::kConfig;
  }
  entry.types = std::move(types);
  entry.aliases = std::move(aliases);
  return entry;
}

std::vector<ScoreEntry> BuiltinEntries() {
  std::vector<ScoreEntry> entries;
  entries.push_back(MakeBuiltinEntry(
      categories::kBasic, "Personal Basic Information", 4.240,
      {"Name", "Date of Birth", "Age", "Gender", "Ethnicity", "Nationality",
       "Place of Origin", "Marital Status", "Family Relationships", "Address",
       "Phone Number", "Email Address", "Hobbies"},
      {"Birthday", "Ethnicity / Race", "Race", "Hobbies and Interests"}));
  entries.push_back(MakeBuiltinEntry(
      categories::kIdentity, "Personal Identity Information", 5.790,
      {"ID Card", "Passport", "Driver's License", "Work ID"},
      {"Identification Card", "National ID", "Work Permit",
       "Identity Information"}));
  entries.push_back(MakeBuiltinEntry(
      categories::kOnlineIdentity, "Online Identity Identifier Information",
      5.878,
      {"User Account", "User ID", "Instant Messaging Account",
       "Social Media Account", "Nickname", "IP Address"},
      {"Online Identity Information", "Online ID"}));
  entries.push_back(MakeBuiltinEntry(
      categories::kHealth,
      "Personal Health Status and Physiological Information", 4.768,
      {"Weight", "Height", "Blood Type", "Diagnosis", "Prescription",
       "Lab Report", "Health Report", "Medical History"},
      {"Personal Health Information", "Medical Information",
       "Medical Conditions", "Medical Instructions", "Test Reports",
       "Physical Examination Reports"}));
  entries.push_back(MakeBuiltinEntry(
      categories::kExercise, "Personal Exercise Information", 3.327,
      {"Steps", "Step Frequency", "Activity Duration", "Activity Distance",
       "Activity Mode", "Heart Rate"},
      {"Personal Activity Information", "Step Count", "Exercise Duration",
       "Exercise Distance", "Exercise Type", "Heart Rate during Exercise"}));
  entries.push_back(MakeBuiltinEntry(
      categories::kEducationWork, "Personal Education and Work Information",
      5.069,
      {"Education Level", "Degree", "Education History", "Transcript",
       "Occupation", "Job Title", "Employer", "Work Location",
       "Work Experience", "Salary", "Resume"},
      {"Personal Education and Employment Information",
       "Personal Education and Work", "Educational Background",
       "Educational Experience", "Past or Current Educational Majors"}));
  entries.push_back(MakeBuiltinEntry(
      categories::kProperty, "Personal Property Information", 5.619,
      {"Bank Card Number", "Payment Account", "Account Balance",
       "Transaction Order", "Transaction Amount", "Payment Record",
       "Income Status", "Real Estate Information", "Savings Information",
       "Vehicle Information", "Tax Amount", "Virtual Property",
       "Loan Information", "Repayment Information"},
      {"Payment Records", "Property Information", "Deposit Information",
       "Debt Information", "Credit Records", "Credit Information"}));
  entries.push_back(MakeBuiltinEntry(
      categories::kVerification, "Identity Verification Information", 5.966,
      {"Account Login Password", "Bank Card Password", "Payment Password",
       "Account Query Password", "Transaction Password",
       "Bank Card Verification Code", "USB Key", "Dynamic Password",
       "SMS Verification Code", "Personal Digital Certificate",
       "Random Token"},
      {}));
  entries.push_back(MakeBuiltinEntry(
      categories::kCommunication, "Personal Communication Information", 5.188,
      {"Communication Records", "SMS", "Email", "Instant Messaging"}, {}));
  entries.push_back(MakeBuiltinEntry(
      categories::kContacts, "Contacts Information", 5.110,
      {"Address Book", "Friends List", "Group List", "Email Address List",
       "Work Relationships", "Social Relationships"},
      {"Contact Information", "Contacts"}));
  entries.push_back(MakeBuiltinEntry(
      categories::kInternetHistory, "Personal Internet Browsing History",
      5.122,
      {"Web Browsing Records", "Software Usage Records", "Cookies",
       "Social Media Posts", "Search History", "Download History"},
      {"Personal Internet Records", "Web Browsing History",
       "Published Social Information"}));
  entries.push_back(MakeBuiltinEntry(
      categories::kLocation, "Personal Location Information", 4.398,
      {"Region Code", "City Code", "Latitude and Longitude",
       "Accommodation Information", "Neighborhood Code"},
      {"Longitude and Latitude", "Community Code"}));
  entries.push_back(MakeBuiltinEntry(
      categories::kOther, "Other Personal Information", 3.946,
      {"Sexual Orientation", "Marital History", "Religious Beliefs",
       "Unpublicized Criminal Record"},
      {"Marriage History", "Religious Belief", "Undisclosed Criminal Records",
       "Common Languages"}));
  return entries;
}

absl::Status CheckRequiredCategories(const ScoreTable& table) {
  for (const CategoryId& id : categories::Canonical()) {
    if (table.Find(id) == nullptr) {
      return MakeError(ErrorKind::kMissingCategory,
                       absl::StrCat("category '", id.value, "' is missing"));
    }
  }
  return absl::OkStatus();
}

absl::StatusOr<std::vector<std::string>> ReadStringArray(const json& value,
                                                         absl::string_view field) {
  if (!value.is_array()) {
    return MakeError(ErrorKind::kSchemaError,
                     absl::StrCat("'", field, "' must be an array of strings"));
  }
  std::vector<std::string> out;
  for (const json& item : value) {
    if (!item.is_string()) {
      return MakeError(ErrorKind::kSchemaError,
                       absl::StrCat("'", field, "' must contain only strings"));
    }
    out.push_back(item.get<std::string>());
  }
  return out;
}

absl::StatusOr<Provenance> ReadProvenance(const json& object,
                                          absl::string_view axis) {
  auto it = object.find(std::string(axis));
  if (it == object.end() || !it->is_string()) {
    return MakeError(ErrorKind::kSchemaError,
                     absl::StrCat("provenance.", axis, " must be a string"));
  }
  std::optional<Provenance> parsed = ParseProvenance(it->get<std::string>());
  if (!parsed.has_value()) {
    return MakeError(ErrorKind::kSchemaError,
                     absl::StrCat("unknown provenance '",
                                  it->get<std::string>(), "'"));
  }
  return *parsed;
}

absl::StatusOr<ScoreEntry> ParseEntry(const json& object) {
  static const std::set<std::string> kAllowed = {
      "id", "name", "privacy_raw", "utility_raw", "provenance", "types",
      "aliases"};
  if (!object.is_object()) {
    return MakeError(ErrorKind::kSchemaError, "category must be an object");
  }
  for (const auto& [key, unused] : object.items()) {
    if (!kAllowed.contains(key)) {
      return MakeError(ErrorKind::kSchemaError,
                       absl::StrCat("unknown field '", key, "'"));
    }
  }
  for (const char* required :
       {"id", "name", "privacy_raw", "utility_raw", "provenance", "types"}) {
    if (!object.contains(required)) {
      return MakeError(ErrorKind::kSchemaError,
                       absl::StrCat("missing field '", required, "'"));
    }
  }
  ScoreEntry entry;
  if (!object["id"].is_string() || !object["name"].is_string()) {
    return MakeError(ErrorKind::kSchemaError, "id and name must be strings");
  }
  entry.id = CategoryId{object["id"].get<std::string>()};
  entry.name = object["name"].get<std::string>();
  if (!object["privacy_raw"].is_number()) {
    return MakeError(ErrorKind::kSchemaError, "privacy_raw must be a number");
  }
  entry.privacy_raw = object["privacy_raw"].get<double>();
  const json& utility = object["utility_raw"];
  if (utility.is_number()) {
    entry.utility_raw = utility.get<double>();
  } else if (!utility.is_null()) {
    return MakeError(ErrorKind::kSchemaError,
                     "utility_raw must be a number or null");
  }
  const json& provenance = object["provenance"];
  if (!provenance.is_object()) {
    return MakeError(ErrorKind::kSchemaError,
                     "provenance must be an object {privacy, utility}");
  }
  for (const auto& [key, unused] : provenance.items()) {
    if (key != "privacy" && key != "utility") {
      return MakeError(ErrorKind::kSchemaError,
                       absl::StrCat("unknown provenance field '", key, "'"));
    }
  }
  absl::StatusOr<Provenance> privacy_prov = ReadProvenance(provenance, "privacy");
  if (!privacy_prov.ok()) return privacy_prov.status();
  absl::StatusOr<Provenance> utility_prov = ReadProvenance(provenance, "utility");
  if (!utility_prov.ok()) return utility_prov.status();
  entry.privacy_provenance = *privacy_prov;
  entry.utility_provenance =
      entry.utility_raw.has_value() ? *utility_prov : Provenance::kUnspecified;
  absl::StatusOr<std::vector<std::string>> types =
      ReadStringArray(object["types"], "types");
  if (!types.ok()) return types.status();
  entry.types = *std::move(types);
  if (object.contains("aliases")) {
    absl::StatusOr<std::vector<std::string>> aliases =
        ReadStringArray(object["aliases"], "aliases");
    if (!aliases.ok()) return aliases.status();
    entry.aliases = *std::move(aliases);
  }
  return entry;
}

struct AxisScale {
  double min = 0.0;
  double range = 0.0;

  double Apply(double value) const {
    if (range <= 0.0) return 0.5;
    return std::clamp((value - min) / range, 0.0, 1.0);
  }
};

template <typename Range, typename Project>
AxisScale ScaleOf(const Range& values, Project project) {
  AxisScale scale;
  if (values.empty()) return scale;
  auto [lo, hi] = std::minmax_element(
      values.begin(), values.end(),
      [&](const auto& a, const auto& b) { return project(a) < project(b); });
  scale.min = project(*lo);
  scale.range = project(*hi) - project(*lo);
  return scale;
}

}  // namespace

namespace categories {
const std::vector<CategoryId>& Canonical() {
  static const auto* ids = new std::vector<CategoryId>{
      Id(kBasic),         Id(kIdentity),      Id(kOnlineIdentity),
      Id(kHealth),        Id(kExercise),      Id(kEducationWork),
      Id(kProperty),      Id(kVerification),  Id(kCommunication),
      Id(kContacts),      Id(kInternetHistory), Id(kLocation),
      Id(kOther)};
  return *ids;
}
}  // namespace categories

absl::string_view ProvenanceName(Provenance provenance) {
  switch (provenance) {
    case Provenance::kPaperTable:
      return "PAPER_TABLE";
    case Provenance::kPaperText:
      return "PAPER_TEXT";
    case Provenance::kConfig:
      return "CONFIG";
    case Provenance::kUnspecified:
      return "UNSPECIFIED";
  }
  return "UNSPECIFIED";
}

std::optional<Provenance> ParseProvenance(absl::string_view name) {
  for (Provenance p : {Provenance::kPaperTable, Provenance::kPaperText,
                       Provenance::kConfig, Provenance::kUnspecified}) {
    if (ProvenanceName(p) == name) return p;
  }
  return std::nullopt;
}

ScoreTable::ScoreTable(std::vector<ScoreEntry> entries)
    : entries_(std::move(entries)) {
  for (const ScoreEntry& entry : entries_) {
    lookup_.emplace(LookupKey(entry.name), entry.id);
    lookup_.emplace(LookupKey(entry.id.value), entry.id);
    for (const std::string& alias : entry.aliases) {
      lookup_.emplace(LookupKey(alias), entry.id);
    }
  }
  // Type names take precedence over aliases of other categories.
  for (const ScoreEntry& entry : entries_) {
    for (const std::string& type : entry.types) {
      lookup_[LookupKey(type)] = entry.id;
    }
  }
}

absl::StatusOr<ScoreTable> ScoreTable::Create(std::vector<ScoreEntry> entries) {
  std::set<CategoryId> ids;
  std::set<std::string> type_keys;
  for (const ScoreEntry& entry : entries) {
    if (entry.id.value.empty()) {
      return MakeError(ErrorKind::kSchemaError, "empty category id");
    }
    if (!ids.insert(entry.id).second) {
      return MakeError(ErrorKind::kSchemaError,
                       absl::StrCat("duplicate category '", entry.id.value, "'"));
    }
    if (!InRawRange(entry.privacy_raw)) {
      return MakeError(ErrorKind::kRangeError,
                       absl::StrCat("privacy_raw of '", entry.id.value,
                                    "' is outside [1,7]: ", entry.privacy_raw));
    }
    if (entry.utility_raw.has_value() && !InRawRange(*entry.utility_raw)) {
      return MakeError(ErrorKind::kRangeError,
                       absl::StrCat("utility_raw of '", entry.id.value,
                                    "' is outside [1,7]: ", *entry.utility_raw));
    }
    for (const std::string& type : entry.types) {
      if (!type_keys.insert(LookupKey(type)).second) {
        return MakeError(ErrorKind::kSchemaError,
                         absl::StrCat("type '", type,
                                      "' belongs to more than one category"));
      }
    }
  }
  return ScoreTable(std::move(entries));
}

const ScoreEntry* ScoreTable::Find(const CategoryId& id) const {
  for (const ScoreEntry& entry : entries_) {
    if (entry.id == id) return &entry;
  }
  return nullptr;
}

std::vector<PiType> ScoreTable::types() const {
  std::vector<PiType> out;
  for (const ScoreEntry& entry : entries_) {
    for (const std::string& type : entry.types) {
      out.push_back(PiType{type, entry.id});
    }
  }
  return out;
}

CategoryId ScoreTable::CategoryOf(absl::string_view type_name) const {
  auto it = lookup_.find(LookupKey(type_name));
  if (it != lookup_.end()) return it->second;
  return categories::Id(categories::kOther);
}

bool ScoreTable::IsKnownName(absl::string_view name) const {
  return lookup_.contains(LookupKey(name));
}

bool ScoreTable::HasUnresolvedUtility() const {
  return std::any_of(entries_.begin(), entries_.end(), [](const ScoreEntry& e) {
    return !e.utility_raw.has_value();
  });
}

absl::StatusOr<ScoreTable> ScoreTable::WithUtilityDefault(double value) const {
  if (!InRawRange(value)) {
    return MakeError(ErrorKind::kRangeError,
                     absl::StrCat("utility default outside [1,7]: ", value));
  }
  std::vector<ScoreEntry> entries = entries_;
  for (ScoreEntry& entry : entries) {
    if (!entry.utility_raw.has_value()) {
      entry.utility_raw = value;
      entry.utility_provenance = Provenance::kConfig;
    }
  }
  return Create(std::move(entries));
}

double PublishedUtilityMean() {
  double sum = 0.0;
  for (const auto& [unused, value] : kPublishedUtility) sum += value;
  return sum / static_cast<double>(std::size(kPublishedUtility));
}

const ScoreTable& BuiltinScoreTable() {
  static const ScoreTable* table = [] {
    absl::StatusOr<ScoreTable> created = ScoreTable::Create(BuiltinEntries());
    return new ScoreTable(*std::move(created));
  }();
  return *table;
}

absl::StatusOr<ScoreTable> ParseScoreTable(absl::string_view json_text) {
  json root = json::parse(json_text, nullptr, /*allow_exceptions=*/false);
  if (root.is_discarded()) {
    return MakeError(ErrorKind::kSchemaError, "scores file is not valid JSON");
  }
  if (!root.is_object()) {
    return MakeError(ErrorKind::kSchemaError, "top level must be an object");
  }
  for (const auto& [key, unused] : root.items()) {
    if (key != "categories") {
      return MakeError(ErrorKind::kSchemaError,
                       absl::StrCat("unknown field '", key, "'"));
    }
  }
  if (!root.contains("categories") || !root["categories"].is_array()) {
    return MakeError(ErrorKind::kSchemaError, "'categories' must be an array");
  }
  std::vector<ScoreEntry> entries;
  for (const json& item : root["categories"]) {
    absl::StatusOr<ScoreEntry> entry = ParseEntry(item);
    if (!entry.ok()) return entry.status();
    entries.push_back(*std::move(entry));
  }
  absl::StatusOr<ScoreTable> table = ScoreTable::Create(std::move(entries));
  if (!table.ok()) return table.status();
  if (absl::Status status = CheckRequiredCategories(*table); !status.ok()) {
    return status;
  }
  return table;
}

absl::StatusOr<ScoreTable> LoadScoreTable(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    return MakeError(ErrorKind::kIoError,
                     absl::StrCat("cannot open ", path.string()));
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return ParseScoreTable(buffer.str());
}

std::string ScoreTableToJson(const ScoreTable& table) {
  json categories_json = json::array();
  for (const ScoreEntry& entry : table.entries()) {
    json item;
    item["id"] = entry.id.value;
    item["name"] = entry.name;
    item["privacy_raw"] = entry.privacy_raw;
    item["utility_raw"] = entry.utility_raw.has_value()
                              ? json(*entry.utility_raw)
                              : json(nullptr);
    item["provenance"] = {
        {"privacy", std::string(ProvenanceName(entry.privacy_provenance))},
        {"utility", std::string(ProvenanceName(entry.utility_provenance))}};
    item["types"] = entry.types;
    if (!entry.aliases.empty()) item["aliases"] = entry.aliases;
    categories_json.push_back(std::move(item));
  }
  json root;
  root["categories"] = std::move(categories_json);
  return root.dump(2) + "\n";
}

absl::StatusOr<NormalizedScoreTable> NormalizedScoreTable::Create(
    std::vector<Entry> entries) {
  std::set<CategoryId> ids;
  for (const Entry& entry : entries) {
    if (!ids.insert(entry.id).second) {
      return MakeError(ErrorKind::kSchemaError,
                       absl::StrCat("duplicate category '", entry.id.value, "'"));
    }
    for (double v : {entry.p_hat, entry.m_hat}) {
      if (!std::isfinite(v) || v < 0.0 || v > 1.0) {
        return MakeError(ErrorKind::kRangeError,
                         absl::StrCat("normalized score of '", entry.id.value,
                                      "' outside [0,1]"));
      }
    }
  }
  return NormalizedScoreTable(std::move(entries));
}

const NormalizedScoreTable::Entry* NormalizedScoreTable::Find(
    const CategoryId& id) const {
  for (const Entry& entry : entries_) {
    if (entry.id == id) return &entry;
  }
  return nullptr;
}

absl::StatusOr<NormalizedScoreTable> Normalize(const ScoreTable& table) {
  for (const ScoreEntry& entry : table.entries()) {
    if (!entry.utility_raw.has_value()) {
      return MakeError(ErrorKind::kUnresolvedScore,
                       absl::StrCat("utility of '", entry.id.value,
                                    "' is unspecified; configure a default"));
    }
  }
  const auto& entries = table.entries();
  const AxisScale privacy =
      ScaleOf(entries, [](const ScoreEntry& e) { return e.privacy_raw; });
  const AxisScale utility =
      ScaleOf(entries, [](const ScoreEntry& e) { return *e.utility_raw; });
  std::vector<NormalizedScoreTable::Entry> out;
  out.reserve(entries.size());
  for (const ScoreEntry& entry : entries) {
    out.push_back({entry.id, privacy.Apply(entry.privacy_raw),
                   utility.Apply(*entry.utility_raw)});
  }
  return NormalizedScoreTable::Create(std::move(out));
}

NormalizedScoreTable Normalize(const NormalizedScoreTable& table) {
  const auto& entries = table.entries();
  using Entry = NormalizedScoreTable::Entry;
  const AxisScale privacy =
      ScaleOf(entries, [](const Entry& e) { return e.p_hat; });
  const AxisScale utility =
      ScaleOf(entries, [](const Entry& e) { return e.m_hat; });
  std::vector<Entry> out;
  out.reserve(entries.size());
  for (const Entry& entry : entries) {
    out.push_back(
        {entry.id, privacy.Apply(entry.p_hat), utility.Apply(entry.m_hat)});
  }
  return *NormalizedScoreTable::Create(std::move(out));
}

}  // namespace anonpal
