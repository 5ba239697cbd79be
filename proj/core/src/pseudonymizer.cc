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

#include "anonpal/pseudonymizer.h"

#include <algorithm>
#include <fstream>
#include <regex>
#include <sstream>

#include "absl/strings/ascii.h"
#include "absl/strings/match.h"
#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "absl/strings/strip.h"
#include "anonpal/crypto.h"
#include "anonpal/errors.h"
#include "anonpal/rules.h"
#include "json.hpp"

namespace anonpal {
namespace {

using nlohmann::json;

bool IsDigit(char c) { return c >= '0' && c <= '9'; }

bool HasDigit(absl::string_view s) {
  return std::any_of(s.begin(), s.end(), IsDigit);
}

bool TypeIn(absl::string_view type_name,
            std::initializer_list<absl::string_view> names) {
  return std::any_of(names.begin(), names.end(), [&](absl::string_view n) {
    return absl::EqualsIgnoreCase(n, type_name);
  });
}

bool IsEmailType(absl::string_view type_name) {
  return TypeIn(type_name,
                {"Email Address", "Email", "Payment Account", "User Account"});
}

bool IsDigitType(absl::string_view type_name) {
  return TypeIn(type_name,
                {"Phone Number", "ID Card", "Identification Card", "Passport",
                 "Driver's License", "Work ID", "Work Permit", "User ID",
                 "Bank Card Number", "Payment Account", "IP Address",
                 "Region Code", "City Code", "Neighborhood Code",
                 "Community Code", "Bank Card Verification Code",
                 "SMS Verification Code", "Dynamic Password", "Random Token"});
}

bool IsDateType(absl::string_view type_name) {
  return TypeIn(type_name, {"Date of Birth", "Birthday"});
}

bool LooksLikeEmail(absl::string_view s) {
  static const std::regex kEmail(R"([^@\s]+@[^@\s]+\.[A-Za-z]{2,})");
  return std::regex_match(s.begin(), s.end(), kEmail);
}

const std::vector<std::string>* FindList(const PseudonymOptions& options,
                                         absl::string_view type_name) {
  for (const auto& [type, list] : options.lists) {
    if (absl::EqualsIgnoreCase(type, type_name) && !list.empty()) return &list;
  }
  if (TypeIn(type_name, {"Name", "Nickname"})) return &BuiltinPseudonymNames();
  return nullptr;
}

std::string KeyedDigits(const Salt& salt, const std::string& prefix,
                        std::size_t count) {
  std::string digits;
  for (int block = 0; digits.size() < count; ++block) {
    const Digest bytes = HmacSha256(salt, absl::StrCat(prefix, "\x1f", block));
    for (std::uint8_t b : bytes) {
      if (b >= 250) continue;  // keeps b % 10 uniform
      digits.push_back(static_cast<char>('0' + b % 10));
      if (digits.size() == count) break;
    }
  }
  return digits;
}

std::string ReplaceDigits(absl::string_view surface, const std::string& digits) {
  std::string out(surface);
  std::size_t next = 0;
  for (char& c : out) {
    if (IsDigit(c)) c = digits[next++];
  }
  return out;
}

void MakeLuhnValid(std::string& text) {
  auto last = std::find_if(text.rbegin(), text.rend(), IsDigit);
  if (last == text.rend()) return;
  for (char d = '0'; d <= '9'; ++d) {
    *last = d;
    if (LuhnValid(text)) return;
  }
}

// Civil-calendar conversions (proleptic Gregorian).
long DaysFromCivil(int y, unsigned m, unsigned d) {
  y -= m <= 2;
  const long era = (y >= 0 ? y : y - 399) / 400;
  const unsigned yoe = static_cast<unsigned>(y - era * 400);
  const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097 + static_cast<long>(doe) - 719468;
}

void CivilFromDays(long z, int& y, unsigned& m, unsigned& d) {
  z += 719468;
  const long era = (z >= 0 ? z : z - 146096) / 146097;
  const unsigned doe = static_cast<unsigned>(z - era * 146097);
  const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  const unsigned mp = (5 * doy + 2) / 153;
  d = doy - (153 * mp + 2) / 5 + 1;
  m = mp < 10 ? mp + 3 : mp - 9;
  y = static_cast<int>(yoe) + static_cast<int>(era) * 400 + (m <= 2);
}

bool ValidDate(int y, unsigned m, unsigned d) {
  if (m < 1 || m > 12 || d < 1 || d > 31) return false;
  int y2;
  unsigned m2, d2;
  CivilFromDays(DaysFromCivil(y, m, d), y2, m2, d2);
  return y2 == y && m2 == m && d2 == d;
}

constexpr absl::string_view kMonths[] = {
    "January", "February", "March",     "April",   "May",      "June",
    "July",    "August",   "September", "October", "November", "December"};

// Month index 1..12 and whether the abbreviated form was used.
std::optional<std::pair<unsigned, bool>> ParseMonth(absl::string_view name) {
  for (unsigned i = 0; i < 12; ++i) {
    if (absl::EqualsIgnoreCase(name, kMonths[i])) return std::pair{i + 1, false};
    if (absl::EqualsIgnoreCase(name, kMonths[i].substr(0, 3))) {
      return std::pair{i + 1, true};
    }
  }
  return std::nullopt;
}

std::string MonthName(unsigned month, bool abbreviated) {
  absl::string_view name = kMonths[month - 1];
  return std::string(abbreviated ? name.substr(0, 3) : name);
}

// Shifts a date written in one of a few common layouts, keeping the layout.
std::optional<std::string> ShiftDate(absl::string_view surface, int offset) {
  static const std::regex kMonthFirst(R"(([A-Za-z]+)\.? (\d{1,2}), (\d{4}))");
  static const std::regex kDayFirst(R"((\d{1,2}) ([A-Za-z]+) (\d{4}))");
  static const std::regex kIso(R"((\d{4})-(\d{2})-(\d{2}))");
  static const std::regex kSlashed(R"((\d{1,2})/(\d{1,2})/(\d{4}))");
  const std::string text(surface);
  std::smatch m;
  int y = 0;
  unsigned month = 0, day = 0;
  enum class Layout { kMonthFirst, kDayFirst, kIso, kSlashed } layout;
  bool abbreviated = false;
  auto to_int = [](const std::ssub_match& s) {
    int v = 0;
    (void)absl::SimpleAtoi(s.str(), &v);
    return v;
  };
  if (std::regex_match(text, m, kMonthFirst)) {
    auto parsed = ParseMonth(m[1].str());
    if (!parsed) return std::nullopt;
    std::tie(month, abbreviated) = *parsed;
    day = to_int(m[2]);
    y = to_int(m[3]);
    layout = Layout::kMonthFirst;
  } else if (std::regex_match(text, m, kDayFirst)) {
    auto parsed = ParseMonth(m[2].str());
    if (!parsed) return std::nullopt;
    std::tie(month, abbreviated) = *parsed;
    day = to_int(m[1]);
    y = to_int(m[3]);
    layout = Layout::kDayFirst;
  } else if (std::regex_match(text, m, kIso)) {
    y = to_int(m[1]);
    month = to_int(m[2]);
    day = to_int(m[3]);
    layout = Layout::kIso;
  } else if (std::regex_match(text, m, kSlashed)) {
    month = to_int(m[1]);
    day = to_int(m[2]);
    y = to_int(m[3]);
    layout = Layout::kSlashed;
  } else {
    return std::nullopt;
  }
  if (!ValidDate(y, month, day)) return std::nullopt;
  CivilFromDays(DaysFromCivil(y, month, day) - offset, y, month, day);
  switch (layout) {
    case Layout::kMonthFirst:
      return absl::StrFormat("%s %d, %04d", MonthName(month, abbreviated), day, y);
    case Layout::kDayFirst:
      return absl::StrFormat("%d %s %04d", day, MonthName(month, abbreviated), y);
    case Layout::kIso:
      return absl::StrFormat("%04d-%02d-%02d", y, month, day);
    case Layout::kSlashed:
      return absl::StrFormat("%02d/%02d/%04d", month, day, y);
  }
  return std::nullopt;
}

std::string Placeholder(absl::string_view type_name, int ordinal) {
  if (ordinal <= 1) return absl::StrCat("[", type_name, "]");
  return absl::StrCat("[", type_name, " ", ordinal, "]");
}

std::optional<Salt> SaltFromHex(absl::string_view hex) {
  if (hex.size() != 32) return std::nullopt;
  Salt salt{};
  for (std::size_t i = 0; i < salt.size(); ++i) {
    int value = 0;
    for (char c : hex.substr(2 * i, 2)) {
      int nibble;
      if (c >= '0' && c <= '9') {
        nibble = c - '0';
      } else if (c >= 'a' && c <= 'f') {
        nibble = c - 'a' + 10;
      } else {
        return std::nullopt;
      }
      value = value * 16 + nibble;
    }
    salt[i] = static_cast<std::uint8_t>(value);
  }
  return salt;
}

}  // namespace

PseudonymSession::PseudonymSession(std::string session_id, const Salt& salt,
                                   std::chrono::system_clock::time_point created_at)
    : session_id_(std::move(session_id)), salt_(salt), created_at_(created_at) {}

PseudonymSession PseudonymSession::Fresh(std::string session_id) {
  Salt salt{};
  FillRandom(salt);
  return PseudonymSession(std::move(session_id), salt);
}

PseudonymSession PseudonymSession::FromSeed(std::string session_id,
                                            std::uint64_t seed) {
  const Digest digest = Sha256(absl::StrCat("anonpal-session-seed:", seed));
  Salt salt{};
  std::copy_n(digest.begin(), salt.size(), salt.begin());
  return PseudonymSession(std::move(session_id), salt);
}

std::optional<std::string> PseudonymSession::Lookup(
    const CategoryId& category, absl::string_view surface) const {
  auto it = mapping_.find(Key{category, std::string(surface)});
  if (it == mapping_.end()) return std::nullopt;
  return it->second;
}

bool PseudonymSession::IsTaken(const CategoryId& category,
                               absl::string_view replacement) const {
  return reverse_.contains(Key{category, std::string(replacement)});
}

absl::Status PseudonymSession::Insert(const CategoryId& category,
                                      std::string surface,
                                      std::string replacement) {
  if (surface == replacement) {
    return MakeError(ErrorKind::kInconsistent,
                     "replacement equals its surface");
  }
  Key forward{category, surface};
  Key backward{category, replacement};
  auto existing = reverse_.find(backward);
  if (existing != reverse_.end() && existing->second != surface) {
    return MakeError(ErrorKind::kInconsistent,
                     "replacement already maps another surface");
  }
  auto current = mapping_.find(forward);
  if (current != mapping_.end()) {
    reverse_.erase(Key{category, current->second});
  }
  mapping_[std::move(forward)] = replacement;
  reverse_[std::move(backward)] = std::move(surface);
  return absl::OkStatus();
}

int PseudonymSession::DateOffsetDays() const {
  return 30 + static_cast<int>(KeyedHash64(salt_, "date-offset") % 336);
}

std::string SessionToJson(const PseudonymSession& session) {
  json mapping = json::array();
  for (const auto& [key, replacement] : session.mapping()) {
    mapping.push_back({{"category", key.first.value},
                       {"surface", key.second},
                       {"replacement", replacement}});
  }
  const auto created_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                              session.created_at().time_since_epoch())
                              .count();
  json root = {{"session_id", session.session_id()},
               {"salt", ToHex(session.salt())},
               {"created_at_ms", created_ms},
               {"mapping", std::move(mapping)}};
  return root.dump(2) + "\n";
}

absl::StatusOr<PseudonymSession> SessionFromJson(absl::string_view json_text) {
  auto corrupt = [](absl::string_view why) {
    return MakeError(ErrorKind::kCorruptSession, why);
  };
  json root = json::parse(json_text, nullptr, /*allow_exceptions=*/false);
  if (root.is_discarded() || !root.is_object()) {
    return corrupt("session file is not a JSON object");
  }
  if (!root.contains("session_id") || !root["session_id"].is_string() ||
      !root.contains("salt") || !root["salt"].is_string() ||
      !root.contains("created_at_ms") ||
      !root["created_at_ms"].is_number_integer() ||
      !root.contains("mapping") || !root["mapping"].is_array()) {
    return corrupt("session file is missing required fields");
  }
  std::optional<Salt> salt = SaltFromHex(root["salt"].get<std::string>());
  if (!salt.has_value()) return corrupt("salt must be 32 lowercase hex digits");
  PseudonymSession session(
      root["session_id"].get<std::string>(), *salt,
      std::chrono::system_clock::time_point(
          std::chrono::milliseconds(root["created_at_ms"].get<std::int64_t>())));
  for (const json& item : root["mapping"]) {
    if (!item.is_object() || !item.contains("category") ||
        !item["category"].is_string() || !item.contains("surface") ||
        !item["surface"].is_string() || !item.contains("replacement") ||
        !item["replacement"].is_string()) {
      return corrupt("malformed mapping entry");
    }
    absl::Status status = session.Insert(
        CategoryId{item["category"].get<std::string>()},
        item["surface"].get<std::string>(), item["replacement"].get<std::string>());
    if (!status.ok()) return corrupt(status.message());
  }
  return session;
}

const std::vector<std::string>& BuiltinPseudonymNames() {
  static const auto* names = [] {
    constexpr absl::string_view kFirst[] = {
        "Avery",  "Blake",  "Casey",  "Dana",   "Ellis",   "Finley", "Harper",
        "Jordan", "Kendall", "Logan", "Morgan", "Parker",  "Quinn",  "Reese",
        "Rowan",  "Sawyer", "Skyler", "Taylor", "Emerson", "Hayden"};
    constexpr absl::string_view kLast[] = {
        "Ashford", "Bramley",   "Calloway", "Dunmore",  "Everly",
        "Fairbanks", "Hollis",  "Kingsley", "Lockwood", "Prescott"};
    auto* out = new std::vector<std::string>();
    for (absl::string_view last : kLast) {
      for (absl::string_view first : kFirst) {
        out->push_back(absl::StrCat(first, " ", last));
      }
    }
    return out;
  }();
  return *names;
}

absl::StatusOr<std::vector<std::string>> LoadPseudonymList(
    const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    return MakeError(ErrorKind::kIoError,
                     absl::StrCat("cannot open ", path.string()));
  }
  std::vector<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    absl::string_view trimmed = absl::StripAsciiWhitespace(line);
    if (!trimmed.empty()) out.emplace_back(trimmed);
  }
  return out;
}

std::string PseudonymHashMessage(const CategoryId& category,
                                 absl::string_view surface, int attempt) {
  if (attempt == 0) return absl::StrCat(category.value, "\x1f", surface);
  return absl::StrCat(category.value, "\x1f", surface, "\x1f", attempt);
}

absl::StatusOr<std::string> GenerateReplacement(absl::string_view surface,
                                                const CategoryId& category,
                                                absl::string_view type_name,
                                                PseudonymSession& session,
                                                const PseudonymOptions& options) {
  if (surface.empty()) {
    return MakeError(ErrorKind::kEmptyInput, "surface is empty");
  }
  if (std::optional<std::string> known = session.Lookup(category, surface)) {
    return *known;
  }
  const Salt& salt = session.salt();
  auto accept = [&](std::string candidate) -> std::optional<std::string> {
    if (candidate == surface || session.IsTaken(category, candidate)) {
      return std::nullopt;
    }
    if (!session.Insert(category, std::string(surface), candidate).ok()) {
      return std::nullopt;
    }
    return candidate;
  };

  const std::vector<std::string>* list = FindList(options, type_name);
  const bool email = IsEmailType(type_name) && LooksLikeEmail(surface);
  const bool digits = !email && IsDigitType(type_name) && HasDigit(surface);
  std::optional<std::string> shifted_date;
  if (IsDateType(type_name)) {
    shifted_date = ShiftDate(surface, session.DateOffsetDays());
  }

  if (list == nullptr && !email && !digits && !shifted_date.has_value()) {
    for (int ordinal = 1;; ++ordinal) {
      if (auto out = accept(Placeholder(type_name, ordinal))) return *out;
    }
  }

  for (int attempt = 0; attempt < kMaxReplacementAttempts; ++attempt) {
    const std::string message = PseudonymHashMessage(category, surface, attempt);
    std::string candidate;
    if (list != nullptr) {
      candidate = (*list)[KeyedHash64(salt, message) % list->size()];
    } else if (email) {
      const Digest tag = HmacSha256(salt, message);
      candidate = absl::StrCat("user", ToHex(std::span(tag).first(4)), "@",
                               options.email_domain);
    } else if (digits) {
      const auto count = std::count_if(surface.begin(), surface.end(), IsDigit);
      candidate = ReplaceDigits(
          surface, KeyedDigits(salt, absl::StrCat("digits\x1f", message),
                               static_cast<std::size_t>(count)));
      if (options.luhn_valid_cards && TypeIn(type_name, {"Bank Card Number"})) {
        MakeLuhnValid(candidate);
      }
    } else {
      candidate = *ShiftDate(surface, session.DateOffsetDays() + attempt);
    }
    if (auto out = accept(std::move(candidate))) return *out;
  }
  return MakeError(ErrorKind::kExhaustedRetries,
                   absl::StrCat("no unused replacement for a '", type_name,
                                "' surface after ", kMaxReplacementAttempts,
                                " attempts"));
}

absl::StatusOr<AnonymizedDoc> Pseudonymize(absl::string_view text,
                                           const std::vector<EntitySpan>& spans,
                                           const SelectionPlan& plan,
                                           PseudonymSession& session,
                                           const PseudonymOptions& options) {
  if (absl::Status status = ValidateSpans(text, spans); !status.ok()) {
    return status;
  }
  AnonymizedDoc doc;
  doc.achieved = plan.achieved;
  std::size_t cursor = 0;
  for (const EntitySpan& span : spans) {
    if (!plan.categories.contains(span.category)) continue;
    absl::StatusOr<std::string> replacement = GenerateReplacement(
        span.surface, span.category, span.type_name, session, options);
    if (!replacement.ok()) return replacement.status();
    absl::StrAppend(&doc.output_text, text.substr(cursor, span.start - cursor));
    ChangeRegion region;
    region.start = doc.output_text.size();
    doc.output_text.append(*replacement);
    region.end = doc.output_text.size();
    region.original_start = span.start;
    region.original_end = span.end;
    region.replacement = *std::move(replacement);
    region.category = span.category;
    region.type_name = span.type_name;
    region.source = span.source;
    doc.changes.push_back(std::move(region));
    cursor = span.end;
  }
  absl::StrAppend(&doc.output_text, text.substr(cursor));
  return doc;
}

absl::StatusOr<std::vector<DiffEntry>> Diff(absl::string_view original,
                                            const AnonymizedDoc& doc) {
  auto inconsistent = [](absl::string_view why) {
    return MakeError(ErrorKind::kInconsistent, why);
  };
  absl::string_view output = doc.output_text;
  std::vector<DiffEntry> entries;
  std::size_t in_pos = 0;
  std::size_t out_pos = 0;
  for (const ChangeRegion& change : doc.changes) {
    if (change.original_start < in_pos || change.start < out_pos ||
        change.original_end < change.original_start ||
        change.original_end > original.size() || change.end < change.start ||
        change.end > output.size()) {
      return inconsistent("change regions are out of order or out of bounds");
    }
    const std::size_t kept = change.original_start - in_pos;
    if (change.start - out_pos != kept ||
        original.substr(in_pos, kept) != output.substr(out_pos, kept)) {
      return inconsistent("unchanged text differs between input and output");
    }
    if (output.substr(change.start, change.end - change.start) !=
        change.replacement) {
      return inconsistent("region text differs from its replacement");
    }
    entries.push_back(DiffEntry{
        std::string(original.substr(change.original_start,
                                    change.original_end - change.original_start)),
        change.replacement, change.category, change.type_name});
    in_pos = change.original_end;
    out_pos = change.end;
  }
  if (original.substr(in_pos) != output.substr(out_pos)) {
    return inconsistent("trailing text differs between input and output");
  }
  return entries;
}

absl::StatusOr<std::string> Restore(const AnonymizedDoc& doc,
                                    const std::vector<std::string>& originals) {
  if (originals.size() != doc.changes.size()) {
    return MakeError(ErrorKind::kInconsistent,
                     "one original per change region is required");
  }
  std::string out;
  std::size_t cursor = 0;
  for (std::size_t i = 0; i < doc.changes.size(); ++i) {
    const ChangeRegion& change = doc.changes[i];
    if (change.start < cursor || change.end > doc.output_text.size()) {
      return MakeError(ErrorKind::kInconsistent, "change regions out of order");
    }
    out.append(doc.output_text, cursor, change.start - cursor);
    out.append(originals[i]);
    cursor = change.end;
  }
  out.append(doc.output_text, cursor);
  return out;
}

absl::Status EditRegion(AnonymizedDoc& doc, std::size_t index,
                        absl::string_view new_text) {
  if (index >= doc.changes.size()) {
    return MakeError(ErrorKind::kBadIndex,
                     absl::StrCat("region ", index, " does not exist (",
                                  doc.changes.size(), " regions)"));
  }
  ChangeRegion& region = doc.changes[index];
  doc.output_text.replace(region.start, region.end - region.start,
                          new_text.data(), new_text.size());
  const auto delta = static_cast<std::ptrdiff_t>(new_text.size()) -
                     static_cast<std::ptrdiff_t>(region.end - region.start);
  region.end = region.start + new_text.size();
  region.replacement = std::string(new_text);
  region.source = SpanSource::kUserEdit;
  for (std::size_t i = index + 1; i < doc.changes.size(); ++i) {
    doc.changes[i].start = static_cast<std::size_t>(
        static_cast<std::ptrdiff_t>(doc.changes[i].start) + delta);
    doc.changes[i].end = static_cast<std::size_t>(
        static_cast<std::ptrdiff_t>(doc.changes[i].end) + delta);
  }
  return absl::OkStatus();
}

}  // namespace anonpal
