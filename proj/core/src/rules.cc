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

#include "anonpal/rules.h"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <tuple>
#include <utility>

#include "absl/strings/ascii.h"
#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_split.h"
#include "anonpal/errors.h"
#include "json.hpp"

namespace anonpal {
namespace {

using nlohmann::json;

struct Candidate {
  std::size_t start;
  std::size_t end;
  std::size_t rule_order;
  std::string type_name;
};

absl::string_view ValidatorName(MatchValidator validator) {
  switch (validator) {
    case MatchValidator::kLuhn:
      return "luhn";
    case MatchValidator::kIpv4:
      return "ipv4";
    case MatchValidator::kNone:
      break;
  }
  return "";
}

std::optional<MatchValidator> ParseValidator(absl::string_view name) {
  if (name.empty() || name == "none") return MatchValidator::kNone;
  if (name == "luhn") return MatchValidator::kLuhn;
  if (name == "ipv4") return MatchValidator::kIpv4;
  return std::nullopt;
}

bool Ipv4Valid(absl::string_view text) {
  std::vector<absl::string_view> octets = absl::StrSplit(text, '.');
  if (octets.size() != 4) return false;
  for (absl::string_view octet : octets) {
    int value = 0;
    if (octet.empty() || octet.size() > 3 || !absl::SimpleAtoi(octet, &value) ||
        value > 255) {
      return false;
    }
  }
  return true;
}

bool Passes(MatchValidator validator, absl::string_view match) {
  switch (validator) {
    case MatchValidator::kNone:
      return true;
    case MatchValidator::kLuhn: {
      const auto digits = std::count_if(match.begin(), match.end(), [](char c) {
        return absl::ascii_isdigit(static_cast<unsigned char>(c));
      });
      return digits >= 13 && digits <= 19 && LuhnValid(match);
    }
    case MatchValidator::kIpv4:
      return Ipv4Valid(match);
  }
  return false;
}

bool IsWordByte(char c) {
  const auto u = static_cast<unsigned char>(c);
  return absl::ascii_isalnum(u) || c == '_' || u >= 0x80;
}

std::vector<PatternRule> BuiltinPatterns() {
  return {
      {"Email Address",
       R"([A-Za-z0-9._%+-]+@[A-Za-z0-9-]+(?:\.[A-Za-z0-9-]+)*\.[A-Za-z]{2,})",
       MatchValidator::kNone},
      {"ID Card", R"(\b\d{17}[\dXx]\b)", MatchValidator::kNone},
      {"Bank Card Number", R"(\b\d(?:[ -]?\d){12,18}\b)",
       MatchValidator::kLuhn},
      {"Phone Number",
       R"((?:\+1[ .-]?)?(?:\(\d{3}\) ?|\b\d{3}[.-])\d{3}[.-]\d{4}\b|\b1[3-9]\d{9}\b)",
       MatchValidator::kNone},
      {"IP Address", R"(\b(?:\d{1,3}\.){3}\d{1,3}\b)", MatchValidator::kIpv4},
  };
}

}  // namespace

bool LuhnValid(absl::string_view text) {
  int sum = 0;
  int count = 0;
  for (auto it = text.rbegin(); it != text.rend(); ++it) {
    if (!absl::ascii_isdigit(static_cast<unsigned char>(*it))) continue;
    int digit = *it - '0';
    if (count % 2 == 1) {
      digit *= 2;
      if (digit > 9) digit -= 9;
    }
    sum += digit;
    ++count;
  }
  return count > 0 && sum % 10 == 0;
}

const std::vector<std::string>& BuiltinNameGazetteer() {
  static const auto* names = new std::vector<std::string>{
      "John Doe",       "Jane Doe",       "Maria Garcia",   "Wei Zhang",
      "Priya Patel",    "Carlos Rossi",   "Aisha Khan",     "Liam Murphy",
      "Sofia Novak",    "Hiroshi Tanaka", "Fatima Khan",    "Noah Smith",
      "Elena Rossi",    "Omar Haddad",    "Chloe Martin",   "Mateo Garcia",
      "Grace Kim",      "Ivan Petrov",    "Mei Lin",        "Lucas Silva",
      "Anna Schmidt",   "David Cohen",    "Sara Nilsson",   "Ahmed Hassan",
      "Yuki Sato",      "Olivia Brown",   "Ethan Wright",   "Isabel Torres",
      "Raj Sharma",     "Lena Fischer",   "Marco Bianchi",  "Nora Eriksen",
      "Tomas Horvat",   "Amira Saleh",    "Daniel Okafor",  "Hana Suzuki",
      "Victor Dubois",  "Leila Farah",    "Samuel Mensah",  "Julia Kowalski",
  };
  return *names;
}

absl::StatusOr<RulePack> RulePack::Create(
    std::vector<PatternRule> patterns,
    std::map<std::string, std::vector<std::string>> gazetteers,
    const ScoreTable& taxonomy) {
  RulePack pack;
  auto register_type = [&](const std::string& type) -> absl::Status {
    if (!taxonomy.IsKnownName(type)) {
      return MakeError(ErrorKind::kSchemaError,
                       absl::StrCat("rule type '", type,
                                    "' is not a known information type"));
    }
    pack.categories_[type] = taxonomy.CategoryOf(type);
    return absl::OkStatus();
  };
  for (const PatternRule& rule : patterns) {
    if (absl::Status status = register_type(rule.type_name); !status.ok()) {
      return status;
    }
    try {
      pack.compiled_.push_back(std::make_shared<const std::regex>(
          rule.regex, std::regex::ECMAScript | std::regex::optimize));
    } catch (const std::regex_error& error) {
      return MakeError(ErrorKind::kSchemaError,
                       absl::StrCat("bad regex for '", rule.type_name,
                                    "': ", error.what()));
    }
  }
  for (auto& [type, literals] : gazetteers) {
    if (absl::Status status = register_type(type); !status.ok()) return status;
    literals.erase(std::remove(literals.begin(), literals.end(), ""),
                   literals.end());
  }
  pack.patterns_ = std::move(patterns);
  pack.gazetteers_ = std::move(gazetteers);
  return pack;
}

std::vector<EntitySpan> RulePack::Recognize(absl::string_view text) const {
  std::vector<Candidate> candidates;
  for (std::size_t r = 0; r < patterns_.size(); ++r) {
    const std::regex& regex = *compiled_[r];
    for (std::cregex_iterator it(text.data(), text.data() + text.size(), regex),
         end;
         it != end; ++it) {
      const auto& match = (*it)[0];
      if (match.length() == 0) continue;
      const auto start = static_cast<std::size_t>(match.first - text.data());
      const auto length = static_cast<std::size_t>(match.length());
      if (!Passes(patterns_[r].validator, text.substr(start, length))) continue;
      candidates.push_back({start, start + length, r, patterns_[r].type_name});
    }
  }
  std::size_t order = patterns_.size();
  for (const auto& [type, literals] : gazetteers_) {
    for (const std::string& literal : literals) {
      for (std::size_t pos = text.find(literal); pos != absl::string_view::npos;
           pos = text.find(literal, pos + 1)) {
        const std::size_t end = pos + literal.size();
        const bool bounded = (pos == 0 || !IsWordByte(text[pos - 1])) &&
                             (end == text.size() || !IsWordByte(text[end]));
        if (bounded) candidates.push_back({pos, end, order, type});
      }
    }
    ++order;
  }

  std::sort(candidates.begin(), candidates.end(),
            [](const Candidate& a, const Candidate& b) {
              return std::make_tuple(b.end - b.start, a.start, a.rule_order) <
                     std::make_tuple(a.end - a.start, b.start, b.rule_order);
            });
  std::vector<EntitySpan> spans;
  for (const Candidate& c : candidates) {
    const bool overlaps =
        std::any_of(spans.begin(), spans.end(), [&](const EntitySpan& s) {
          return c.start < s.end && s.start < c.end;
        });
    if (overlaps) continue;
    EntitySpan span;
    span.start = c.start;
    span.end = c.end;
    span.surface = std::string(text.substr(c.start, c.end - c.start));
    span.type_name = c.type_name;
    span.category = categories_.at(c.type_name);
    span.source = SpanSource::kRules;
    spans.push_back(std::move(span));
  }
  std::sort(spans.begin(), spans.end(),
            [](const EntitySpan& a, const EntitySpan& b) {
              return a.start < b.start;
            });
  return spans;
}

const RulePack& BuiltinRulePack() {
  static const RulePack* pack = [] {
    std::map<std::string, std::vector<std::string>> gazetteers;
    gazetteers["Name"] = BuiltinNameGazetteer();
    return new RulePack(*RulePack::Create(BuiltinPatterns(),
                                          std::move(gazetteers),
                                          BuiltinScoreTable()));
  }();
  return *pack;
}

absl::StatusOr<RulePack> ParseRulePack(absl::string_view json_text,
                                       const ScoreTable& taxonomy) {
  json root = json::parse(json_text, nullptr, /*allow_exceptions=*/false);
  if (root.is_discarded() || !root.is_object()) {
    return MakeError(ErrorKind::kSchemaError, "rule pack must be a JSON object");
  }
  for (const auto& [key, unused] : root.items()) {
    if (key != "patterns" && key != "gazetteers") {
      return MakeError(ErrorKind::kSchemaError,
                       absl::StrCat("unknown field '", key, "'"));
    }
  }
  std::vector<PatternRule> patterns;
  if (root.contains("patterns")) {
    if (!root["patterns"].is_array()) {
      return MakeError(ErrorKind::kSchemaError, "'patterns' must be an array");
    }
    for (const json& item : root["patterns"]) {
      if (!item.is_object() || !item.contains("type") ||
          !item.contains("regex") || !item["type"].is_string() ||
          !item["regex"].is_string()) {
        return MakeError(ErrorKind::kSchemaError,
                         "each pattern needs string 'type' and 'regex'");
      }
      for (const auto& [key, unused] : item.items()) {
        if (key != "type" && key != "regex" && key != "validator") {
          return MakeError(ErrorKind::kSchemaError,
                           absl::StrCat("unknown pattern field '", key, "'"));
        }
      }
      std::optional<MatchValidator> validator = MatchValidator::kNone;
      if (item.contains("validator")) {
        validator = item["validator"].is_string()
                        ? ParseValidator(item["validator"].get<std::string>())
                        : std::nullopt;
        if (!validator.has_value()) {
          return MakeError(ErrorKind::kSchemaError, "unknown validator");
        }
      }
      patterns.push_back({item["type"].get<std::string>(),
                          item["regex"].get<std::string>(), *validator});
    }
  }
  std::map<std::string, std::vector<std::string>> gazetteers;
  if (root.contains("gazetteers")) {
    if (!root["gazetteers"].is_object()) {
      return MakeError(ErrorKind::kSchemaError, "'gazetteers' must be an object");
    }
    for (const auto& [type, list] : root["gazetteers"].items()) {
      if (!list.is_array()) {
        return MakeError(ErrorKind::kSchemaError,
                         "gazetteer entries must be arrays of strings");
      }
      for (const json& literal : list) {
        if (!literal.is_string()) {
          return MakeError(ErrorKind::kSchemaError,
                           "gazetteer entries must be arrays of strings");
        }
        gazetteers[type].push_back(literal.get<std::string>());
      }
    }
  }
  return RulePack::Create(std::move(patterns), std::move(gazetteers), taxonomy);
}

absl::StatusOr<RulePack> LoadRulePack(const std::filesystem::path& path,
                                      const ScoreTable& taxonomy) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    return MakeError(ErrorKind::kIoError,
                     absl::StrCat("cannot open ", path.string()));
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  return ParseRulePack(buffer.str(), taxonomy);
}

std::string RulePackToJson(const RulePack& pack) {
  json patterns = json::array();
  for (const PatternRule& rule : pack.patterns()) {
    json item = {{"type", rule.type_name}, {"regex", rule.regex}};
    if (rule.validator != MatchValidator::kNone) {
      item["validator"] = std::string(ValidatorName(rule.validator));
    }
    patterns.push_back(std::move(item));
  }
  json root = {{"patterns", std::move(patterns)},
               {"gazetteers", pack.gazetteers()}};
  return root.dump(2) + "\n";
}

}  // namespace anonpal
