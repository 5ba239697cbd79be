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

// Deterministic pattern and gazetteer recognizer.

#ifndef ANONPAL_RULES_H_
#define ANONPAL_RULES_H_

#include <filesystem>
#include <map>
#include <memory>
#include <regex>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "anonpal/entity.h"
#include "anonpal/taxonomy.h"

namespace anonpal {

enum class MatchValidator { kNone, kLuhn, kIpv4 };

struct PatternRule {
  std::string type_name;
  std::string regex;  // ECMAScript syntax
  MatchValidator validator = MatchValidator::kNone;
};

class RulePack {
 public:
  // Every type name must be known to `taxonomy`; every regex must compile.
  static absl::StatusOr<RulePack> Create(
      std::vector<PatternRule> patterns,
      std::map<std::string, std::vector<std::string>> gazetteers,
      const ScoreTable& taxonomy);

  const std::vector<PatternRule>& patterns() const { return patterns_; }
  const std::map<std::string, std::vector<std::string>>& gazetteers() const {
    return gazetteers_;
  }

  std::vector<EntitySpan> Recognize(absl::string_view text) const;

 private:
  RulePack() = default;

  std::vector<PatternRule> patterns_;
  std::vector<std::shared_ptr<const std::regex>> compiled_;
  std::map<std::string, std::vector<std::string>> gazetteers_;
  std::map<std::string, CategoryId> categories_;
};

// Email, phone, 18-character national ID, Luhn-valid 13-19 digit card
// numbers, IPv4 addresses, and a gazetteer of person names.
const RulePack& BuiltinRulePack();

// Person names in the built-in gazetteer.
const std::vector<std::string>& BuiltinNameGazetteer();

// File: {"patterns": [{"type", "regex", "validator"?}], "gazetteers":
// {"Type": ["literal", ...]}}.
absl::StatusOr<RulePack> ParseRulePack(absl::string_view json_text,
                                       const ScoreTable& taxonomy);
absl::StatusOr<RulePack> LoadRulePack(const std::filesystem::path& path,
                                      const ScoreTable& taxonomy);
std::string RulePackToJson(const RulePack& pack);

// Longest match first, then leftmost; spans tagged RULES.
inline std::vector<EntitySpan> RecognizeRules(absl::string_view text,
                                              const RulePack& pack) {
  return pack.Recognize(text);
}

// Luhn checksum over the decimal digits of `text`; other characters are
// ignored. False when there are no digits.
bool LuhnValid(absl::string_view text);

}  // namespace anonpal

#endif  // ANONPAL_RULES_H_
