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

#include "anonpal/config.h"

#include <cmath>
#include <fstream>
#include <sstream>

#include "absl/strings/ascii.h"
#include "absl/strings/match.h"
#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_split.h"
#include "absl/strings/strip.h"
#include "anonpal/errors.h"

namespace anonpal {
namespace {

struct Value {
  std::string text;
  bool quoted = false;
};

absl::Status LineError(int line, absl::string_view message) {
  return MakeError(ErrorKind::kConfigError,
                   absl::StrCat("line ", line, ": ", message));
}

// Splits off a trailing comment that is not inside quotes.
absl::string_view StripComment(absl::string_view line) {
  bool in_quotes = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '"') in_quotes = !in_quotes;
    if (line[i] == '#' && !in_quotes) return line.substr(0, i);
  }
  return line;
}

absl::StatusOr<Value> ParseValue(absl::string_view raw, int line) {
  raw = absl::StripAsciiWhitespace(raw);
  if (raw.empty()) return LineError(line, "missing value");
  if (raw.front() != '"') return Value{std::string(raw), false};
  if (raw.size() < 2 || raw.back() != '"') {
    return LineError(line, "unterminated string");
  }
  std::string out;
  for (std::size_t i = 1; i + 1 < raw.size(); ++i) {
    char c = raw[i];
    if (c == '\\' && i + 2 < raw.size()) {
      c = raw[++i];
      if (c == 'n') c = '\n';
      if (c == 't') c = '\t';
    } else if (c == '"') {
      return LineError(line, "stray quote inside string");
    }
    out.push_back(c);
  }
  return Value{std::move(out), true};
}

absl::StatusOr<double> AsNumber(const Value& value, int line) {
  double out;
  if (value.quoted || !absl::SimpleAtod(value.text, &out) ||
      !std::isfinite(out)) {
    return LineError(line, absl::StrCat("'", value.text, "' is not a number"));
  }
  return out;
}

absl::StatusOr<bool> AsBool(const Value& value, int line) {
  if (!value.quoted && value.text == "true") return true;
  if (!value.quoted && value.text == "false") return false;
  return LineError(line, absl::StrCat("'", value.text, "' is not a boolean"));
}

absl::StatusOr<std::string> AsString(const Value& value, int line) {
  if (!value.quoted) return LineError(line, "expected a quoted string");
  return value.text;
}

std::filesystem::path Resolve(const std::filesystem::path& base,
                              const std::string& path) {
  std::filesystem::path p(path);
  return p.is_absolute() || base.empty() ? p : base / p;
}

}  // namespace

absl::StatusOr<AppConfig> ParseConfig(absl::string_view text,
                                      const std::filesystem::path& base_dir) {
  AppConfig config;
  std::string section;
  int line_number = 0;
  for (absl::string_view line : absl::StrSplit(text, '\n')) {
    ++line_number;
    line = absl::StripAsciiWhitespace(StripComment(line));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') return LineError(line_number, "bad section header");
      section = std::string(absl::StripAsciiWhitespace(
          line.substr(1, line.size() - 2)));
      if (section != "pseudonym_lists" && section != "llm") {
        return LineError(line_number,
                         absl::StrCat("unknown section [", section, "]"));
      }
      continue;
    }
    const std::size_t eq = line.find('=');
    if (eq == absl::string_view::npos) {
      return LineError(line_number, "expected key = value");
    }
    std::string key(absl::StripAsciiWhitespace(line.substr(0, eq)));
    if (absl::StartsWith(key, "\"") && absl::EndsWith(key, "\"") &&
        key.size() >= 2) {
      key = key.substr(1, key.size() - 2);
    }
    if (key.empty()) return LineError(line_number, "empty key");
    absl::StatusOr<Value> value = ParseValue(line.substr(eq + 1), line_number);
    if (!value.ok()) return value.status();

    auto path_field = [&](std::optional<std::filesystem::path>& field) {
      absl::StatusOr<std::string> s = AsString(*value, line_number);
      if (!s.ok()) return s.status();
      field = Resolve(base_dir, *s);
      return absl::OkStatus();
    };
    absl::Status status;
    if (section == "pseudonym_lists") {
      absl::StatusOr<std::string> s = AsString(*value, line_number);
      if (!s.ok()) return s.status();
      config.pseudonym_lists[key] = Resolve(base_dir, *s);
      continue;
    }
    if (section == "llm") {
      if (key == "endpoint" || key == "model") {
        absl::StatusOr<std::string> s = AsString(*value, line_number);
        if (!s.ok()) return s.status();
        (key == "endpoint" ? config.llm_endpoint : config.llm_model) = *s;
      } else if (key == "fixtures") {
        status = path_field(config.llm_fixtures);
      } else {
        return LineError(line_number, absl::StrCat("unknown key llm.", key));
      }
      if (!status.ok()) return status;
      continue;
    }
    if (key == "scores") {
      status = path_field(config.scores);
    } else if (key == "rules") {
      status = path_field(config.rules);
    } else if (key == "embeddings") {
      status = path_field(config.embeddings);
    } else if (key == "prompt") {
      status = path_field(config.prompt);
    } else if (key == "session_dir") {
      status = path_field(config.session_dir);
    } else if (key == "magnet_radius") {
      absl::StatusOr<double> v = AsNumber(*value, line_number);
      if (!v.ok()) return v.status();
      if (*v < 0.0) return LineError(line_number, "magnet_radius must be >= 0");
      config.magnet_radius = *v;
    } else if (key == "epsilon") {
      absl::StatusOr<double> v = AsNumber(*value, line_number);
      if (!v.ok()) return v.status();
      if (*v <= 0.0) return LineError(line_number, "epsilon must be > 0");
      config.epsilon = *v;
    } else if (key == "utility_default") {
      absl::StatusOr<double> v = AsNumber(*value, line_number);
      if (!v.ok()) return v.status();
      config.utility_default = *v;
    } else if (key == "luhn_valid_cards") {
      absl::StatusOr<bool> v = AsBool(*value, line_number);
      if (!v.ok()) return v.status();
      config.luhn_valid_cards = *v;
    } else if (key == "automatic_policy") {
      absl::StatusOr<std::string> s = AsString(*value, line_number);
      if (!s.ok()) return s.status();
      std::optional<AutomaticPolicy> policy = ParseAutomaticPolicy(*s);
      if (!policy.has_value()) {
        return LineError(line_number, "automatic_policy must be knee or all");
      }
      config.automatic_policy = *policy;
    } else if (key == "bearer_token") {
      absl::StatusOr<std::string> s = AsString(*value, line_number);
      if (!s.ok()) return s.status();
      config.bearer_token = *s;
    } else {
      return LineError(line_number, absl::StrCat("unknown key '", key, "'"));
    }
    if (!status.ok()) return status;
  }
  return config;
}

absl::StatusOr<AppConfig> LoadConfig(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    return MakeError(ErrorKind::kConfigError,
                     absl::StrCat("cannot open config file ", path.string()));
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  return ParseConfig(buffer.str(), path.parent_path());
}

absl::StatusOr<Engine::Dependencies> DependenciesFromConfig(
    const AppConfig& config) {
  Engine::Dependencies deps;
  if (config.scores.has_value()) {
    absl::StatusOr<ScoreTable> table = LoadScoreTable(*config.scores);
    if (!table.ok()) return table.status();
    if (config.utility_default.has_value() && table->HasUnresolvedUtility()) {
      table = table->WithUtilityDefault(*config.utility_default);
      if (!table.ok()) return table.status();
    }
    deps.taxonomy = *std::move(table);
  }
  if (config.rules.has_value()) {
    absl::StatusOr<RulePack> rules = LoadRulePack(*config.rules, deps.taxonomy);
    if (!rules.ok()) return rules.status();
    deps.rules = *std::move(rules);
  } else if (config.scores.has_value()) {
    // Re-validate the built-in rules against the custom taxonomy.
    absl::StatusOr<RulePack> rules =
        RulePack::Create(BuiltinRulePack().patterns(),
                         BuiltinRulePack().gazetteers(), deps.taxonomy);
    if (!rules.ok()) return rules.status();
    deps.rules = *std::move(rules);
  }
  if (config.embeddings.has_value()) {
    absl::StatusOr<Vocabulary> vocab = LoadEmbeddings(*config.embeddings);
    if (!vocab.ok()) return vocab.status();
    deps.vocabulary = *std::move(vocab);
  }
  if (config.prompt.has_value()) {
    absl::StatusOr<PromptTemplate> prompt = LoadPromptTemplate(*config.prompt);
    if (!prompt.ok()) return prompt.status();
    deps.prompt = *std::move(prompt);
  }
  for (const auto& [type, path] : config.pseudonym_lists) {
    absl::StatusOr<std::vector<std::string>> list = LoadPseudonymList(path);
    if (!list.ok()) return list.status();
    if (list->empty()) {
      return MakeError(ErrorKind::kConfigError,
                       absl::StrCat("pseudonym list for '", type,
                                    "' is empty"));
    }
    deps.options.pseudonyms.lists[type] = *std::move(list);
  }
  deps.options.pseudonyms.luhn_valid_cards = config.luhn_valid_cards;
  deps.options.magnet_radius = config.magnet_radius;
  deps.options.automatic_policy = config.automatic_policy;

  LlmClientConfig llm = LlmClientConfig::FromEnv();
  if (!config.llm_endpoint.empty()) llm.endpoint = config.llm_endpoint;
  if (!config.llm_model.empty()) llm.model_name = config.llm_model;
  if (config.llm_fixtures.has_value()) {
    llm.fixture_dir = *config.llm_fixtures;
    llm.fixture_mode = FixtureMode::kReplay;
  }
  if (!llm.endpoint.empty() || llm.fixture_mode != FixtureMode::kOff) {
    deps.llm = std::move(llm);
  }
  return deps;
}

}  // namespace anonpal
