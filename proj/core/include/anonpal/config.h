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

// Application configuration: a small TOML-style key/value file.
//
//   # comment
//   scores = "data/scores.json"
//   magnet_radius = 0.03
//   [pseudonym_lists]
//   Name = "names.txt"
//
// Relative paths resolve against the directory of the config file.

#ifndef ANONPAL_CONFIG_H_
#define ANONPAL_CONFIG_H_

#include <filesystem>
#include <map>
#include <optional>
#include <string>

#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "anonpal/dp_baseline.h"
#include "anonpal/engine.h"
#include "anonpal/tradeoff.h"

namespace anonpal {

struct AppConfig {
  std::optional<std::filesystem::path> scores;
  std::optional<std::filesystem::path> rules;
  std::optional<std::filesystem::path> embeddings;
  std::optional<std::filesystem::path> prompt;
  // Type name -> one-per-line list file.
  std::map<std::string, std::filesystem::path> pseudonym_lists;
  double magnet_radius = kDefaultMagnetRadius;
  double epsilon = kDefaultEpsilon;
  AutomaticPolicy automatic_policy = AutomaticPolicy::kKnee;
  bool luhn_valid_cards = false;
  // Applied to categories without a utility mean in a custom scores file.
  std::optional<double> utility_default;
  // Session persistence; sessions live in memory when unset.
  std::optional<std::filesystem::path> session_dir;
  std::string bearer_token;
  // LLM backend; environment variables fill the gaps.
  std::string llm_endpoint;
  std::string llm_model;
  std::optional<std::filesystem::path> llm_fixtures;
};

// Errors are kConfigError and name the offending line.
absl::StatusOr<AppConfig> ParseConfig(absl::string_view text,
                                      const std::filesystem::path& base_dir);
absl::StatusOr<AppConfig> LoadConfig(const std::filesystem::path& path);

// Loads every referenced file. The LLM client is configured when an endpoint
// or fixture directory is known from the config or the environment.
absl::StatusOr<Engine::Dependencies> DependenciesFromConfig(
    const AppConfig& config);

}  // namespace anonpal

#endif  // ANONPAL_CONFIG_H_
