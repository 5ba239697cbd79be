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

// End-to-end anonymization: mode -> selection plan -> recognition ->
// pseudonymization, plus the metric-DP comparison mode.

#ifndef ANONPAL_ENGINE_H_
#define ANONPAL_ENGINE_H_

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "anonpal/dp_baseline.h"
#include "anonpal/entity.h"
#include "anonpal/llm_client.h"
#include "anonpal/prompt.h"
#include "anonpal/pseudonymizer.h"
#include "anonpal/rules.h"
#include "anonpal/taxonomy.h"
#include "anonpal/tradeoff.h"

namespace anonpal {

struct AutomaticMode {};
struct PrivacyOnlyMode {
  double x = 0.0;
};
struct FullMode {
  double x = 0.0;
  double y = 1.0;
};
struct DpMode {
  double epsilon = kDefaultEpsilon;
  std::uint64_t seed = 0;
};
using Mode = std::variant<AutomaticMode, PrivacyOnlyMode, FullMode, DpMode>;

// "automatic", "privacy_only", "full" or "dp".
absl::string_view ModeName(const Mode& mode);
// kRangeError when a coordinate is outside [0,1] or epsilon is not > 0.
absl::Status ValidateMode(const Mode& mode);

enum class Backend { kRules, kLlm };
absl::string_view BackendName(Backend backend);
std::optional<Backend> ParseBackend(absl::string_view name);

// What AUTOMATIC selects: the vertex maximizing privacy + utility, or every
// category.
enum class AutomaticPolicy { kKnee, kAll };
std::optional<AutomaticPolicy> ParseAutomaticPolicy(absl::string_view name);

struct EngineOptions {
  double magnet_radius = kDefaultMagnetRadius;
  AutomaticPolicy automatic_policy = AutomaticPolicy::kKnee;
  PseudonymOptions pseudonyms;
  // Recognition results kept per (text, backend); 0 disables the cache.
  std::size_t span_cache_capacity = 1024;
};

// One row of the See-Label view.
struct LabelEntry {
  std::size_t region_index = 0;
  std::string replacement;
  CategoryId category;
  std::string type_name;

  friend bool operator==(const LabelEntry&, const LabelEntry&) = default;
};

struct AnonymizeResult {
  std::string original_text;
  AnonymizedDoc doc;
  // Recognized spans before replacement; empty in DP mode.
  std::vector<EntitySpan> spans;
  // Absent in DP mode.
  std::optional<SelectionPlan> plan;
  std::vector<LabelEntry> labels;

  bool is_dp() const { return !plan.has_value(); }
};

std::vector<LabelEntry> LabelsFor(const AnonymizedDoc& doc);

class Engine {
 public:
  struct Dependencies {
    ScoreTable taxonomy = BuiltinScoreTable();
    RulePack rules = BuiltinRulePack();
    Vocabulary vocabulary = ToyVocabulary();
    PromptTemplate prompt = BuiltinPromptTemplate();
    // Required only for the LLM backend.
    std::optional<LlmClientConfig> llm;
    EngineOptions options;
  };

  // Normalizes the taxonomy and builds the frontier once.
  static absl::StatusOr<std::unique_ptr<Engine>> Create(Dependencies deps);

  // Built-in data, rules backend only.
  static absl::StatusOr<std::unique_ptr<Engine>> CreateDefault();

  Engine(const Engine&) = delete;
  Engine& operator=(const Engine&) = delete;

  const ScoreTable& taxonomy() const { return deps_.taxonomy; }
  const NormalizedScoreTable& normalized() const { return normalized_; }
  const Frontier& frontier() const { return frontier_; }
  const EngineOptions& options() const { return deps_.options; }
  const Vocabulary& vocabulary() const { return deps_.vocabulary; }

  // Plan for a non-DP mode.
  absl::StatusOr<SelectionPlan> Plan(const Mode& mode) const;

  // Recognition is cached per (text, backend); safe for concurrent callers.
  absl::StatusOr<Recognition> Recognize(absl::string_view text,
                                        Backend backend) const;

  // Reentrant; `session` must not be shared by concurrent calls.
  absl::StatusOr<AnonymizeResult> Run(absl::string_view text, const Mode& mode,
                                      Backend backend,
                                      PseudonymSession& session) const;

 private:
  Engine(Dependencies deps, NormalizedScoreTable normalized, Frontier frontier);

  absl::StatusOr<Recognition> RecognizeUncached(absl::string_view text,
                                                Backend backend) const;

  Dependencies deps_;
  NormalizedScoreTable normalized_;
  Frontier frontier_;
  std::optional<ChatCompletionClient> llm_client_;

  mutable std::shared_mutex cache_mutex_;
  mutable std::map<std::pair<std::string, Backend>, Recognition> span_cache_;
};

// Overrides the replacement of region `region_index`, marks it USER_EDIT and
// shifts later regions. Editing back to the original surface is allowed but
// adds the warning "edit restores sensitive text". Errors: kBadIndex,
// kInconsistent.
absl::StatusOr<AnonymizeResult> ApplyUserEdit(AnonymizeResult result,
                                              std::size_t region_index,
                                              absl::string_view new_text);

// The text the host application substitutes for its original input.
inline const std::string& ReplaceText(const AnonymizeResult& result) {
  return result.doc.output_text;
}

}  // namespace anonpal

#endif  // ANONPAL_ENGINE_H_
