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

// Word-level metric differential privacy over a word-embedding vocabulary.
// Each in-vocabulary token w is replaced by w' with probability
// proportional to exp(-epsilon * |v(w) - v(w')| / 2).

#ifndef ANONPAL_DP_BASELINE_H_
#define ANONPAL_DP_BASELINE_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <random>
#include <string>
#include <unordered_map>
#include <vector>

#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "anonpal/pseudonymizer.h"

namespace anonpal {

inline constexpr double kDefaultEpsilon = 10.0;
inline constexpr absl::string_view kDpTypeName = "DP-perturbed";

class Vocabulary {
 public:
  Vocabulary() = default;

  // Tokens must be unique and non-empty; every vector must have the same,
  // nonzero dimension and finite components.
  static absl::StatusOr<Vocabulary> Create(
      std::vector<std::string> tokens, std::vector<std::vector<double>> vectors);

  std::size_t size() const { return tokens_.size(); }
  bool empty() const { return tokens_.empty(); }
  std::size_t dimension() const { return dimension_; }
  const std::vector<std::string>& tokens() const { return tokens_; }
  const std::vector<double>& vector(std::size_t index) const {
    return vectors_[index];
  }
  std::optional<std::size_t> IndexOf(absl::string_view token) const;

 private:
  std::vector<std::string> tokens_;
  std::vector<std::vector<double>> vectors_;
  std::unordered_map<std::string, std::size_t> index_;
  std::size_t dimension_ = 0;
};

// One token per line: `token v1 v2 ... vd`. Blank lines are skipped. The
// dimension is taken from the first line. Errors are kSchemaError.
absl::StatusOr<Vocabulary> ParseEmbeddings(absl::string_view text);
absl::StatusOr<Vocabulary> LoadEmbeddings(const std::filesystem::path& path);

// The 100-token, 4-dimensional embedding shipped with the library.
absl::string_view ToyEmbeddingsText();
const Vocabulary& ToyVocabulary();

// Probability vector over `vocab` in vocabulary order. epsilon = 0 gives the
// uniform distribution. Errors: kOutOfVocab, kRangeError (epsilon < 0 or
// not finite).
absl::StatusOr<std::vector<double>> ReplacementDistribution(
    absl::string_view token, const Vocabulary& vocab, double epsilon);

// Inverse-CDF draw from `probabilities` using a 53-bit uniform.
std::size_t SampleIndex(const std::vector<double>& probabilities,
                        std::mt19937_64& rng);

struct DpConfig {
  double epsilon = kDefaultEpsilon;
  std::uint64_t rng_seed = 0;

  // kRangeError unless epsilon is finite and > 0.
  absl::Status Validate() const;
};

// Resamples every in-vocabulary token independently. Lookup tries the token
// as written, then lower-cased; a capitalized token keeps its capital. Each
// token whose text changes yields one ChangeRegion of category "other" and
// type "DP-perturbed". Fails only on an invalid config.
absl::StatusOr<AnonymizedDoc> DpAnonymize(absl::string_view text,
                                          const Vocabulary& vocab,
                                          const DpConfig& config);

}  // namespace anonpal

#endif  // ANONPAL_DP_BASELINE_H_
