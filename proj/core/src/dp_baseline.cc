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

#include "anonpal/dp_baseline.h"

#include <cmath>
#include <fstream>
#include <sstream>

#include "absl/strings/ascii.h"
#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_split.h"
#include "anonpal/errors.h"

namespace anonpal {
namespace {

bool IsWordByte(char c) {
  const auto byte = static_cast<unsigned char>(c);
  return absl::ascii_isalnum(byte) || c == '\'' || byte >= 0x80;
}

double Distance(const std::vector<double>& a, const std::vector<double>& b) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    sum += d * d;
  }
  return std::sqrt(sum);
}

}  // namespace

absl::StatusOr<Vocabulary> Vocabulary::Create(
    std::vector<std::string> tokens, std::vector<std::vector<double>> vectors) {
  if (tokens.size() != vectors.size()) {
    return MakeError(ErrorKind::kSchemaError,
                     "token and vector counts differ");
  }
  Vocabulary vocab;
  if (!vectors.empty()) vocab.dimension_ = vectors.front().size();
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (tokens[i].empty()) {
      return MakeError(ErrorKind::kSchemaError, "empty token");
    }
    if (vectors[i].size() != vocab.dimension_ || vocab.dimension_ == 0) {
      return MakeError(ErrorKind::kSchemaError,
                       absl::StrCat("token '", tokens[i], "' has dimension ",
                                    vectors[i].size(), ", expected ",
                                    vocab.dimension_));
    }
    for (double x : vectors[i]) {
      if (!std::isfinite(x)) {
        return MakeError(ErrorKind::kSchemaError,
                         absl::StrCat("token '", tokens[i],
                                      "' has a non-finite component"));
      }
    }
    if (!vocab.index_.emplace(tokens[i], i).second) {
      return MakeError(ErrorKind::kSchemaError,
                       absl::StrCat("duplicate token '", tokens[i], "'"));
    }
  }
  vocab.tokens_ = std::move(tokens);
  vocab.vectors_ = std::move(vectors);
  return vocab;
}

std::optional<std::size_t> Vocabulary::IndexOf(absl::string_view token) const {
  auto it = index_.find(std::string(token));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

absl::StatusOr<Vocabulary> ParseEmbeddings(absl::string_view text) {
  std::vector<std::string> tokens;
  std::vector<std::vector<double>> vectors;
  int line_number = 0;
  for (absl::string_view line : absl::StrSplit(text, '\n')) {
    ++line_number;
    std::vector<absl::string_view> fields =
        absl::StrSplit(line, absl::ByAnyChar(" \t\r"), absl::SkipEmpty());
    if (fields.empty()) continue;
    if (fields.size() < 2) {
      return MakeError(ErrorKind::kSchemaError,
                       absl::StrCat("line ", line_number, ": no vector"));
    }
    std::vector<double> vec;
    for (std::size_t i = 1; i < fields.size(); ++i) {
      double x;
      if (!absl::SimpleAtod(fields[i], &x)) {
        return MakeError(ErrorKind::kSchemaError,
                         absl::StrCat("line ", line_number, ": '", fields[i],
                                      "' is not a number"));
      }
      vec.push_back(x);
    }
    if (!vectors.empty() && vec.size() != vectors.front().size()) {
      return MakeError(ErrorKind::kSchemaError,
                       absl::StrCat("line ", line_number, ": dimension ",
                                    vec.size(), ", expected ",
                                    vectors.front().size()));
    }
    tokens.emplace_back(fields[0]);
    vectors.push_back(std::move(vec));
  }
  return Vocabulary::Create(std::move(tokens), std::move(vectors));
}

absl::StatusOr<Vocabulary> LoadEmbeddings(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    return MakeError(ErrorKind::kIoError,
                     absl::StrCat("cannot open ", path.string()));
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  return ParseEmbeddings(buffer.str());
}

const Vocabulary& ToyVocabulary() {
  static const auto* vocab = [] {
    absl::StatusOr<Vocabulary> parsed = ParseEmbeddings(ToyEmbeddingsText());
    return new Vocabulary(*std::move(parsed));
  }();
  return *vocab;
}

absl::StatusOr<std::vector<double>> ReplacementDistribution(
    absl::string_view token, const Vocabulary& vocab, double epsilon) {
  if (!std::isfinite(epsilon) || epsilon < 0.0) {
    return MakeError(ErrorKind::kRangeError,
                     absl::StrCat("epsilon must be finite and >= 0, got ",
                                  epsilon));
  }
  std::optional<std::size_t> self = vocab.IndexOf(token);
  if (!self.has_value()) {
    return MakeError(ErrorKind::kOutOfVocab,
                     absl::StrCat("'", token, "' is not in the vocabulary"));
  }
  const std::vector<double>& origin = vocab.vector(*self);
  std::vector<double> weights(vocab.size());
  double total = 0.0;
  for (std::size_t i = 0; i < vocab.size(); ++i) {
    // The self weight is exactly 1, so the sum never underflows.
    weights[i] = std::exp(-epsilon * Distance(origin, vocab.vector(i)) / 2.0);
    total += weights[i];
  }
  for (double& w : weights) w /= total;
  return weights;
}

std::size_t SampleIndex(const std::vector<double>& probabilities,
                        std::mt19937_64& rng) {
  const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  double cumulative = 0.0;
  for (std::size_t i = 0; i < probabilities.size(); ++i) {
    cumulative += probabilities[i];
    if (u < cumulative) return i;
  }
  // Rounding left the total just under u; take the last positive entry.
  for (std::size_t i = probabilities.size(); i-- > 0;) {
    if (probabilities[i] > 0.0) return i;
  }
  return 0;
}

absl::Status DpConfig::Validate() const {
  if (!std::isfinite(epsilon) || epsilon <= 0.0) {
    return MakeError(ErrorKind::kRangeError,
                     absl::StrCat("epsilon must be > 0, got ", epsilon));
  }
  return absl::OkStatus();
}

absl::StatusOr<AnonymizedDoc> DpAnonymize(absl::string_view text,
                                          const Vocabulary& vocab,
                                          const DpConfig& config) {
  if (absl::Status status = config.Validate(); !status.ok()) return status;
  std::mt19937_64 rng(config.rng_seed);
  AnonymizedDoc doc;
  doc.output_text.reserve(text.size());
  std::size_t pos = 0;
  while (pos < text.size()) {
    if (!IsWordByte(text[pos])) {
      doc.output_text.push_back(text[pos++]);
      continue;
    }
    std::size_t end = pos;
    while (end < text.size() && IsWordByte(text[end])) ++end;
    const absl::string_view token = text.substr(pos, end - pos);
    std::string key(token);
    bool capitalize = false;
    if (!vocab.IndexOf(key).has_value()) {
      key = absl::AsciiStrToLower(token);
      capitalize = absl::ascii_isupper(static_cast<unsigned char>(token[0]));
    }
    std::string replacement(token);
    if (vocab.IndexOf(key).has_value()) {
      absl::StatusOr<std::vector<double>> probabilities =
          ReplacementDistribution(key, vocab, config.epsilon);
      if (!probabilities.ok()) return probabilities.status();
      replacement = vocab.tokens()[SampleIndex(*probabilities, rng)];
      if (capitalize) {
        replacement[0] = absl::ascii_toupper(
            static_cast<unsigned char>(replacement[0]));
      }
    }
    if (replacement != token) {
      ChangeRegion region;
      region.start = doc.output_text.size();
      region.end = region.start + replacement.size();
      region.original_start = pos;
      region.original_end = end;
      region.replacement = replacement;
      region.category = categories::Id(categories::kOther);
      region.type_name = std::string(kDpTypeName);
      doc.changes.push_back(std::move(region));
    }
    doc.output_text.append(replacement);
    pos = end;
  }
  return doc;
}

}  // namespace anonpal
