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

// Corpus-level comparison of the anonymization modes with the rules backend.

#ifndef ANONPAL_BENCH_H_
#define ANONPAL_BENCH_H_

#include <cstdint>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "anonpal/corpus.h"
#include "anonpal/engine.h"

namespace anonpal {

struct BenchMode {
  std::string label;
  Mode mode;
};

// automatic, privacy_only(0.5), full(1,0), full(0,1), dp(epsilon).
std::vector<BenchMode> DefaultBenchModes(double epsilon = kDefaultEpsilon);

struct ModeReport {
  std::string label;
  // Fraction of seeded sensitive surfaces absent from the output.
  double residual_recall = 0.0;
  // Fraction of tokens outside every seeded span that no change touched.
  double preservation = 0.0;
  double mean_latency_ms = 0.0;
  std::size_t doc_count = 0;
  // Distinct categories replaced anywhere in the corpus.
  std::vector<std::string> replaced_categories;
};

struct BenchReport {
  std::uint64_t seed = 0;
  std::vector<ModeReport> modes;
};

// Runs every mode over every document. Sessions and DP generators are
// derived from `seed` and the document index, so everything except latency
// is reproducible. kCorpusError on an empty corpus.
absl::StatusOr<BenchReport> RunBench(const Engine& engine,
                                     const SeededCorpus& corpus,
                                     const std::vector<BenchMode>& modes,
                                     std::uint64_t seed);

// Word tokens as [start, end) byte ranges; the same tokenizer the DP mode
// uses.
std::vector<std::pair<std::size_t, std::size_t>> WordTokens(
    absl::string_view text);

std::string BenchReportToJson(const BenchReport& report,
                              bool include_latency = true);
std::string BenchReportToCsv(const BenchReport& report,
                             bool include_latency = true);

}  // namespace anonpal

#endif  // ANONPAL_BENCH_H_
