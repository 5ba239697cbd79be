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


// Microbenchmarks for the hot paths: frontier construction, rule
// recognition, pseudonymization, the DP baseline and the full engine.

#include <memory>
#include <random>
#include <string>
#include <vector>

#include "absl/strings/str_cat.h"
#include "anonpal/corpus.h"
#include "anonpal/dp_baseline.h"
#include "anonpal/engine.h"
#include "anonpal/pseudonymizer.h"
#include "anonpal/rules.h"
#include "anonpal/taxonomy.h"
#include "anonpal/tradeoff.h"
#include "benchmark/benchmark.h"

namespace anonpal {
namespace {

NormalizedScoreTable RandomTable(std::size_t n) {
  std::mt19937_64 rng(n);
  std::uniform_real_distribution<double> score(1.0, 7.0);
  std::vector<ScoreEntry> entries;
  for (std::size_t i = 0; i < n; ++i) {
    ScoreEntry e;
    e.id = categories::Id(absl::StrCat("c", i));
    e.privacy_raw = score(rng);
    e.utility_raw = score(rng);
    entries.push_back(std::move(e));
  }
  return *Normalize(*ScoreTable::Create(std::move(entries)));
}

void BM_BuildFrontier(benchmark::State& state) {
  const NormalizedScoreTable table =
      RandomTable(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(BuildFrontier(table));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_BuildFrontier)->RangeMultiplier(4)->Range(16, 1024)->Complexity();

void BM_Project(benchmark::State& state) {
  const Frontier frontier = *BuildFrontier(*Normalize(BuiltinScoreTable()));
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(Project(frontier, TargetPoint(unit(rng), unit(rng))));
  }
}
BENCHMARK(BM_Project);

const SeededCorpus& Corpus() {
  static const SeededCorpus* corpus = new SeededCorpus(GenerateCorpus(64, 7));
  return *corpus;
}

void BM_RecognizeRules(benchmark::State& state) {
  const RulePack& pack = BuiltinRulePack();
  std::size_t bytes = 0;
  for (auto _ : state) {
    for (const SeededDocument& doc : Corpus().documents) {
      benchmark::DoNotOptimize(pack.Recognize(doc.text));
      bytes += doc.text.size();
    }
  }
  state.SetBytesProcessed(static_cast<std::int64_t>(bytes));
}
BENCHMARK(BM_RecognizeRules);

void BM_Pseudonymize(benchmark::State& state) {
  SelectionPlan plan;
  for (const ScoreEntry& e : BuiltinScoreTable().entries()) {
    plan.categories.insert(e.id);
  }
  std::vector<std::vector<EntitySpan>> spans;
  for (const SeededDocument& doc : Corpus().documents) {
    spans.push_back(BuiltinRulePack().Recognize(doc.text));
  }
  for (auto _ : state) {
    PseudonymSession session = PseudonymSession::FromSeed("bench", 1);
    for (std::size_t i = 0; i < spans.size(); ++i) {
      benchmark::DoNotOptimize(
          Pseudonymize(Corpus().documents[i].text, spans[i], plan, session));
    }
  }
  state.SetItemsProcessed(state.iterations() *
                          static_cast<std::int64_t>(spans.size()));
}
BENCHMARK(BM_Pseudonymize);

void BM_DpAnonymize(benchmark::State& state) {
  const Vocabulary& vocab = ToyVocabulary();
  const std::string& text = Corpus().documents.front().text;
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        DpAnonymize(text, vocab, DpConfig{static_cast<double>(state.range(0)),
                                          ++seed}));
  }
}
BENCHMARK(BM_DpAnonymize)->Arg(1)->Arg(10);

void BM_EngineRunFull(benchmark::State& state) {
  std::unique_ptr<Engine> engine = *Engine::CreateDefault();
  for (auto _ : state) {
    PseudonymSession session = PseudonymSession::FromSeed("bench", 1);
    for (const SeededDocument& doc : Corpus().documents) {
      benchmark::DoNotOptimize(
          engine->Run(doc.text, FullMode{0.7, 0.5}, Backend::kRules, session));
    }
  }
  state.SetItemsProcessed(state.iterations() *
                          static_cast<std::int64_t>(Corpus().documents.size()));
}
BENCHMARK(BM_EngineRunFull);

}  // namespace
}  // namespace anonpal

BENCHMARK_MAIN();
