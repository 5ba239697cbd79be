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

#include "anonpal/bench.h"

#include <chrono>
#include <set>

#include "absl/strings/ascii.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "absl/strings/str_join.h"
#include "anonpal/errors.h"
#include "json.hpp"

namespace anonpal {
namespace {

bool IsWordByte(char c) {
  const auto byte = static_cast<unsigned char>(c);
  return absl::ascii_isalnum(byte) || c == '\'' || byte >= 0x80;
}

bool Overlaps(std::size_t a_start, std::size_t a_end, std::size_t b_start,
              std::size_t b_end) {
  return a_start < b_end && b_start < a_end;
}

}  // namespace

std::vector<BenchMode> DefaultBenchModes(double epsilon) {
  return {
      {"automatic", AutomaticMode{}},
      {"privacy_only@0.5", PrivacyOnlyMode{0.5}},
      {"full@1,0", FullMode{1.0, 0.0}},
      {"full@0,1", FullMode{0.0, 1.0}},
      {absl::StrCat("dp@", epsilon), DpMode{epsilon, 0}},
  };
}

std::vector<std::pair<std::size_t, std::size_t>> WordTokens(
    absl::string_view text) {
  std::vector<std::pair<std::size_t, std::size_t>> tokens;
  std::size_t pos = 0;
  while (pos < text.size()) {
    if (!IsWordByte(text[pos])) {
      ++pos;
      continue;
    }
    const std::size_t start = pos;
    while (pos < text.size() && IsWordByte(text[pos])) ++pos;
    tokens.emplace_back(start, pos);
  }
  return tokens;
}

absl::StatusOr<BenchReport> RunBench(const Engine& engine,
                                     const SeededCorpus& corpus,
                                     const std::vector<BenchMode>& modes,
                                     std::uint64_t seed) {
  if (corpus.documents.empty()) {
    return MakeError(ErrorKind::kCorpusError, "corpus has no documents");
  }
  BenchReport report;
  report.seed = seed;
  for (const BenchMode& bench_mode : modes) {
    std::size_t seeded = 0;
    std::size_t absent = 0;
    std::size_t plain_tokens = 0;
    std::size_t preserved = 0;
    double total_ms = 0.0;
    std::set<std::string> replaced;
    for (std::size_t i = 0; i < corpus.documents.size(); ++i) {
      const SeededDocument& doc = corpus.documents[i];
      PseudonymSession session =
          PseudonymSession::FromSeed(doc.id, seed * 1000003ULL + i);
      Mode mode = bench_mode.mode;
      if (auto* dp = std::get_if<DpMode>(&mode)) dp->seed = seed ^ (i + 1);
      const auto start = std::chrono::steady_clock::now();
      absl::StatusOr<AnonymizeResult> result =
          engine.Run(doc.text, mode, Backend::kRules, session);
      total_ms += std::chrono::duration<double, std::milli>(
                      std::chrono::steady_clock::now() - start)
                      .count();
      if (!result.ok()) {
        return Annotate(result.status(),
                        absl::StrCat(bench_mode.label, " on ", doc.id));
      }
      const std::string& output = result->doc.output_text;
      for (const EntitySpan& span : doc.manifest) {
        ++seeded;
        if (output.find(span.surface) == std::string::npos) ++absent;
      }
      for (const auto& [start_tok, end_tok] : WordTokens(doc.text)) {
        bool sensitive = false;
        for (const EntitySpan& span : doc.manifest) {
          sensitive |= Overlaps(start_tok, end_tok, span.start, span.end);
        }
        if (sensitive) continue;
        ++plain_tokens;
        bool touched = false;
        for (const ChangeRegion& change : result->doc.changes) {
          touched |= Overlaps(start_tok, end_tok, change.original_start,
                              change.original_end);
        }
        if (!touched) ++preserved;
      }
      for (const ChangeRegion& change : result->doc.changes) {
        replaced.insert(change.category.value);
      }
    }
    ModeReport mode_report;
    mode_report.label = bench_mode.label;
    mode_report.residual_recall =
        seeded == 0 ? 1.0 : static_cast<double>(absent) / seeded;
    mode_report.preservation =
        plain_tokens == 0 ? 1.0 : static_cast<double>(preserved) / plain_tokens;
    mode_report.doc_count = corpus.documents.size();
    mode_report.mean_latency_ms = total_ms / corpus.documents.size();
    mode_report.replaced_categories.assign(replaced.begin(), replaced.end());
    report.modes.push_back(std::move(mode_report));
  }
  return report;
}

std::string BenchReportToJson(const BenchReport& report, bool include_latency) {
  nlohmann::json modes = nlohmann::json::array();
  for (const ModeReport& m : report.modes) {
    nlohmann::json item = {{"mode", m.label},
                           {"residual_recall", m.residual_recall},
                           {"preservation", m.preservation},
                           {"doc_count", m.doc_count},
                           {"replaced_categories", m.replaced_categories}};
    if (include_latency) item["mean_latency_ms"] = m.mean_latency_ms;
    modes.push_back(std::move(item));
  }
  return nlohmann::json{{"seed", report.seed}, {"modes", std::move(modes)}}
             .dump(2) +
         "\n";
}

std::string BenchReportToCsv(const BenchReport& report, bool include_latency) {
  std::string out = "mode,residual_recall,preservation,doc_count";
  if (include_latency) out += ",mean_latency_ms";
  out += "\n";
  for (const ModeReport& m : report.modes) {
    absl::StrAppendFormat(&out, "\"%s\",%.6f,%.6f,%d", m.label,
                          m.residual_recall, m.preservation, m.doc_count);
    if (include_latency) absl::StrAppendFormat(&out, ",%.3f", m.mean_latency_ms);
    out += "\n";
  }
  return out;
}

}  // namespace anonpal
