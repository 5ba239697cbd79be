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

// Synthetic consultation prompts with ground-truth sensitive spans, used by
// the benchmark harness.

#ifndef ANONPAL_CORPUS_H_
#define ANONPAL_CORPUS_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "anonpal/entity.h"

namespace anonpal {

struct SeededDocument {
  std::string id;
  // "work", "academic" or "life".
  std::string scenario;
  std::string text;
  // Every sensitive surface placed in `text`, in order.
  std::vector<EntitySpan> manifest;
};

struct SeededCorpus {
  std::uint64_t seed = 0;
  std::vector<SeededDocument> documents;
};

// Deterministic in (count, seed). Documents cycle through the three
// scenarios; names come from the rule gazetteer, cards are Luhn-valid.
SeededCorpus GenerateCorpus(std::size_t count, std::uint64_t seed);

std::string CorpusToJson(const SeededCorpus& corpus);
// Errors are kCorpusError, including manifests that do not match the text.
absl::StatusOr<SeededCorpus> ParseCorpus(absl::string_view json_text);
absl::StatusOr<SeededCorpus> LoadCorpus(const std::filesystem::path& path);

}  // namespace anonpal

#endif  // ANONPAL_CORPUS_H_
