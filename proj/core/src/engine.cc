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

#include "anonpal/engine.h"

#include <cmath>
#include <mutex>

#include "absl/strings/str_cat.h"
#include "anonpal/crypto.h"
#include "anonpal/errors.h"

namespace anonpal {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

absl::Status CheckUnit(absl::string_view what, double value) {
  if (!(value >= 0.0 && value <= 1.0)) {
    return MakeError(ErrorKind::kRangeError,
                     absl::StrCat(what, " must lie in [0, 1], got ", value));
  }
  return absl::OkStatus();
}

}  // namespace

absl::string_view ModeName(const Mode& mode) {
  return std::visit(Overloaded{
                        [](const AutomaticMode&) { return "automatic"; },
                        [](const PrivacyOnlyMode&) { return "privacy_only"; },
                        [](const FullMode&) { return "full"; },
                        [](const DpMode&) { return "dp"; },
                    },
                    mode);
}

absl::Status ValidateMode(const Mode& mode) {
  return std::visit(
      Overloaded{
          [](const AutomaticMode&) { return absl::OkStatus(); },
          [](const PrivacyOnlyMode& m) { return CheckUnit("privacy", m.x); },
          [](const FullMode& m) {
            absl::Status status = CheckUnit("privacy", m.x);
            if (!status.ok()) return status;
            return CheckUnit("utility", m.y);
          },
          [](const DpMode& m) {
            return DpConfig{m.epsilon, m.seed}.Validate();
          },
      },
      mode);
}

absl::string_view BackendName(Backend backend) {
  return backend == Backend::kLlm ? "llm" : "rules";
}

std::optional<Backend> ParseBackend(absl::string_view name) {
  if (name == "rules") return Backend::kRules;
  if (name == "llm") return Backend::kLlm;
  return std::nullopt;
}

std::optional<AutomaticPolicy> ParseAutomaticPolicy(absl::string_view name) {
  if (name == "knee") return AutomaticPolicy::kKnee;
  if (name == "all") return AutomaticPolicy::kAll;
  return std::nullopt;
}

std::vector<LabelEntry> LabelsFor(const AnonymizedDoc& doc) {
  std::vector<LabelEntry> labels;
  labels.reserve(doc.changes.size());
  for (std::size_t i = 0; i < doc.changes.size(); ++i) {
    const ChangeRegion& change = doc.changes[i];
    labels.push_back(
        LabelEntry{i, change.replacement, change.category, change.type_name});
  }
  return labels;
}

Engine::Engine(Dependencies deps, NormalizedScoreTable normalized,
               Frontier frontier)
    : deps_(std::move(deps)),
      normalized_(std::move(normalized)),
      frontier_(std::move(frontier)) {
  if (deps_.llm.has_value()) llm_client_.emplace(*deps_.llm);
}

absl::StatusOr<std::unique_ptr<Engine>> Engine::Create(Dependencies deps) {
  if (!(deps.options.magnet_radius >= 0.0)) {
    return MakeError(ErrorKind::kRangeError, "magnet radius must be >= 0");
  }
  if (deps.llm.has_value()) {
    if (absl::Status status = deps.llm->Validate(); !status.ok()) return status;
  }
  absl::StatusOr<NormalizedScoreTable> normalized = Normalize(deps.taxonomy);
  if (!normalized.ok()) return normalized.status();
  absl::StatusOr<Frontier> frontier = BuildFrontier(*normalized);
  if (!frontier.ok()) return frontier.status();
  return std::unique_ptr<Engine>(
      new Engine(std::move(deps), *std::move(normalized), *std::move(frontier)));
}

absl::StatusOr<std::unique_ptr<Engine>> Engine::CreateDefault() {
  return Create(Dependencies{});
}

absl::StatusOr<SelectionPlan> Engine::Plan(const Mode& mode) const {
  if (absl::Status status = ValidateMode(mode); !status.ok()) return status;
  return std::visit(
      Overloaded{
          [&](const AutomaticMode&) -> absl::StatusOr<SelectionPlan> {
            if (deps_.options.automatic_policy == AutomaticPolicy::kAll) {
              return SelectAll(frontier_);
            }
            return AutomaticSelect(frontier_);
          },
          [&](const PrivacyOnlyMode& m) -> absl::StatusOr<SelectionPlan> {
            return PrivacyOnlySelect(frontier_, m.x);
          },
          [&](const FullMode& m) -> absl::StatusOr<SelectionPlan> {
            return Project(frontier_, TargetPoint(m.x, m.y),
                           deps_.options.magnet_radius);
          },
          [](const DpMode&) -> absl::StatusOr<SelectionPlan> {
            return MakeError(ErrorKind::kRangeError,
                             "DP mode has no selection plan");
          },
      },
      mode);
}

absl::StatusOr<Recognition> Engine::RecognizeUncached(absl::string_view text,
                                                      Backend backend) const {
  if (backend == Backend::kRules) {
    return Recognition{deps_.rules.Recognize(text), {}};
  }
  if (!llm_client_.has_value()) {
    return MakeError(ErrorKind::kConfigError,
                     "the LLM backend needs an endpoint");
  }
  return RecognizeLlm(text, *llm_client_, deps_.taxonomy, deps_.prompt);
}

absl::StatusOr<Recognition> Engine::Recognize(absl::string_view text,
                                              Backend backend) const {
  if (text.empty()) return MakeError(ErrorKind::kEmptyInput, "text is empty");
  const std::size_t capacity = deps_.options.span_cache_capacity;
  if (capacity == 0) return RecognizeUncached(text, backend);
  auto key = std::make_pair(ToHex(Sha256(text)), backend);
  {
    std::shared_lock lock(cache_mutex_);
    auto it = span_cache_.find(key);
    if (it != span_cache_.end()) return it->second;
  }
  absl::StatusOr<Recognition> recognition = RecognizeUncached(text, backend);
  if (!recognition.ok()) return recognition.status();
  std::unique_lock lock(cache_mutex_);
  if (span_cache_.size() >= capacity) span_cache_.clear();
  span_cache_.emplace(std::move(key), *recognition);
  return recognition;
}

absl::StatusOr<AnonymizeResult> Engine::Run(absl::string_view text,
                                            const Mode& mode, Backend backend,
                                            PseudonymSession& session) const {
  if (text.empty()) return MakeError(ErrorKind::kEmptyInput, "text is empty");
  if (absl::Status status = ValidateMode(mode); !status.ok()) return status;
  AnonymizeResult result;
  result.original_text = std::string(text);
  if (const auto* dp = std::get_if<DpMode>(&mode)) {
    absl::StatusOr<AnonymizedDoc> doc =
        DpAnonymize(text, deps_.vocabulary, DpConfig{dp->epsilon, dp->seed});
    if (!doc.ok()) return doc.status();
    result.doc = *std::move(doc);
    result.labels = LabelsFor(result.doc);
    return result;
  }
  absl::StatusOr<SelectionPlan> plan = Plan(mode);
  if (!plan.ok()) return plan.status();
  absl::StatusOr<Recognition> recognition = Recognize(text, backend);
  if (!recognition.ok()) return recognition.status();
  absl::StatusOr<AnonymizedDoc> doc = Pseudonymize(
      text, recognition->spans, *plan, session, deps_.options.pseudonyms);
  if (!doc.ok()) return doc.status();
  result.doc = *std::move(doc);
  result.doc.warnings.insert(result.doc.warnings.begin(),
                            recognition->warnings.begin(),
                            recognition->warnings.end());
  result.spans = std::move(recognition->spans);
  result.plan = *std::move(plan);
  result.labels = LabelsFor(result.doc);
  return result;
}

absl::StatusOr<AnonymizeResult> ApplyUserEdit(AnonymizeResult result,
                                              std::size_t region_index,
                                              absl::string_view new_text) {
  if (region_index >= result.doc.changes.size()) {
    return MakeError(ErrorKind::kBadIndex,
                     absl::StrCat("region ", region_index, " does not exist (",
                                  result.doc.changes.size(), " regions)"));
  }
  const ChangeRegion& region = result.doc.changes[region_index];
  const absl::string_view original =
      absl::string_view(result.original_text)
          .substr(region.original_start,
                  region.original_end - region.original_start);
  if (new_text == original) {
    result.doc.warnings.push_back("edit restores sensitive text");
  }
  if (absl::Status status = EditRegion(result.doc, region_index, new_text);
      !status.ok()) {
    return status;
  }
  absl::StatusOr<std::vector<DiffEntry>> check =
      Diff(result.original_text, result.doc);
  if (!check.ok()) return check.status();
  result.labels = LabelsFor(result.doc);
  return result;
}

}  // namespace anonpal
