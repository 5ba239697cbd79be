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

#include <algorithm>
#include <cmath>
#include <memory>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "absl/strings/match.h"
#include "absl/strings/str_cat.h"
#include "anonpal/corpus.h"
#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "oracles/status_matchers.h"

namespace anonpal {
namespace {

using ::anonpal::testing::HasErrorKind;
using ::testing::Contains;
using ::testing::ElementsAre;
using ::testing::IsEmpty;
using ::testing::Not;

constexpr absl::string_view kEmailDoc =
    "Can you tighten this paragraph before I send it to "
    "priya.natarajan@northwind.example tomorrow morning?";

std::unique_ptr<Engine> DefaultEngine() {
  auto engine = Engine::CreateDefault();
  EXPECT_TRUE(engine.ok()) << engine.status();
  return *std::move(engine);
}

// Raw scores chosen so that normalization yields A(1, 0.2), B(0.5, 1) and
// C(0, 0).
ScoreTable ToyScores() {
  std::vector<ScoreEntry> entries(3);
  entries[0].id = categories::Id("A");
  entries[0].privacy_raw = 7.0;
  entries[0].utility_raw = 2.2;
  entries[1].id = categories::Id("B");
  entries[1].privacy_raw = 4.0;
  entries[1].utility_raw = 7.0;
  entries[2].id = categories::Id("C");
  entries[2].privacy_raw = 1.0;
  entries[2].utility_raw = 1.0;
  return *ScoreTable::Create(std::move(entries));
}

std::set<CategoryId> ReplacedCategories(const AnonymizeResult& result) {
  std::set<CategoryId> out;
  for (const ChangeRegion& change : result.doc.changes) {
    out.insert(change.category);
  }
  return out;
}

TEST(ModeTest, NamesAndValidation) {
  EXPECT_EQ(ModeName(AutomaticMode{}), "automatic");
  EXPECT_EQ(ModeName(PrivacyOnlyMode{0.3}), "privacy_only");
  EXPECT_EQ(ModeName(FullMode{0.1, 0.2}), "full");
  EXPECT_EQ(ModeName(DpMode{}), "dp");

  ANONPAL_EXPECT_OK(ValidateMode(FullMode{0.0, 1.0}));
  ANONPAL_EXPECT_OK(ValidateMode(PrivacyOnlyMode{1.0}));
  EXPECT_THAT(ValidateMode(FullMode{2.0, 0.5}),
              HasErrorKind(ErrorKind::kRangeError));
  EXPECT_THAT(ValidateMode(FullMode{0.5, -0.1}),
              HasErrorKind(ErrorKind::kRangeError));
  EXPECT_THAT(ValidateMode(PrivacyOnlyMode{std::nan("")}),
              HasErrorKind(ErrorKind::kRangeError));
  EXPECT_THAT(ValidateMode(DpMode{0.0, 1}), Not(::anonpal::testing::IsOk()));
  EXPECT_THAT(ValidateMode(DpMode{-3.0, 1}), Not(::anonpal::testing::IsOk()));
}

TEST(ModeTest, ParsersRoundTrip) {
  EXPECT_EQ(ParseBackend("rules"), Backend::kRules);
  EXPECT_EQ(ParseBackend("llm"), Backend::kLlm);
  EXPECT_EQ(ParseBackend("regex"), std::nullopt);
  EXPECT_EQ(BackendName(Backend::kLlm), "llm");
  EXPECT_EQ(ParseAutomaticPolicy("knee"), AutomaticPolicy::kKnee);
  EXPECT_EQ(ParseAutomaticPolicy("all"), AutomaticPolicy::kAll);
  EXPECT_EQ(ParseAutomaticPolicy("most"), std::nullopt);
}

TEST(EngineTest, ZeroPrivacyIsNoOp) {
  auto engine = DefaultEngine();
  PseudonymSession session = PseudonymSession::FromSeed("s", 1);
  ANONPAL_ASSERT_OK_AND_ASSIGN(
      AnonymizeResult result,
      engine->Run(kEmailDoc, FullMode{0.0, 1.0}, Backend::kRules, session));
  EXPECT_EQ(ReplaceText(result), kEmailDoc);
  EXPECT_THAT(result.doc.changes, IsEmpty());
  EXPECT_THAT(result.labels, IsEmpty());
  ASSERT_TRUE(result.plan.has_value());
  EXPECT_THAT(result.plan->categories, IsEmpty());
  EXPECT_FALSE(result.is_dp());
  // Recognition still ran; the spans are reported even when nothing changes.
  EXPECT_THAT(result.spans, Not(IsEmpty()));
}

TEST(EngineTest, FullPrivacyReplacesOnlyTheSeededEmail) {
  auto engine = DefaultEngine();
  PseudonymSession session = PseudonymSession::FromSeed("s", 1);
  ANONPAL_ASSERT_OK_AND_ASSIGN(
      AnonymizeResult result,
      engine->Run(kEmailDoc, FullMode{1.0, 0.0}, Backend::kRules, session));
  const std::string email = "priya.natarajan@northwind.example";
  const std::size_t at = std::string(kEmailDoc).find(email);
  ASSERT_EQ(result.doc.changes.size(), 1u);
  const ChangeRegion& region = result.doc.changes[0];
  EXPECT_EQ(region.original_start, at);
  EXPECT_EQ(region.original_end, at + email.size());
  EXPECT_FALSE(absl::StrContains(ReplaceText(result), email));
  // Everything around the email is byte-identical.
  const std::string& out = ReplaceText(result);
  EXPECT_EQ(out.substr(0, at), std::string(kEmailDoc).substr(0, at));
  EXPECT_EQ(out.substr(region.end),
            std::string(kEmailDoc).substr(at + email.size()));
  EXPECT_EQ(out.substr(region.start, region.end - region.start),
            region.replacement);
  EXPECT_THAT(region.replacement, ::testing::EndsWith("@example.com"));
  ASSERT_EQ(result.labels.size(), 1u);
  EXPECT_EQ(result.labels[0].replacement, region.replacement);
  EXPECT_EQ(result.labels[0].category, region.category);
}

TEST(EngineTest, AutomaticOnToyTableSelectsA) {
  Engine::Dependencies deps;
  deps.taxonomy = ToyScores();
  ANONPAL_ASSERT_OK_AND_ASSIGN(std::unique_ptr<Engine> engine,
                               Engine::Create(std::move(deps)));
  ASSERT_EQ(engine->frontier().vertices.size(), 3u);
  ANONPAL_ASSERT_OK_AND_ASSIGN(SelectionPlan plan,
                               engine->Plan(AutomaticMode{}));
  EXPECT_THAT(plan.categories, ElementsAre(categories::Id("A")));
  EXPECT_NEAR(plan.achieved.privacy, 2.0 / 3.0, 1e-12);
  EXPECT_NEAR(plan.achieved.utility, 5.0 / 6.0, 1e-12);

  ANONPAL_ASSERT_OK_AND_ASSIGN(SelectionPlan click,
                               engine->Plan(FullMode{0.7, 0.9}));
  EXPECT_THAT(click.categories, ElementsAre(categories::Id("A")));
  EXPECT_NEAR(click.snapped_point.x(), 0.667, 5e-4);
  EXPECT_NEAR(click.snapped_point.y(), 0.833, 5e-4);
}

TEST(EngineTest, AutomaticAllPolicySelectsEveryCategory) {
  Engine::Dependencies deps;
  deps.taxonomy = ToyScores();
  deps.options.automatic_policy = AutomaticPolicy::kAll;
  ANONPAL_ASSERT_OK_AND_ASSIGN(std::unique_ptr<Engine> engine,
                               Engine::Create(std::move(deps)));
  ANONPAL_ASSERT_OK_AND_ASSIGN(SelectionPlan plan,
                               engine->Plan(AutomaticMode{}));
  // C carries no privacy mass, so the last vertex is {A, B}.
  EXPECT_THAT(plan.categories,
              ElementsAre(categories::Id("A"), categories::Id("B")));
}

TEST(EngineTest, CreateRejectsBadDependencies) {
  Engine::Dependencies negative_radius;
  negative_radius.options.magnet_radius = -1.0;
  EXPECT_THAT(Engine::Create(std::move(negative_radius)),
              HasErrorKind(ErrorKind::kRangeError));

  Engine::Dependencies bad_llm;
  bad_llm.llm = LlmClientConfig{};
  EXPECT_THAT(Engine::Create(std::move(bad_llm)), Not(::anonpal::testing::IsOk()));
}

TEST(EngineTest, ErrorsPropagate) {
  auto engine = DefaultEngine();
  PseudonymSession session = PseudonymSession::FromSeed("s", 1);
  EXPECT_THAT(engine->Run("", AutomaticMode{}, Backend::kRules, session),
              HasErrorKind(ErrorKind::kEmptyInput));
  EXPECT_THAT(
      engine->Run("text", FullMode{1.5, 0.0}, Backend::kRules, session),
      HasErrorKind(ErrorKind::kRangeError));
  EXPECT_THAT(engine->Run("text", AutomaticMode{}, Backend::kLlm, session),
              HasErrorKind(ErrorKind::kConfigError));
  EXPECT_THAT(engine->Plan(DpMode{}), HasErrorKind(ErrorKind::kRangeError));
}

TEST(EngineTest, DpModeBypassesRecognition) {
  auto engine = DefaultEngine();
  PseudonymSession session = PseudonymSession::FromSeed("s", 1);
  const std::string text =
      "The team meeting will move to the office on Friday.";
  ANONPAL_ASSERT_OK_AND_ASSIGN(
      AnonymizeResult result,
      engine->Run(text, DpMode{0.5, 42}, Backend::kRules, session));
  EXPECT_TRUE(result.is_dp());
  EXPECT_THAT(result.spans, IsEmpty());
  EXPECT_EQ(result.labels.size(), result.doc.changes.size());
  for (const LabelEntry& label : result.labels) {
    EXPECT_EQ(label.type_name, "DP-perturbed");
  }
  // Same seed, same output; the session is untouched.
  ANONPAL_ASSERT_OK_AND_ASSIGN(
      AnonymizeResult again,
      engine->Run(text, DpMode{0.5, 42}, Backend::kRules, session));
  EXPECT_EQ(ReplaceText(again), ReplaceText(result));
  EXPECT_THAT(session.mapping(), IsEmpty());
}

TEST(EngineTest, EveryLabelMatchesItsRegion) {
  auto engine = DefaultEngine();
  const SeededCorpus corpus = GenerateCorpus(30, 5);
  for (const SeededDocument& doc : corpus.documents) {
    PseudonymSession session = PseudonymSession::FromSeed(doc.id, 9);
    ANONPAL_ASSERT_OK_AND_ASSIGN(
        AnonymizeResult result,
        engine->Run(doc.text, FullMode{1.0, 0.0}, Backend::kRules, session));
    ASSERT_EQ(result.labels.size(), result.doc.changes.size());
    for (std::size_t i = 0; i < result.labels.size(); ++i) {
      EXPECT_EQ(result.labels[i].region_index, i);
      EXPECT_EQ(result.labels[i].replacement,
                result.doc.changes[i].replacement);
      EXPECT_EQ(result.labels[i].category, result.doc.changes[i].category);
      EXPECT_EQ(result.labels[i].type_name, result.doc.changes[i].type_name);
    }
    ANONPAL_EXPECT_OK(Diff(doc.text, result.doc).status());
  }
}

TEST(EngineTest, ReplacementsFollowThePlan) {
  auto engine = DefaultEngine();
  const SeededCorpus corpus = GenerateCorpus(30, 11);
  for (double x : {0.0, 0.2, 0.4, 0.6, 0.8, 1.0}) {
    for (const SeededDocument& doc : corpus.documents) {
      PseudonymSession session = PseudonymSession::FromSeed(doc.id, 3);
      ANONPAL_ASSERT_OK_AND_ASSIGN(
          AnonymizeResult result,
          engine->Run(doc.text, PrivacyOnlyMode{x}, Backend::kRules, session));
      const CategorySet& plan = result.plan->categories;
      for (const ChangeRegion& change : result.doc.changes) {
        EXPECT_TRUE(plan.count(change.category)) << change.category.value;
      }
      const std::set<CategoryId> replaced = ReplacedCategories(result);
      for (const EntitySpan& span : result.spans) {
        if (plan.count(span.category)) {
          EXPECT_TRUE(replaced.count(span.category)) << span.category.value;
        }
      }
    }
  }
}

TEST(EngineTest, FullAtVertexMatchesPrivacyOnly) {
  auto engine = DefaultEngine();
  for (const FrontierVertex& vertex : engine->frontier().vertices) {
    ANONPAL_ASSERT_OK_AND_ASSIGN(
        SelectionPlan full,
        engine->Plan(FullMode{vertex.privacy, vertex.utility}));
    ANONPAL_ASSERT_OK_AND_ASSIGN(SelectionPlan privacy_only,
                                 engine->Plan(PrivacyOnlyMode{vertex.privacy}));
    EXPECT_EQ(full.categories, privacy_only.categories);
    EXPECT_EQ(full.categories, vertex.selected);
  }
}

TEST(EngineTest, PrivacyOnlyIsMonotoneEndToEnd) {
  auto engine = DefaultEngine();
  const SeededCorpus corpus = GenerateCorpus(40, 17);
  for (const SeededDocument& doc : corpus.documents) {
    std::set<CategoryId> previous;
    for (int step = 0; step <= 20; ++step) {
      PseudonymSession session = PseudonymSession::FromSeed(doc.id, 1);
      ANONPAL_ASSERT_OK_AND_ASSIGN(
          AnonymizeResult result,
          engine->Run(doc.text, PrivacyOnlyMode{step / 20.0}, Backend::kRules,
                      session));
      const std::set<CategoryId> replaced = ReplacedCategories(result);
      EXPECT_TRUE(std::includes(replaced.begin(), replaced.end(),
                                previous.begin(), previous.end()))
          << doc.id << " at x=" << step / 20.0;
      previous = replaced;
    }
  }
}

TEST(EngineTest, RulesRunIsDeterministicForAFixedSeed) {
  auto engine = DefaultEngine();
  const SeededCorpus corpus = GenerateCorpus(10, 23);
  for (const SeededDocument& doc : corpus.documents) {
    PseudonymSession first = PseudonymSession::FromSeed("a", 77);
    PseudonymSession second = PseudonymSession::FromSeed("b", 77);
    ANONPAL_ASSERT_OK_AND_ASSIGN(
        AnonymizeResult a,
        engine->Run(doc.text, AutomaticMode{}, Backend::kRules, first));
    ANONPAL_ASSERT_OK_AND_ASSIGN(
        AnonymizeResult b,
        engine->Run(doc.text, AutomaticMode{}, Backend::kRules, second));
    EXPECT_EQ(ReplaceText(a), ReplaceText(b));
  }
}

TEST(EngineTest, FreshSessionsChangeTheSameRegions) {
  auto engine = DefaultEngine();
  const SeededCorpus corpus = GenerateCorpus(10, 29);
  for (const SeededDocument& doc : corpus.documents) {
    PseudonymSession first = PseudonymSession::Fresh("a");
    PseudonymSession second = PseudonymSession::Fresh("b");
    ANONPAL_ASSERT_OK_AND_ASSIGN(
        AnonymizeResult a,
        engine->Run(doc.text, FullMode{1.0, 0.0}, Backend::kRules, first));
    ANONPAL_ASSERT_OK_AND_ASSIGN(
        AnonymizeResult b,
        engine->Run(doc.text, FullMode{1.0, 0.0}, Backend::kRules, second));
    ASSERT_EQ(a.doc.changes.size(), b.doc.changes.size());
    for (std::size_t i = 0; i < a.doc.changes.size(); ++i) {
      EXPECT_EQ(a.doc.changes[i].original_start,
                b.doc.changes[i].original_start);
      EXPECT_EQ(a.doc.changes[i].original_end, b.doc.changes[i].original_end);
      EXPECT_EQ(a.doc.changes[i].category, b.doc.changes[i].category);
    }
  }
}

TEST(EngineTest, RecognitionIsCachedAndThreadSafe) {
  auto engine = DefaultEngine();
  ANONPAL_ASSERT_OK_AND_ASSIGN(Recognition first,
                               engine->Recognize(kEmailDoc, Backend::kRules));
  std::vector<std::thread> threads;
  std::vector<std::vector<EntitySpan>> seen(8);
  for (int t = 0; t < 8; ++t) {
    threads.emplace_back([&, t] {
      for (int i = 0; i < 50; ++i) {
        auto r = engine->Recognize(
            i % 2 == 0 ? std::string(kEmailDoc) : absl::StrCat("call 555-0100 #", i),
            Backend::kRules);
        if (r.ok() && i % 2 == 0) seen[t] = r->spans;
      }
    });
  }
  for (std::thread& thread : threads) thread.join();
  for (const auto& spans : seen) EXPECT_EQ(spans, first.spans);
  EXPECT_THAT(engine->Recognize("", Backend::kRules),
              HasErrorKind(ErrorKind::kEmptyInput));
}

TEST(EngineTest, CacheDisabledGivesSameSpans) {
  Engine::Dependencies deps;
  deps.options.span_cache_capacity = 0;
  ANONPAL_ASSERT_OK_AND_ASSIGN(std::unique_ptr<Engine> uncached,
                               Engine::Create(std::move(deps)));
  auto cached = DefaultEngine();
  ANONPAL_ASSERT_OK_AND_ASSIGN(Recognition a,
                               uncached->Recognize(kEmailDoc, Backend::kRules));
  ANONPAL_ASSERT_OK_AND_ASSIGN(Recognition b,
                               cached->Recognize(kEmailDoc, Backend::kRules));
  EXPECT_EQ(a.spans, b.spans);
}

class UserEditTest : public ::testing::Test {
 protected:
  void SetUp() override {
    engine_ = DefaultEngine();
    PseudonymSession session = PseudonymSession::FromSeed("s", 5);
    auto result = engine_->Run(text_, FullMode{1.0, 0.0}, Backend::kRules,
                               session);
    ASSERT_TRUE(result.ok()) << result.status();
    result_ = *std::move(result);
    ASSERT_EQ(result_.doc.changes.size(), 3u);
  }

  const std::string text_ =
      "Maria Garcia asked me to forward the draft to "
      "maria.garcia@contoso.example or call (415) 555-0142 before noon.";
  std::unique_ptr<Engine> engine_;
  AnonymizeResult result_;
};

TEST_F(UserEditTest, EditShiftsLaterRegions) {
  const ChangeRegion before0 = result_.doc.changes[0];
  const ChangeRegion before1 = result_.doc.changes[1];
  ANONPAL_ASSERT_OK_AND_ASSIGN(AnonymizeResult edited,
                               ApplyUserEdit(result_, 0, "Alex"));
  const ChangeRegion& region0 = edited.doc.changes[0];
  EXPECT_EQ(region0.replacement, "Alex");
  EXPECT_EQ(region0.source, SpanSource::kUserEdit);
  EXPECT_EQ(ReplaceText(edited).substr(region0.start, 4), "Alex");
  const std::ptrdiff_t delta =
      4 - static_cast<std::ptrdiff_t>(before0.end - before0.start);
  EXPECT_EQ(static_cast<std::ptrdiff_t>(edited.doc.changes[1].start),
            static_cast<std::ptrdiff_t>(before1.start) + delta);
  EXPECT_EQ(edited.doc.changes[1].replacement, before1.replacement);
  EXPECT_EQ(edited.labels[0].replacement, "Alex");
  EXPECT_THAT(edited.doc.warnings,
              Not(Contains("edit restores sensitive text")));
  ANONPAL_EXPECT_OK(Diff(text_, edited.doc).status());
}

TEST_F(UserEditTest, RestoringTheOriginalWarnsButApplies) {
  const ChangeRegion& region = result_.doc.changes[0];
  const std::string original = text_.substr(
      region.original_start, region.original_end - region.original_start);
  ANONPAL_ASSERT_OK_AND_ASSIGN(AnonymizeResult edited,
                               ApplyUserEdit(result_, 0, original));
  EXPECT_THAT(edited.doc.warnings, Contains("edit restores sensitive text"));
  EXPECT_TRUE(absl::StartsWith(ReplaceText(edited), original));
}

TEST_F(UserEditTest, OutOfRangeIndexIsBadIndex) {
  EXPECT_THAT(ApplyUserEdit(result_, result_.doc.changes.size(), "x"),
              HasErrorKind(ErrorKind::kBadIndex));
}

}  // namespace
}  // namespace anonpal
