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

#include "anonpal/pseudonymizer.h"

#include <chrono>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <regex>
#include <set>
#include <string>
#include <vector>

#include <unistd.h>

#include "absl/strings/match.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "anonpal/rules.h"
#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "json.hpp"
#include "oracles/sha256_oracle.h"
#include "oracles/status_matchers.h"
#include "oracles/text_oracles.h"

namespace anonpal {
namespace {

using ::anonpal::testing::HasErrorKind;
using ::testing::Contains;
using ::testing::IsEmpty;
using ::testing::SizeIs;

const CategoryId kBasic = categories::Id(categories::kBasic);
const CategoryId kIdentity = categories::Id(categories::kIdentity);
const CategoryId kProperty = categories::Id(categories::kProperty);
const CategoryId kOnline = categories::Id(categories::kOnlineIdentity);
const CategoryId kWork = categories::Id(categories::kEducationWork);

std::vector<std::uint8_t> SaltBytes(const PseudonymSession& session) {
  return std::vector<std::uint8_t>(session.salt().begin(), session.salt().end());
}

// True when `b` has the same length as `a`, digits where `a` has digits and
// identical bytes everywhere else.
bool SameDigitShape(const std::string& a, const std::string& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const bool da = std::isdigit(static_cast<unsigned char>(a[i]));
    const bool db = std::isdigit(static_cast<unsigned char>(b[i]));
    if (da != db || (!da && a[i] != b[i])) return false;
  }
  return true;
}

SelectionPlan PlanOf(std::set<CategoryId> categories) {
  SelectionPlan plan;
  plan.categories = std::move(categories);
  plan.achieved = Coordinates{0.5, 0.5};
  return plan;
}

EntitySpan SpanAt(absl::string_view text, absl::string_view surface,
                  std::string type, CategoryId category, std::size_t from = 0) {
  EntitySpan span;
  span.start = text.find(surface, from);
  span.end = span.start + surface.size();
  span.surface = std::string(surface);
  span.type_name = std::move(type);
  span.category = std::move(category);
  return span;
}

TEST(GenerateReplacementTest, PhoneKeepsFormat) {
  PseudonymSession session = PseudonymSession::FromSeed("s", 1);
  ANONPAL_ASSERT_OK_AND_ASSIGN(
      std::string out,
      GenerateReplacement("(123) 456-7890", kBasic, "Phone Number", session));
  EXPECT_TRUE(std::regex_match(out, std::regex(R"(\(\d{3}\) \d{3}-\d{4})")))
      << out;
  EXPECT_NE(out, "(123) 456-7890");
}

TEST(GenerateReplacementTest, DeterministicPerSaltAndSurface) {
  PseudonymSession a = PseudonymSession::FromSeed("a", 42);
  PseudonymSession b = PseudonymSession::FromSeed("b", 42);
  for (const char* surface : {"John Doe", "Jane Doe", "Wei Zhang"}) {
    EXPECT_EQ(*GenerateReplacement(surface, kBasic, "Name", a),
              *GenerateReplacement(surface, kBasic, "Name", b));
  }
  // Asking again returns the recorded mapping.
  EXPECT_EQ(*GenerateReplacement("John Doe", kBasic, "Name", a),
            *a.Lookup(kBasic, "John Doe"));
  EXPECT_EQ(a.mapping().size(), 3u);
}

TEST(GenerateReplacementTest, NameIndexIsKeyedHashModListSize) {
  const std::vector<std::string>& names = BuiltinPseudonymNames();
  ASSERT_EQ(names.size(), 200u);
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    PseudonymSession session = PseudonymSession::FromSeed("s", seed);
    const std::string surface = absl::StrCat("Person ", seed);
    ANONPAL_ASSERT_OK_AND_ASSIGN(
        std::string out, GenerateReplacement(surface, kBasic, "Name", session));
    const std::string message = absl::StrCat("basic\x1f", surface);
    ASSERT_EQ(PseudonymHashMessage(kBasic, surface, 0), message);
    const std::uint64_t index =
        oracle::First8(oracle::HmacSha256(SaltBytes(session), message)) %
        names.size();
    EXPECT_EQ(out, names[index]);
  }
}

TEST(GenerateReplacementTest, CustomListAndRetryMessage) {
  PseudonymOptions options;
  options.lists["Name"] = {"Alex", "Blair", "Casey"};
  PseudonymSession session = PseudonymSession::FromSeed("s", 3);
  std::set<std::string> seen;
  for (const char* surface : {"Ann", "Ben", "Cid"}) {
    ANONPAL_ASSERT_OK_AND_ASSIGN(
        std::string out,
        GenerateReplacement(surface, kBasic, "Name", session, options));
    EXPECT_THAT(options.lists["Name"], Contains(out));
    seen.insert(out);
  }
  // Injective: three surfaces, three distinct names.
  EXPECT_EQ(seen.size(), 3u);
  // A fourth surface cannot be placed.
  EXPECT_THAT(GenerateReplacement("Dee", kBasic, "Name", session, options),
              HasErrorKind(ErrorKind::kExhaustedRetries));
  EXPECT_EQ(PseudonymHashMessage(kBasic, "Ann", 2), "basic\x1f" "Ann\x1f" "2");
}

TEST(GenerateReplacementTest, NeverReturnsTheSurface) {
  PseudonymOptions options;
  options.lists["Name"] = {"Alex", "Blair"};
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    PseudonymSession session = PseudonymSession::FromSeed("s", seed);
    ANONPAL_ASSERT_OK_AND_ASSIGN(
        std::string out,
        GenerateReplacement("Alex", kBasic, "Name", session, options));
    EXPECT_EQ(out, "Blair");
  }
}

TEST(GenerateReplacementTest, EmailUsesKeyedLocalPart) {
  PseudonymSession session = PseudonymSession::FromSeed("s", 5);
  ANONPAL_ASSERT_OK_AND_ASSIGN(
      std::string out, GenerateReplacement("john.doe@example.com", kBasic,
                                           "Email Address", session));
  const auto tag = oracle::HmacSha256(
      SaltBytes(session), PseudonymHashMessage(kBasic, "john.doe@example.com", 0));
  EXPECT_EQ(out, absl::StrCat("user", oracle::Hex(tag).substr(0, 8),
                              "@example.com"));

  PseudonymOptions options;
  options.email_domain = "mail.test";
  PseudonymSession other = PseudonymSession::FromSeed("s", 5);
  EXPECT_TRUE(absl::EndsWith(
      *GenerateReplacement("a@b.org", kBasic, "Email Address", other, options),
      "@mail.test"));
}

TEST(GenerateReplacementTest, DigitTypesPreserveShape) {
  PseudonymSession session = PseudonymSession::FromSeed("s", 9);
  const std::vector<std::pair<std::string, std::string>> cases = {
      {"11010519491231002X", "ID Card"},
      {"4111 1111 1111 1111", "Bank Card Number"},
      {"192.168.1.1", "IP Address"},
      {"+1 555-867-5309", "Phone Number"},
      {"A12345678", "Passport"},
  };
  for (const auto& [surface, type] : cases) {
    const CategoryId category = BuiltinScoreTable().CategoryOf(type);
    ANONPAL_ASSERT_OK_AND_ASSIGN(
        std::string out, GenerateReplacement(surface, category, type, session));
    EXPECT_TRUE(SameDigitShape(surface, out)) << surface << " -> " << out;
    EXPECT_NE(out, surface);
  }
}

TEST(GenerateReplacementTest, LuhnValidCardsWhenRequested) {
  PseudonymOptions options;
  options.luhn_valid_cards = true;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    PseudonymSession session = PseudonymSession::FromSeed("s", seed);
    ANONPAL_ASSERT_OK_AND_ASSIGN(
        std::string out,
        GenerateReplacement("4539 1488 0343 6467", kProperty, "Bank Card Number",
                            session, options));
    EXPECT_TRUE(oracle::Luhn(out)) << out;
    EXPECT_TRUE(SameDigitShape("4539 1488 0343 6467", out));
  }
}

TEST(GenerateReplacementTest, DatesShiftBySessionOffset) {
  using namespace std::chrono;
  PseudonymSession session = PseudonymSession::FromSeed("s", 12);
  const int offset = session.DateOffsetDays();
  ASSERT_GE(offset, 30);
  ASSERT_LE(offset, 365);
  const sys_days birth = sys_days{year{1980} / January / 1} - days{offset};
  const year_month_day expected{birth};
  static const char* kMonths[] = {"January", "February", "March",     "April",
                                  "May",     "June",     "July",      "August",
                                  "September", "October", "November", "December"};
  ANONPAL_ASSERT_OK_AND_ASSIGN(
      std::string out,
      GenerateReplacement("January 1, 1980", kBasic, "Date of Birth", session));
  EXPECT_EQ(out, absl::StrCat(kMonths[unsigned{expected.month()} - 1], " ",
                              unsigned{expected.day()}, ", ",
                              int{expected.year()}));

  ANONPAL_ASSERT_OK_AND_ASSIGN(
      std::string iso,
      GenerateReplacement("1980-01-01", kBasic, "Date of Birth", session));
  EXPECT_TRUE(std::regex_match(iso, std::regex(R"(\d{4}-\d{2}-\d{2})"))) << iso;
  EXPECT_EQ(iso, absl::StrFormat("%04d-%02u-%02u", int{expected.year()},
                                 unsigned{expected.month()},
                                 unsigned{expected.day()}));
}

TEST(GenerateReplacementTest, DateOffsetIsSessionConstantAndInRange) {
  std::set<int> offsets;
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    PseudonymSession session = PseudonymSession::FromSeed("s", seed);
    const int offset = session.DateOffsetDays();
    ASSERT_GE(offset, 30);
    ASSERT_LE(offset, 365);
    ASSERT_EQ(offset, session.DateOffsetDays());
    offsets.insert(offset);
  }
  EXPECT_GT(offsets.size(), 100u);
}

TEST(GenerateReplacementTest, PlaceholdersAreNumberedPerSurface) {
  PseudonymSession session = PseudonymSession::FromSeed("s", 1);
  EXPECT_EQ(*GenerateReplacement("$120,000", kWork, "Salary", session), "[Salary]");
  EXPECT_EQ(*GenerateReplacement("$90,000", kWork, "Salary", session),
            "[Salary 2]");
  EXPECT_EQ(*GenerateReplacement("$120,000", kWork, "Salary", session), "[Salary]");
  // Unparseable dates fall back to a placeholder.
  EXPECT_EQ(*GenerateReplacement("last spring", kBasic, "Date of Birth", session),
            "[Date of Birth]");
  EXPECT_THAT(GenerateReplacement("", kBasic, "Name", session),
              HasErrorKind(ErrorKind::kEmptyInput));
}

TEST(PseudonymizeTest, EmptyPlanIsIdentity) {
  const std::string text = "John Doe at john@example.com";
  PseudonymSession session = PseudonymSession::FromSeed("s", 1);
  std::vector<EntitySpan> spans = RecognizeRules(text, BuiltinRulePack());
  ASSERT_THAT(spans, SizeIs(2));
  ANONPAL_ASSERT_OK_AND_ASSIGN(AnonymizedDoc doc,
                               Pseudonymize(text, spans, PlanOf({}), session));
  EXPECT_EQ(doc.output_text, text);
  EXPECT_THAT(doc.changes, IsEmpty());
  EXPECT_EQ(doc.achieved.privacy, 0.5);
}

TEST(PseudonymizeTest, OnlySelectedCategoriesChange) {
  const std::string text = "Mail john@example.com from 10.0.0.1 now";
  std::vector<EntitySpan> spans = {
      SpanAt(text, "john@example.com", "Email Address", kBasic),
      SpanAt(text, "10.0.0.1", "IP Address", kOnline)};
  PseudonymSession session = PseudonymSession::FromSeed("s", 1);
  ANONPAL_ASSERT_OK_AND_ASSIGN(
      AnonymizedDoc doc, Pseudonymize(text, spans, PlanOf({kOnline}), session));
  ASSERT_THAT(doc.changes, SizeIs(1));
  EXPECT_EQ(doc.changes[0].category, kOnline);
  EXPECT_TRUE(absl::StartsWith(doc.output_text, "Mail john@example.com from "));
  EXPECT_TRUE(absl::EndsWith(doc.output_text, " now"));
  EXPECT_EQ(doc.output_text.substr(doc.changes[0].start,
                                   doc.changes[0].end - doc.changes[0].start),
            doc.changes[0].replacement);
  ANONPAL_ASSERT_OK_AND_ASSIGN(std::vector<DiffEntry> diff, Diff(text, doc));
  ASSERT_THAT(diff, SizeIs(1));
  EXPECT_EQ(diff[0].original_slice, "10.0.0.1");
  EXPECT_EQ(diff[0].replacement, doc.changes[0].replacement);
}

TEST(PseudonymizeTest, MismatchedSpanIsRejected) {
  const std::string text = "John Doe";
  EntitySpan span = SpanAt(text, "John Doe", "Name", kBasic);
  span.surface = "Jane Doe";
  PseudonymSession session = PseudonymSession::FromSeed("s", 1);
  EXPECT_THAT(Pseudonymize(text, {span}, PlanOf({kBasic}), session),
              HasErrorKind(ErrorKind::kSpanMismatch));
}

TEST(DiffTest, UnchangedAndTampered) {
  const std::string text = "Call (123) 456-7890 or mail a@b.io today";
  std::vector<EntitySpan> spans = RecognizeRules(text, BuiltinRulePack());
  PseudonymSession session = PseudonymSession::FromSeed("s", 2);
  ANONPAL_ASSERT_OK_AND_ASSIGN(AnonymizedDoc none,
                               Pseudonymize(text, spans, PlanOf({}), session));
  EXPECT_THAT(*Diff(text, none), IsEmpty());

  ANONPAL_ASSERT_OK_AND_ASSIGN(
      AnonymizedDoc doc, Pseudonymize(text, spans, PlanOf({kBasic}), session));
  ASSERT_THAT(doc.changes, SizeIs(2));
  ANONPAL_ASSERT_OK(Diff(text, doc));

  AnonymizedDoc shifted = doc;
  shifted.changes[1].start += 1;
  shifted.changes[1].end += 1;
  EXPECT_THAT(Diff(text, shifted), HasErrorKind(ErrorKind::kInconsistent));

  AnonymizedDoc edited = doc;
  edited.output_text[0] = 'K';
  EXPECT_THAT(Diff(text, edited), HasErrorKind(ErrorKind::kInconsistent));
  EXPECT_THAT(Diff("other", doc), HasErrorKind(ErrorKind::kInconsistent));
}

TEST(EditRegionTest, SplicesAndShifts) {
  const std::string text = "John Doe and Jane Doe met";
  std::vector<EntitySpan> spans = RecognizeRules(text, BuiltinRulePack());
  ASSERT_THAT(spans, SizeIs(2));
  PseudonymSession session = PseudonymSession::FromSeed("s", 4);
  ANONPAL_ASSERT_OK_AND_ASSIGN(
      AnonymizedDoc doc, Pseudonymize(text, spans, PlanOf({kBasic}), session));
  const std::size_t old_length = doc.changes[0].end - doc.changes[0].start;
  const std::size_t second_start = doc.changes[1].start;
  ANONPAL_ASSERT_OK(EditRegion(doc, 0, "Alex"));
  EXPECT_TRUE(absl::StartsWith(doc.output_text, "Alex and "));
  EXPECT_EQ(doc.changes[0].source, SpanSource::kUserEdit);
  EXPECT_EQ(doc.changes[1].start, second_start + 4 - old_length);
  ANONPAL_ASSERT_OK(Diff(text, doc));
  EXPECT_THAT(EditRegion(doc, 2, "x"), HasErrorKind(ErrorKind::kBadIndex));
}

TEST(RestoreTest, RequiresOneOriginalPerRegion) {
  AnonymizedDoc doc;
  doc.output_text = "abc";
  doc.changes.push_back(ChangeRegion{0, 1, 0, 1, "a", kBasic, "Name"});
  EXPECT_THAT(Restore(doc, {}), HasErrorKind(ErrorKind::kInconsistent));
  EXPECT_EQ(*Restore(doc, {"Z"}), "Zbc");
}

TEST(SessionTest, InsertRejectsCollisionsAndIdentity) {
  PseudonymSession session = PseudonymSession::FromSeed("s", 1);
  ANONPAL_ASSERT_OK(session.Insert(kBasic, "Ann", "Alex"));
  EXPECT_THAT(session.Insert(kBasic, "Ben", "Alex"),
              HasErrorKind(ErrorKind::kInconsistent));
  EXPECT_THAT(session.Insert(kBasic, "Cid", "Cid"),
              HasErrorKind(ErrorKind::kInconsistent));
  // Injectivity is per category.
  ANONPAL_ASSERT_OK(session.Insert(kIdentity, "Ben", "Alex"));
  EXPECT_TRUE(session.IsTaken(kBasic, "Alex"));
  EXPECT_FALSE(session.IsTaken(kWork, "Alex"));
}

TEST(SessionTest, FreshSessionsDifferAndSeededOnesAgree) {
  EXPECT_NE(PseudonymSession::Fresh("a").salt(), PseudonymSession::Fresh("a").salt());
  EXPECT_EQ(PseudonymSession::FromSeed("a", 7).salt(),
            PseudonymSession::FromSeed("b", 7).salt());
  EXPECT_NE(PseudonymSession::FromSeed("a", 7).salt(),
            PseudonymSession::FromSeed("a", 8).salt());
  // The seeded salt is the first 16 bytes of SHA-256 of a tagged seed.
  const auto digest = oracle::Sha256("anonpal-session-seed:7");
  const PseudonymSession seeded = PseudonymSession::FromSeed("a", 7);
  EXPECT_TRUE(
      std::equal(seeded.salt().begin(), seeded.salt().end(), digest.begin()));
}

TEST(SessionJsonTest, RoundTrip) {
  PseudonymSession session = PseudonymSession::FromSeed("sess-1", 11);
  ANONPAL_ASSERT_OK(GenerateReplacement("John Doe", kBasic, "Name", session));
  ANONPAL_ASSERT_OK(
      GenerateReplacement("110105194912310021", kIdentity, "ID Card", session));
  ANONPAL_ASSERT_OK_AND_ASSIGN(PseudonymSession loaded,
                               SessionFromJson(SessionToJson(session)));
  EXPECT_EQ(loaded.session_id(), "sess-1");
  EXPECT_EQ(loaded.salt(), session.salt());
  EXPECT_EQ(loaded.mapping(), session.mapping());
  EXPECT_EQ(std::chrono::duration_cast<std::chrono::milliseconds>(
                loaded.created_at().time_since_epoch()),
            std::chrono::duration_cast<std::chrono::milliseconds>(
                session.created_at().time_since_epoch()));
}

TEST(SessionJsonTest, CorruptInputs) {
  const std::string good = SessionToJson(PseudonymSession::FromSeed("x", 1));
  EXPECT_THAT(SessionFromJson("{"), HasErrorKind(ErrorKind::kCorruptSession));
  EXPECT_THAT(SessionFromJson("[]"), HasErrorKind(ErrorKind::kCorruptSession));
  nlohmann::json bad_salt = nlohmann::json::parse(good);
  bad_salt["salt"] = "zz";
  EXPECT_THAT(SessionFromJson(bad_salt.dump()),
              HasErrorKind(ErrorKind::kCorruptSession));
  nlohmann::json duplicate = nlohmann::json::parse(good);
  duplicate["mapping"] = {
      {{"category", "basic"}, {"surface", "A"}, {"replacement", "X"}},
      {{"category", "basic"}, {"surface", "B"}, {"replacement", "X"}}};
  EXPECT_THAT(SessionFromJson(duplicate.dump()),
              HasErrorKind(ErrorKind::kCorruptSession));
}

TEST(LoadPseudonymListTest, TrimsAndSkipsBlankLines) {
  const std::filesystem::path path =
      std::filesystem::temp_directory_path() /
      absl::StrCat("anonpal_names_", ::getpid(), ".txt");
  std::ofstream(path) << "  Alex \n\nBlair\r\n";
  ANONPAL_ASSERT_OK_AND_ASSIGN(std::vector<std::string> names,
                               LoadPseudonymList(path));
  EXPECT_EQ(names, (std::vector<std::string>{"Alex", "Blair"}));
  std::filesystem::remove(path);
  EXPECT_FALSE(LoadPseudonymList(path).ok());
}

// Randomized documents built from typed surfaces, checked for determinism,
// per-session consistency, injectivity, format preservation, selectivity and
// reconstruction.
struct TypedSurface {
  std::string surface;
  std::string type;
};

std::vector<TypedSurface> SurfacePool() {
  std::vector<TypedSurface> pool;
  for (const std::string& name : BuiltinNameGazetteer()) {
    pool.push_back({name, "Name"});
  }
  for (int i = 0; i < 20; ++i) {
    pool.push_back({absl::StrCat("user", i, "@corp.example"), "Email Address"});
    pool.push_back({absl::StrFormat("(%03d) 555-%04d", 200 + i, 1000 + 37 * i),
                    "Phone Number"});
    pool.push_back({absl::StrFormat("1101051990%02d12%04d", i % 12 + 1, i),
                    "ID Card"});
    pool.push_back({absl::StrFormat("10.0.%d.%d", i, 2 * i + 1), "IP Address"});
    pool.push_back({absl::StrFormat("March %d, 19%02d", i % 28 + 1, 60 + i),
                    "Date of Birth"});
    pool.push_back({absl::StrCat("$", 40 + i, ",000"), "Salary"});
  }
  pool.push_back({"4111 1111 1111 1111", "Bank Card Number"});
  pool.push_back({"4539 1488 0343 6467", "Bank Card Number"});
  return pool;
}

TEST(PseudonymizePropertyTest, RandomizedDocuments) {
  const std::vector<TypedSurface> pool = SurfacePool();
  const std::vector<std::string> fillers = {" and ", ", then ", " (see) ",
                                            "; ", " met ", "\n", " - "};
  const std::regex email_shape(R"(user[0-9a-f]{8}@example\.com)");
  const std::regex date_shape(R"([A-Z][a-z]+ \d{1,2}, \d{4})");
  std::mt19937_64 rng(1000);
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  std::uniform_int_distribution<std::size_t> pick_filler(0, fillers.size() - 1);
  std::uniform_int_distribution<int> count(1, 12);
  std::bernoulli_distribution coin(0.5);
  const std::set<std::string> names(BuiltinPseudonymNames().begin(),
                                    BuiltinPseudonymNames().end());

  for (int doc_index = 0; doc_index < 1000; ++doc_index) {
    std::string text = "Start";
    std::vector<EntitySpan> spans;
    for (int i = count(rng); i > 0; --i) {
      text += fillers[pick_filler(rng)];
      const TypedSurface& item = pool[pick(rng)];
      EntitySpan span;
      span.start = text.size();
      text += item.surface;
      span.end = text.size();
      span.surface = item.surface;
      span.type_name = item.type;
      span.category = BuiltinScoreTable().CategoryOf(item.type);
      spans.push_back(std::move(span));
    }
    text += ". End";
    std::set<CategoryId> chosen;
    for (const EntitySpan& span : spans) {
      if (coin(rng)) chosen.insert(span.category);
    }
    const SelectionPlan plan = PlanOf(chosen);

    PseudonymSession session = PseudonymSession::FromSeed("doc", doc_index);
    PseudonymSession twin = PseudonymSession::FromSeed("twin", doc_index);
    ANONPAL_ASSERT_OK_AND_ASSIGN(AnonymizedDoc doc,
                                 Pseudonymize(text, spans, plan, session));
    ANONPAL_ASSERT_OK_AND_ASSIGN(AnonymizedDoc again,
                                 Pseudonymize(text, spans, plan, twin));
    // Determinism.
    ASSERT_EQ(doc.output_text, again.output_text);
    ASSERT_EQ(doc.changes, again.changes);

    // Selectivity and reconstruction.
    std::vector<std::string> originals;
    std::size_t region = 0;
    std::map<std::pair<CategoryId, std::string>, std::string> seen;
    std::map<std::pair<CategoryId, std::string>, std::string> reverse;
    for (const EntitySpan& span : spans) {
      if (!chosen.contains(span.category)) continue;
      ASSERT_LT(region, doc.changes.size());
      const ChangeRegion& change = doc.changes[region++];
      ASSERT_EQ(change.original_start, span.start);
      ASSERT_EQ(change.original_end, span.end);
      originals.push_back(span.surface);
      const std::string& out = change.replacement;
      ASSERT_NE(out, span.surface);
      // Consistency: a repeated surface maps to the same replacement.
      auto [it, inserted] = seen.emplace(std::pair{span.category, span.surface}, out);
      ASSERT_EQ(it->second, out);
      // Injectivity within a category.
      auto [rit, rinserted] = reverse.emplace(std::pair{span.category, out},
                                              span.surface);
      ASSERT_EQ(rit->second, span.surface);
      // Format preservation.
      if (span.type_name == "Name") {
        ASSERT_TRUE(names.contains(out)) << out;
      } else if (span.type_name == "Email Address") {
        ASSERT_TRUE(std::regex_match(out, email_shape)) << out;
      } else if (span.type_name == "Date of Birth") {
        ASSERT_TRUE(std::regex_match(out, date_shape)) << out;
      } else if (span.type_name == "Salary") {
        ASSERT_TRUE(absl::StartsWith(out, "[Salary")) << out;
      } else {
        ASSERT_TRUE(SameDigitShape(span.surface, out))
            << span.surface << " -> " << out;
      }
    }
    ASSERT_EQ(region, doc.changes.size());
    ANONPAL_ASSERT_OK_AND_ASSIGN(std::vector<DiffEntry> diff, Diff(text, doc));
    ASSERT_EQ(diff.size(), doc.changes.size());
    ANONPAL_ASSERT_OK_AND_ASSIGN(std::string restored, Restore(doc, originals));
    ASSERT_EQ(restored, text);
  }
}

}  // namespace
}  // namespace anonpal
