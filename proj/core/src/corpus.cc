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

#include "anonpal/corpus.h"

#include <algorithm>
#include <array>
#include <fstream>
#include <random>
#include <sstream>

#include "absl/strings/ascii.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "anonpal/errors.h"
#include "anonpal/rules.h"
#include "anonpal/taxonomy.h"
#include "json.hpp"

namespace anonpal {
namespace {

using nlohmann::json;

struct Template {
  absl::string_view scenario;
  absl::string_view text;
};

constexpr std::array<Template, 12> kTemplates = {{
    {"work",
     "Please help me write a polite email to my manager {name} about the "
     "project deadline. You can reach me at {email} or call {phone}."},
    {"work",
     "Draft a short report for the client meeting this week. The team "
     "contact is {name}, email {email}."},
    {"work",
     "Can you review this message before I send it to {name}? My office "
     "number is {phone} and the server we use is {ip}."},
    {"work",
     "I need a formal letter to the bank about my account. My card number "
     "is {card} and my ID is {id}."},
    {"academic",
     "Please help me draft an email to professor {name} about my thesis. "
     "My school email is {email}."},
    {"academic",
     "Write a quick note to my study group: the research paper is due next "
     "week, contact {name} at {phone}."},
    {"academic",
     "Can you check my exam grade appeal letter? My student account is "
     "{email} and the course portal logged {ip}."},
    {"academic",
     "I want a clear summary of this paper for {name}; send questions to "
     "{email}."},
    {"life",
     "Help me write a reply to my landlord {name} about the rent. My phone "
     "is {phone}."},
    {"life",
     "Please draft a message to the hotel about my trip. I booked with card "
     "{card} under the name {name}."},
    {"life",
     "Write a polite note to the doctor about my appointment tomorrow. My "
     "ID number is {id} and my email is {email}."},
    {"life",
     "I need a birthday gift idea for my friend {name}; my family wants to "
     "send it to {email}."},
}};

constexpr std::array<absl::string_view, 4> kMailDomains = {
    "mailbox.org", "example.net", "campus.edu", "post.example.com"};

class Generator {
 public:
  explicit Generator(std::uint64_t seed) : rng_(seed) {}

  std::size_t Below(std::size_t n) { return rng_() % n; }
  char Digit(char lo = '0') {
    return static_cast<char>(lo + Below(static_cast<std::size_t>('9' - lo + 1)));
  }

  std::string Name() {
    const auto& names = BuiltinNameGazetteer();
    return names[Below(names.size())];
  }

  std::string Email() {
    std::string local = absl::AsciiStrToLower(Name());
    for (char& c : local) {
      if (c == ' ') c = '.';
    }
    local.erase(std::remove(local.begin(), local.end(), '\''), local.end());
    return absl::StrCat(local, Below(100), "@",
                        kMailDomains[Below(kMailDomains.size())]);
  }

  std::string Phone() {
    std::string area{Digit('2'), Digit(), Digit()};
    std::string exchange{Digit('2'), Digit(), Digit()};
    std::string line{Digit(), Digit(), Digit(), Digit()};
    switch (Below(3)) {
      case 0:
        return absl::StrCat("(", area, ") ", exchange, "-", line);
      case 1:
        return absl::StrCat(area, "-", exchange, "-", line);
      default:
        return absl::StrCat(area, ".", exchange, ".", line);
    }
  }

  std::string Card() {
    std::string digits{Digit('4')};
    while (digits.size() < 15) digits.push_back(Digit());
    for (char check = '0'; check <= '9'; ++check) {
      if (LuhnValid(digits + check)) {
        digits.push_back(check);
        break;
      }
    }
    const char sep = Below(2) == 0 ? ' ' : '-';
    return absl::StrCat(digits.substr(0, 4), std::string(1, sep),
                        digits.substr(4, 4), std::string(1, sep),
                        digits.substr(8, 4), std::string(1, sep),
                        digits.substr(12, 4));
  }

  std::string IdNumber() {
    std::string id{Digit('1')};
    while (id.size() < 17) id.push_back(Digit());
    id.push_back(Below(11) == 10 ? 'X' : Digit());
    return id;
  }

  std::string Ip() {
    return absl::StrFormat("%d.%d.%d.%d", 1 + Below(223), Below(256),
                           Below(256), 1 + Below(254));
  }

 private:
  std::mt19937_64 rng_;
};

struct Slot {
  absl::string_view marker;
  absl::string_view type_name;
};

constexpr std::array<Slot, 6> kSlots = {{
    {"{name}", "Name"},
    {"{email}", "Email Address"},
    {"{phone}", "Phone Number"},
    {"{card}", "Bank Card Number"},
    {"{id}", "ID Card"},
    {"{ip}", "IP Address"},
}};

SeededDocument Instantiate(const Template& tmpl, std::size_t index,
                           Generator& gen) {
  SeededDocument doc;
  doc.id = absl::StrFormat("doc-%04d", index);
  doc.scenario = std::string(tmpl.scenario);
  const ScoreTable& taxonomy = BuiltinScoreTable();
  absl::string_view rest = tmpl.text;
  while (!rest.empty()) {
    const std::size_t open = rest.find('{');
    if (open == absl::string_view::npos) {
      absl::StrAppend(&doc.text, rest);
      break;
    }
    absl::StrAppend(&doc.text, rest.substr(0, open));
    rest.remove_prefix(open);
    const std::size_t close = rest.find('}');
    const absl::string_view marker = rest.substr(0, close + 1);
    rest.remove_prefix(close + 1);
    for (const Slot& slot : kSlots) {
      if (slot.marker != marker) continue;
      std::string surface;
      if (marker == "{name}") surface = gen.Name();
      if (marker == "{email}") surface = gen.Email();
      if (marker == "{phone}") surface = gen.Phone();
      if (marker == "{card}") surface = gen.Card();
      if (marker == "{id}") surface = gen.IdNumber();
      if (marker == "{ip}") surface = gen.Ip();
      EntitySpan span;
      span.start = doc.text.size();
      span.end = span.start + surface.size();
      span.surface = surface;
      span.type_name = std::string(slot.type_name);
      span.category = taxonomy.CategoryOf(slot.type_name);
      doc.text.append(surface);
      doc.manifest.push_back(std::move(span));
    }
  }
  return doc;
}

absl::Status CorpusError(absl::string_view message) {
  return MakeError(ErrorKind::kCorpusError, message);
}

}  // namespace

SeededCorpus GenerateCorpus(std::size_t count, std::uint64_t seed) {
  SeededCorpus corpus;
  corpus.seed = seed;
  Generator gen(seed);
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t scenario = i % 3;
    const std::size_t variant = gen.Below(4);
    corpus.documents.push_back(
        Instantiate(kTemplates[scenario * 4 + variant], i, gen));
  }
  return corpus;
}

std::string CorpusToJson(const SeededCorpus& corpus) {
  json docs = json::array();
  for (const SeededDocument& doc : corpus.documents) {
    json manifest = json::array();
    for (const EntitySpan& span : doc.manifest) {
      manifest.push_back({{"start", span.start},
                          {"end", span.end},
                          {"surface", span.surface},
                          {"type", span.type_name},
                          {"category", span.category.value}});
    }
    docs.push_back({{"id", doc.id},
                    {"scenario", doc.scenario},
                    {"text", doc.text},
                    {"manifest", std::move(manifest)}});
  }
  return json{{"seed", corpus.seed}, {"documents", std::move(docs)}}.dump(2) +
         "\n";
}

absl::StatusOr<SeededCorpus> ParseCorpus(absl::string_view json_text) {
  json root = json::parse(json_text, nullptr, /*allow_exceptions=*/false);
  if (root.is_discarded() || !root.is_object() ||
      !root.contains("documents") || !root["documents"].is_array()) {
    return CorpusError("corpus must be an object with a documents array");
  }
  SeededCorpus corpus;
  if (root.contains("seed") && root["seed"].is_number_unsigned()) {
    corpus.seed = root["seed"].get<std::uint64_t>();
  }
  try {
    for (const json& item : root["documents"]) {
      SeededDocument doc;
      doc.id = item.at("id").get<std::string>();
      doc.scenario = item.value("scenario", std::string());
      doc.text = item.at("text").get<std::string>();
      for (const json& s : item.at("manifest")) {
        EntitySpan span;
        span.start = s.at("start").get<std::size_t>();
        span.end = s.at("end").get<std::size_t>();
        span.surface = s.at("surface").get<std::string>();
        span.type_name = s.at("type").get<std::string>();
        span.category = CategoryId{s.at("category").get<std::string>()};
        doc.manifest.push_back(std::move(span));
      }
      if (absl::Status status = ValidateSpans(doc.text, doc.manifest);
          !status.ok()) {
        return CorpusError(absl::StrCat("document ", doc.id, ": ",
                                        status.message()));
      }
      corpus.documents.push_back(std::move(doc));
    }
  } catch (const json::exception& e) {
    return CorpusError(absl::StrCat("malformed document: ", e.what()));
  }
  if (corpus.documents.empty()) return CorpusError("corpus has no documents");
  return corpus;
}

absl::StatusOr<SeededCorpus> LoadCorpus(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return CorpusError(absl::StrCat("cannot open ", path.string()));
  std::stringstream buffer;
  buffer << in.rdbuf();
  return ParseCorpus(buffer.str());
}

}  // namespace anonpal
