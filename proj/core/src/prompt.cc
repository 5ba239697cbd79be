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

#include "anonpal/prompt.h"

#include <fstream>
#include <sstream>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_split.h"
#include "absl/strings/strip.h"
#include "anonpal/errors.h"
#include "json.hpp"

namespace anonpal {

PromptTemplate BuiltinPromptTemplate() {
  return PromptTemplate{std::string(BuiltinGuidance()),
                        std::string(BuiltinShotInput()),
                        std::string(BuiltinShotOutput())};
}

absl::StatusOr<PromptTemplate> LoadPromptTemplate(
    const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    return MakeError(ErrorKind::kIoError,
                     absl::StrCat("cannot open ", path.string()));
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  nlohmann::json root =
      nlohmann::json::parse(buffer.str(), nullptr, /*allow_exceptions=*/false);
  if (!root.is_object()) {
    return MakeError(ErrorKind::kSchemaError,
                     "prompt template must be a JSON object");
  }
  PromptTemplate out;
  for (auto [key, field] :
       {std::pair{"guidance", &out.guidance},
        std::pair{"shot_input", &out.shot_input},
        std::pair{"shot_output", &out.shot_output}}) {
    auto it = root.find(key);
    if (it == root.end() || !it->is_string()) {
      return MakeError(ErrorKind::kSchemaError,
                       absl::StrCat("prompt template needs string '", key, "'"));
    }
    *field = it->get<std::string>();
  }
  if (root.size() != 3) {
    return MakeError(ErrorKind::kSchemaError,
                     "prompt template has unknown fields");
  }
  return out;
}

absl::StatusOr<PromptPayload> BuildPrompt(absl::string_view user_text,
                                          const PromptTemplate& prompt_template) {
  if (user_text.empty()) {
    return MakeError(ErrorKind::kEmptyInput, "text to annotate is empty");
  }
  return PromptPayload{prompt_template.guidance, prompt_template.shot_input,
                       prompt_template.shot_output, std::string(user_text)};
}

std::vector<ChatMessage> ToChatMessages(const PromptPayload& payload) {
  return {{"system", payload.guidance},
          {"user", payload.shot_input},
          {"assistant", payload.shot_output},
          {"user", payload.user_text}};
}

std::vector<std::string> GuidanceClassNames(absl::string_view guidance) {
  constexpr absl::string_view kMarker = "[Information Classes]";
  std::vector<std::string> names;
  const std::size_t marker = guidance.find(kMarker);
  if (marker == absl::string_view::npos) return names;
  for (absl::string_view line :
       absl::StrSplit(guidance.substr(marker + kMarker.size()), '\n')) {
    line = absl::StripAsciiWhitespace(line);
    const std::size_t colon = line.find(':');
    if (line.empty() || colon == absl::string_view::npos || colon == 0) continue;
    names.emplace_back(absl::StripAsciiWhitespace(line.substr(0, colon)));
  }
  return names;
}

}  // namespace anonpal
