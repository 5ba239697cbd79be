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

#ifndef ANONPAL_PROMPT_H_
#define ANONPAL_PROMPT_H_

#include <filesystem>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"

namespace anonpal {

absl::string_view BuiltinGuidance();
absl::string_view BuiltinShotInput();
absl::string_view BuiltinShotOutput();

struct PromptTemplate {
  std::string guidance;
  std::string shot_input;
  std::string shot_output;
};

PromptTemplate BuiltinPromptTemplate();

// Template file: JSON object {"guidance", "shot_input", "shot_output"}.
absl::StatusOr<PromptTemplate> LoadPromptTemplate(
    const std::filesystem::path& path);

// Guidance, then the worked example, then the user's text.
struct PromptPayload {
  std::string guidance;
  std::string shot_input;
  std::string shot_output;
  std::string user_text;
};

absl::StatusOr<PromptPayload> BuildPrompt(
    absl::string_view user_text,
    const PromptTemplate& prompt_template = BuiltinPromptTemplate());

struct ChatMessage {
  std::string role;
  std::string content;

  friend bool operator==(const ChatMessage&, const ChatMessage&) = default;
};

// system: guidance, user: example input, assistant: example output,
// user: text to annotate.
std::vector<ChatMessage> ToChatMessages(const PromptPayload& payload);

// Class names listed in a guidance text ("Name: description" lines after
// the "[Information Classes]" marker).
std::vector<std::string> GuidanceClassNames(absl::string_view guidance);

}  // namespace anonpal

#endif  // ANONPAL_PROMPT_H_
