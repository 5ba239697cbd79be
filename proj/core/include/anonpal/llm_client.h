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

// Chat-completion client for the LLM recognizer backend, with an offline
// fixture mode keyed by a hash of the request body.

#ifndef ANONPAL_LLM_CLIENT_H_
#define ANONPAL_LLM_CLIENT_H_

#include <chrono>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "anonpal/entity.h"
#include "anonpal/prompt.h"
#include "anonpal/taxonomy.h"

namespace anonpal {

enum class FixtureMode { kOff, kReplay, kRecord };

struct LlmClientConfig {
  // Base URL; requests go to {endpoint}/chat/completions.
  std::string endpoint;
  std::string model_name = "qwen2.5-7b-instruct";
  std::string api_key;
  std::chrono::milliseconds timeout{30000};
  int max_retries = 2;
  double temperature = 0.0;
  FixtureMode fixture_mode = FixtureMode::kOff;
  std::filesystem::path fixture_dir;

  absl::Status Validate() const;

  // Reads ADANON_LLM_ENDPOINT, ADANON_LLM_KEY, ADANON_LLM_MODEL and, when
  // set, ADANON_LLM_FIXTURES (replay directory).
  static LlmClientConfig FromEnv();
};

// Serialized request body {model, messages, temperature}.
std::string ChatRequestBody(const LlmClientConfig& config,
                            const std::vector<ChatMessage>& messages);

// Fixture file name stem: hex SHA-256 of the request body.
std::string FixtureKey(absl::string_view request_body);

// Extracts choices[0].message.content from a response body.
absl::StatusOr<std::string> ParseChatResponse(absl::string_view response_body);

// Stateless per request; safe to call concurrently.
class ChatCompletionClient {
 public:
  explicit ChatCompletionClient(LlmClientConfig config)
      : config_(std::move(config)) {}

  const LlmClientConfig& config() const { return config_; }

  absl::StatusOr<std::string> Complete(
      const std::vector<ChatMessage>& messages) const;

 private:
  absl::StatusOr<std::string> Post(const std::string& body) const;

  LlmClientConfig config_;
};

struct Recognition {
  std::vector<EntitySpan> spans;
  std::vector<std::string> warnings;
};

// Prompt -> completion -> parse -> align. Spans are tagged LLM.
absl::StatusOr<Recognition> RecognizeLlm(
    absl::string_view text, const ChatCompletionClient& client,
    const ScoreTable& taxonomy,
    const PromptTemplate& prompt_template = BuiltinPromptTemplate());

// Parse + align step of RecognizeLlm, for a completion already in hand.
absl::StatusOr<Recognition> RecognitionFromCompletion(
    absl::string_view text, absl::string_view completion,
    const ScoreTable& taxonomy);

}  // namespace anonpal

#endif  // ANONPAL_LLM_CLIENT_H_
