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

#include "anonpal/llm_client.h"

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <thread>

#include "absl/strings/match.h"
#include "absl/strings/str_cat.h"
#include "anonpal/annotation.h"
#include "anonpal/crypto.h"
#include "anonpal/errors.h"
#include "httplib.h"
#include "json.hpp"

namespace anonpal {
namespace {

struct ParsedEndpoint {
  std::string origin;     // scheme://host[:port]
  std::string base_path;  // without trailing slash
};

absl::StatusOr<ParsedEndpoint> SplitEndpoint(absl::string_view endpoint) {
  const std::size_t scheme_end = endpoint.find("://");
  if (scheme_end == absl::string_view::npos) {
    return MakeError(ErrorKind::kConfigError,
                     absl::StrCat("endpoint must be an absolute URL: ", endpoint));
  }
  const std::size_t path_start = endpoint.find('/', scheme_end + 3);
  ParsedEndpoint out;
  out.origin = std::string(endpoint.substr(0, path_start));
  if (path_start != absl::string_view::npos) {
    out.base_path = std::string(endpoint.substr(path_start));
    while (!out.base_path.empty() && out.base_path.back() == '/') {
      out.base_path.pop_back();
    }
  }
  return out;
}

const char* Env(const char* name) {
  const char* value = std::getenv(name);
  return (value != nullptr && *value != '\0') ? value : nullptr;
}

}  // namespace

absl::Status LlmClientConfig::Validate() const {
  if (timeout.count() <= 0) {
    return MakeError(ErrorKind::kConfigError, "timeout must be positive");
  }
  if (max_retries < 0) {
    return MakeError(ErrorKind::kConfigError, "max_retries must be >= 0");
  }
  if (fixture_mode != FixtureMode::kReplay && endpoint.empty()) {
    return MakeError(ErrorKind::kConfigError, "LLM endpoint is not configured");
  }
  if (fixture_mode != FixtureMode::kOff && fixture_dir.empty()) {
    return MakeError(ErrorKind::kConfigError, "fixture directory is not set");
  }
  return absl::OkStatus();
}

LlmClientConfig LlmClientConfig::FromEnv() {
  LlmClientConfig config;
  if (const char* v = Env("ADANON_LLM_ENDPOINT")) config.endpoint = v;
  if (const char* v = Env("ADANON_LLM_KEY")) config.api_key = v;
  if (const char* v = Env("ADANON_LLM_MODEL")) config.model_name = v;
  if (const char* v = Env("ADANON_LLM_FIXTURES")) {
    config.fixture_mode = FixtureMode::kReplay;
    config.fixture_dir = v;
  }
  return config;
}

std::string ChatRequestBody(const LlmClientConfig& config,
                            const std::vector<ChatMessage>& messages) {
  nlohmann::json body;
  body["model"] = config.model_name;
  body["temperature"] = config.temperature;
  body["messages"] = nlohmann::json::array();
  for (const ChatMessage& message : messages) {
    body["messages"].push_back(
        {{"role", message.role}, {"content", message.content}});
  }
  return body.dump();
}

std::string FixtureKey(absl::string_view request_body) {
  return ToHex(Sha256(request_body));
}

absl::StatusOr<std::string> ParseChatResponse(absl::string_view response_body) {
  nlohmann::json root =
      nlohmann::json::parse(response_body, nullptr, /*allow_exceptions=*/false);
  if (root.is_discarded() || !root.is_object()) {
    return MakeError(ErrorKind::kBadResponse, "response is not a JSON object");
  }
  auto choices = root.find("choices");
  if (choices == root.end() || !choices->is_array() || choices->empty()) {
    return MakeError(ErrorKind::kBadResponse, "response has no choices");
  }
  const nlohmann::json& first = (*choices)[0];
  if (!first.is_object() || !first.contains("message") ||
      !first["message"].is_object() || !first["message"].contains("content") ||
      !first["message"]["content"].is_string()) {
    return MakeError(ErrorKind::kBadResponse,
                     "choices[0].message.content is missing");
  }
  return first["message"]["content"].get<std::string>();
}

absl::StatusOr<std::string> ChatCompletionClient::Post(
    const std::string& body) const {
  absl::StatusOr<ParsedEndpoint> endpoint = SplitEndpoint(config_.endpoint);
  if (!endpoint.ok()) return endpoint.status();
  const std::string path = endpoint->base_path + "/chat/completions";
  httplib::Headers headers;
  if (!config_.api_key.empty()) {
    headers.emplace("Authorization", "Bearer " + config_.api_key);
  }
  const auto timeout_sec = config_.timeout.count() / 1000;
  const auto timeout_usec = (config_.timeout.count() % 1000) * 1000;

  std::string last_error;
  for (int attempt = 0; attempt <= config_.max_retries; ++attempt) {
    if (attempt > 0) {
      std::this_thread::sleep_for(std::chrono::milliseconds(50 << (attempt - 1)));
    }
    httplib::Client client(endpoint->origin);
    client.set_connection_timeout(timeout_sec, timeout_usec);
    client.set_read_timeout(timeout_sec, timeout_usec);
    client.set_write_timeout(timeout_sec, timeout_usec);
    httplib::Result result =
        client.Post(path, headers, body, "application/json");
    if (!result) {
      last_error = httplib::to_string(result.error());
      continue;
    }
    if (result->status >= 500) {
      last_error = absl::StrCat("HTTP ", result->status);
      continue;
    }
    if (result->status != 200) {
      return MakeError(ErrorKind::kBadResponse,
                       absl::StrCat("endpoint answered HTTP ", result->status));
    }
    return result->body;
  }
  return MakeError(ErrorKind::kTransport,
                   absl::StrCat("request failed after ", config_.max_retries + 1,
                                " attempts: ", last_error));
}

absl::StatusOr<std::string> ChatCompletionClient::Complete(
    const std::vector<ChatMessage>& messages) const {
  if (absl::Status status = config_.Validate(); !status.ok()) return status;
  const std::string body = ChatRequestBody(config_, messages);
  const std::filesystem::path fixture =
      config_.fixture_dir / (FixtureKey(body) + ".json");

  if (config_.fixture_mode == FixtureMode::kReplay) {
    std::ifstream in(fixture, std::ios::binary);
    if (!in) {
      return MakeError(ErrorKind::kTransport,
                       absl::StrCat("no fixture for request: ", fixture.string()));
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    return ParseChatResponse(buffer.str());
  }

  absl::StatusOr<std::string> response = Post(body);
  if (!response.ok()) return response.status();
  if (config_.fixture_mode == FixtureMode::kRecord) {
    std::filesystem::create_directories(config_.fixture_dir);
    std::ofstream out(fixture, std::ios::binary);
    out << *response;
  }
  return ParseChatResponse(*response);
}

absl::StatusOr<Recognition> RecognitionFromCompletion(
    absl::string_view text, absl::string_view completion,
    const ScoreTable& taxonomy) {
  ParsedAnnotations parsed = ParseAnnotations(
      completion, [&](absl::string_view label) { return taxonomy.IsKnownName(label); });
  if (parsed.entities.empty() &&
      NormalizeWhitespace(parsed.stripped) != NormalizeWhitespace(text)) {
    return MakeError(ErrorKind::kBadResponse,
                     "completion contains no annotations and does not echo "
                     "the input");
  }
  absl::StatusOr<AlignedSpans> aligned =
      Align(parsed.entities, parsed.stripped, text, taxonomy, SpanSource::kLlm);
  if (!aligned.ok()) return aligned.status();
  Recognition out;
  out.spans = std::move(aligned->spans);
  out.warnings = std::move(parsed.warnings);
  out.warnings.insert(out.warnings.end(), aligned->warnings.begin(),
                      aligned->warnings.end());
  return out;
}

absl::StatusOr<Recognition> RecognizeLlm(absl::string_view text,
                                         const ChatCompletionClient& client,
                                         const ScoreTable& taxonomy,
                                         const PromptTemplate& prompt_template) {
  absl::StatusOr<PromptPayload> payload = BuildPrompt(text, prompt_template);
  if (!payload.ok()) return payload.status();
  absl::StatusOr<std::string> completion =
      client.Complete(ToChatMessages(*payload));
  if (!completion.ok()) return completion.status();
  return RecognitionFromCompletion(text, *completion, taxonomy);
}

}  // namespace anonpal
