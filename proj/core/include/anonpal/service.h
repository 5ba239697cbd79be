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

// JSON-over-HTTP front end for the engine.
//
//   GET  /v1/curve
//   POST /v1/recognize  {text, backend?, include_originals?}
//   POST /v1/anonymize  {text, mode, point?, epsilon?, seed?, session_id?,
//                        backend?, include_originals?}
//   POST /v1/edit       {session_id, region_index, new_text,
//                        include_originals?}
//
// Errors are {"error": {"code", "message"}} with a 4xx/5xx status. Original
// sensitive surfaces are only returned when include_originals is true.

#ifndef ANONPAL_SERVICE_H_
#define ANONPAL_SERVICE_H_

#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <string>

#include "absl/status/status.h"
#include "absl/strings/string_view.h"
#include "anonpal/engine.h"
#include "anonpal/session_store.h"

namespace anonpal {

struct HttpResponse {
  int status = 200;
  std::string body;
};

struct ServiceOptions {
  std::string host = "127.0.0.1";
  // 0 binds an ephemeral port.
  int port = 8080;
  // When non-empty, requests must carry "Authorization: Bearer <token>".
  std::string bearer_token;
  double default_epsilon = kDefaultEpsilon;
  std::size_t max_body_bytes = 1 << 20;
  // Last result per session kept for /v1/edit.
  std::size_t max_cached_results = 1024;
};

// HTTP status for an engine error kind.
int HttpStatusFor(const absl::Status& status);
HttpResponse ErrorResponse(int http_status, absl::string_view code,
                           absl::string_view message);

// The /v1/anonymize response body.
std::string AnonymizeResultToJson(const AnonymizeResult& result,
                                  absl::string_view session_id,
                                  bool include_originals);

class Service {
 public:
  Service(const Engine& engine, SessionStore& sessions, ServiceOptions options);
  ~Service();

  Service(const Service&) = delete;
  Service& operator=(const Service&) = delete;

  // Transport-free handlers; the HTTP server delegates to these.
  HttpResponse HandleCurve() const;
  HttpResponse HandleRecognize(absl::string_view body) const;
  HttpResponse HandleAnonymize(absl::string_view body);
  HttpResponse HandleEdit(absl::string_view body);
  bool Authorized(absl::string_view authorization_header) const;

  // kBindError when the address is unavailable.
  absl::Status Bind();
  int port() const { return bound_port_; }
  // Blocks until Stop().
  absl::Status Serve();
  // Thread-safe and idempotent.
  void Stop();

 private:
  struct Server;

  void RememberResult(const std::string& session_id, AnonymizeResult result);

  const Engine& engine_;
  SessionStore& sessions_;
  ServiceOptions options_;
  std::unique_ptr<Server> server_;
  int bound_port_ = 0;

  std::mutex results_mutex_;
  std::map<std::string, AnonymizeResult> results_;
  std::map<std::string, std::uint64_t> result_ages_;
  std::uint64_t result_clock_ = 0;
};

}  // namespace anonpal

#endif  // ANONPAL_SERVICE_H_
