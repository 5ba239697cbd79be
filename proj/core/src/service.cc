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

#include "anonpal/service.h"

#include <cmath>

#include "absl/strings/match.h"
#include "absl/strings/str_cat.h"
#include "anonpal/crypto.h"
#include "anonpal/errors.h"
#include "httplib.h"
#include "json.hpp"

namespace anonpal {
namespace {

using nlohmann::json;

constexpr char kJsonType[] = "application/json";

HttpResponse StatusResponse(const absl::Status& status) {
  return ErrorResponse(HttpStatusFor(status), ErrorCode(status),
                       status.message());
}

HttpResponse BadRequest(absl::string_view code, absl::string_view message) {
  return ErrorResponse(400, code, message);
}

// Parses a request body into an object, or fills `error`.
std::optional<json> ParseBody(absl::string_view body, HttpResponse& error) {
  json parsed = json::parse(body, nullptr, /*allow_exceptions=*/false);
  if (parsed.is_discarded()) {
    error = BadRequest("MalformedJson", "request body is not valid JSON");
    return std::nullopt;
  }
  if (!parsed.is_object()) {
    error = BadRequest("MalformedJson", "request body must be a JSON object");
    return std::nullopt;
  }
  return parsed;
}

// Optional typed field; a present field of the wrong type is an error.
template <typename T>
bool ReadField(const json& object, const char* key, std::optional<T>& out,
               HttpResponse& error) {
  auto it = object.find(key);
  if (it == object.end() || it->is_null()) return true;
  bool ok;
  if constexpr (std::is_same_v<T, std::string>) {
    ok = it->is_string();
  } else if constexpr (std::is_same_v<T, bool>) {
    ok = it->is_boolean();
  } else if constexpr (std::is_integral_v<T>) {
    ok = it->is_number_integer() && !(std::is_unsigned_v<T> && *it < 0);
  } else {
    ok = it->is_number();
  }
  if (!ok) {
    error = BadRequest("SchemaError", absl::StrCat("field '", key,
                                                   "' has the wrong type"));
    return false;
  }
  out = it->get<T>();
  return true;
}

json CoordinatesJson(double x_privacy, double y_utility) {
  return {{"privacy", x_privacy}, {"utility", y_utility}};
}

std::string NewSessionId() {
  std::array<std::uint8_t, 12> bytes{};
  FillRandom(bytes);
  return absl::StrCat("s-", ToHex(bytes));
}

json ResultJson(const AnonymizeResult& result, absl::string_view session_id,
                bool include_originals) {
  json changes = json::array();
  for (const ChangeRegion& change : result.doc.changes) {
    json item = {{"start", change.start},
                 {"end", change.end},
                 {"replacement", change.replacement},
                 {"category", change.category.value},
                 {"type", change.type_name},
                 {"source", SpanSourceName(change.source)}};
    if (include_originals) {
      item["original"] = result.original_text.substr(
          change.original_start, change.original_end - change.original_start);
    }
    changes.push_back(std::move(item));
  }
  json out = {{"output_text", result.doc.output_text},
              {"changes", std::move(changes)},
              {"warnings", result.doc.warnings},
              {"session_id", session_id}};
  if (result.plan.has_value()) {
    out["achieved"] = CoordinatesJson(result.plan->achieved.privacy,
                                      result.plan->achieved.utility);
    out["snapped_point"] = {{"x", result.plan->snapped_point.x()},
                            {"y", result.plan->snapped_point.y()}};
    out["magnetized"] = result.plan->magnetized;
  } else {
    out["achieved"] = nullptr;
    out["snapped_point"] = nullptr;
  }
  return out;
}

}  // namespace

int HttpStatusFor(const absl::Status& status) {
  const std::optional<ErrorKind> kind = ErrorKindOf(status);
  if (!kind.has_value()) return 500;
  switch (*kind) {
    case ErrorKind::kTransport:
    case ErrorKind::kBadResponse:
    case ErrorKind::kExhaustedRetries:
    case ErrorKind::kAlignmentFailed:
      return 502;
    case ErrorKind::kIoError:
    case ErrorKind::kCorruptSession:
    case ErrorKind::kInconsistent:
    case ErrorKind::kConfigError:
    case ErrorKind::kBindError:
    case ErrorKind::kZeroMass:
    case ErrorKind::kEmptyFrontier:
    case ErrorKind::kUnresolvedScore:
      return 500;
    default:
      return 400;
  }
}

HttpResponse ErrorResponse(int http_status, absl::string_view code,
                           absl::string_view message) {
  json body = {{"error", {{"code", code}, {"message", message}}}};
  return HttpResponse{http_status, body.dump()};
}

std::string AnonymizeResultToJson(const AnonymizeResult& result,
                                  absl::string_view session_id,
                                  bool include_originals) {
  return ResultJson(result, session_id, include_originals).dump();
}

struct Service::Server {
  httplib::Server http;
};

Service::Service(const Engine& engine, SessionStore& sessions,
                 ServiceOptions options)
    : engine_(engine),
      sessions_(sessions),
      options_(std::move(options)),
      server_(std::make_unique<Server>()) {
  httplib::Server& http = server_->http;
  http.set_payload_max_length(options_.max_body_bytes);
  // SO_REUSEADDR only. The library default also sets SO_REUSEPORT, which
  // would let a second instance bind the same port silently.
  http.set_socket_options([](socket_t sock) {
    int yes = 1;
    setsockopt(sock, SOL_SOCKET, SO_REUSEADDR,
               reinterpret_cast<const void*>(&yes), sizeof(yes));
  });
  auto reply = [](httplib::Response& res, const HttpResponse& out) {
    res.status = out.status;
    res.set_content(out.body, kJsonType);
  };
  auto guarded = [this, reply](auto handler) {
    return [this, reply, handler](const httplib::Request& req,
                                  httplib::Response& res) {
      if (!Authorized(req.get_header_value("Authorization"))) {
        reply(res, ErrorResponse(401, "Unauthorized",
                                 "missing or wrong bearer token"));
        return;
      }
      reply(res, handler(req));
    };
  };
  http.Get("/v1/curve", guarded([this](const httplib::Request&) {
             return HandleCurve();
           }));
  http.Post("/v1/recognize", guarded([this](const httplib::Request& req) {
              return HandleRecognize(req.body);
            }));
  http.Post("/v1/anonymize", guarded([this](const httplib::Request& req) {
              return HandleAnonymize(req.body);
            }));
  http.Post("/v1/edit", guarded([this](const httplib::Request& req) {
              return HandleEdit(req.body);
            }));
  http.set_error_handler([reply](const httplib::Request&, httplib::Response& res) {
    if (!res.body.empty()) return;
    const std::string code = res.status == 404 ? "NotFound" : "HttpError";
    reply(res, ErrorResponse(res.status, code, httplib::status_message(res.status)));
  });
  http.set_exception_handler([reply](const httplib::Request&,
                                     httplib::Response& res,
                                     std::exception_ptr) {
    reply(res, ErrorResponse(500, "Internal", "unexpected server error"));
  });
}

Service::~Service() { Stop(); }

bool Service::Authorized(absl::string_view authorization_header) const {
  if (options_.bearer_token.empty()) return true;
  return authorization_header == absl::StrCat("Bearer ", options_.bearer_token);
}

HttpResponse Service::HandleCurve() const {
  json body = {{"vertices", json::parse(FrontierToJson(engine_.frontier()))},
               {"magnet_radius", engine_.options().magnet_radius}};
  return HttpResponse{200, body.dump()};
}

HttpResponse Service::HandleRecognize(absl::string_view body) const {
  HttpResponse error;
  std::optional<json> request = ParseBody(body, error);
  if (!request.has_value()) return error;
  std::optional<std::string> text, backend_name;
  std::optional<bool> include_originals;
  if (!ReadField(*request, "text", text, error) ||
      !ReadField(*request, "backend", backend_name, error) ||
      !ReadField(*request, "include_originals", include_originals, error)) {
    return error;
  }
  if (!text.has_value()) return BadRequest("SchemaError", "'text' is required");
  std::optional<Backend> backend = ParseBackend(backend_name.value_or("rules"));
  if (!backend.has_value()) {
    return BadRequest("SchemaError", "backend must be 'rules' or 'llm'");
  }
  absl::StatusOr<Recognition> recognition = engine_.Recognize(*text, *backend);
  if (!recognition.ok()) return StatusResponse(recognition.status());
  json spans = json::array();
  for (const EntitySpan& span : recognition->spans) {
    json item = {{"start", span.start},
                 {"end", span.end},
                 {"type", span.type_name},
                 {"category", span.category.value},
                 {"source", SpanSourceName(span.source)}};
    if (include_originals.value_or(false)) item["surface"] = span.surface;
    spans.push_back(std::move(item));
  }
  json out = {{"spans", std::move(spans)},
              {"warnings", recognition->warnings}};
  return HttpResponse{200, out.dump()};
}

HttpResponse Service::HandleAnonymize(absl::string_view body) {
  HttpResponse error;
  std::optional<json> request = ParseBody(body, error);
  if (!request.has_value()) return error;
  std::optional<std::string> text, mode_name, session_id, backend_name;
  std::optional<double> epsilon;
  std::optional<std::uint64_t> seed;
  std::optional<bool> include_originals;
  if (!ReadField(*request, "text", text, error) ||
      !ReadField(*request, "mode", mode_name, error) ||
      !ReadField(*request, "session_id", session_id, error) ||
      !ReadField(*request, "backend", backend_name, error) ||
      !ReadField(*request, "epsilon", epsilon, error) ||
      !ReadField(*request, "seed", seed, error) ||
      !ReadField(*request, "include_originals", include_originals, error)) {
    return error;
  }
  if (!text.has_value()) return BadRequest("SchemaError", "'text' is required");
  std::optional<double> x, y;
  if (auto it = request->find("point"); it != request->end() && !it->is_null()) {
    if (!it->is_object() || !ReadField(*it, "x", x, error) ||
        !ReadField(*it, "y", y, error)) {
      return it->is_object()
                 ? error
                 : BadRequest("SchemaError", "'point' must be an object");
    }
  }
  const std::string name = mode_name.value_or("full");
  Mode mode;
  if (name == "automatic") {
    mode = AutomaticMode{};
  } else if (name == "privacy_only") {
    if (!x.has_value()) {
      return BadRequest("SchemaError", "privacy_only needs point.x");
    }
    mode = PrivacyOnlyMode{*x};
  } else if (name == "full") {
    if (!x.has_value() || !y.has_value()) {
      return BadRequest("SchemaError", "full needs point.x and point.y");
    }
    mode = FullMode{*x, *y};
  } else if (name == "dp") {
    mode = DpMode{epsilon.value_or(options_.default_epsilon), seed.value_or(0)};
  } else {
    return BadRequest("SchemaError",
                      "mode must be automatic, privacy_only, full or dp");
  }
  std::optional<Backend> backend = ParseBackend(backend_name.value_or("rules"));
  if (!backend.has_value()) {
    return BadRequest("SchemaError", "backend must be 'rules' or 'llm'");
  }

  std::optional<AnonymizeResult> result;
  std::string id;
  if (session_id.has_value()) {
    id = *session_id;
    absl::Status status = sessions_.Update(id, [&](PseudonymSession& session) {
      absl::StatusOr<AnonymizeResult> run =
          engine_.Run(*text, mode, *backend, session);
      if (!run.ok()) return run.status();
      result = *std::move(run);
      return absl::OkStatus();
    });
    if (!status.ok()) return StatusResponse(status);
  } else {
    id = NewSessionId();
    PseudonymSession session = PseudonymSession::Fresh(id);
    absl::StatusOr<AnonymizeResult> run =
        engine_.Run(*text, mode, *backend, session);
    if (!run.ok()) return StatusResponse(run.status());
    result = *std::move(run);
  }
  json out = ResultJson(*result, id, include_originals.value_or(false));
  out["mode"] = name;
  RememberResult(id, *std::move(result));
  return HttpResponse{200, out.dump()};
}

HttpResponse Service::HandleEdit(absl::string_view body) {
  HttpResponse error;
  std::optional<json> request = ParseBody(body, error);
  if (!request.has_value()) return error;
  std::optional<std::string> session_id, new_text;
  std::optional<std::int64_t> region_index;
  std::optional<bool> include_originals;
  if (!ReadField(*request, "session_id", session_id, error) ||
      !ReadField(*request, "region_index", region_index, error) ||
      !ReadField(*request, "new_text", new_text, error) ||
      !ReadField(*request, "include_originals", include_originals, error)) {
    return error;
  }
  if (!session_id.has_value() || !region_index.has_value() ||
      !new_text.has_value()) {
    return BadRequest("SchemaError",
                      "session_id, region_index and new_text are required");
  }
  std::lock_guard guard(results_mutex_);
  auto it = results_.find(*session_id);
  if (it == results_.end()) {
    return ErrorResponse(404, "UnknownSession",
                         "no anonymized document for this session");
  }
  if (*region_index < 0) {
    return StatusResponse(
        MakeError(ErrorKind::kBadIndex, "region_index must be >= 0"));
  }
  absl::StatusOr<AnonymizeResult> edited = ApplyUserEdit(
      it->second, static_cast<std::size_t>(*region_index), *new_text);
  if (!edited.ok()) return StatusResponse(edited.status());
  it->second = *std::move(edited);
  result_ages_[*session_id] = ++result_clock_;
  json out = ResultJson(it->second, *session_id, include_originals.value_or(false));
  return HttpResponse{200, out.dump()};
}

void Service::RememberResult(const std::string& session_id,
                             AnonymizeResult result) {
  std::lock_guard guard(results_mutex_);
  results_[session_id] = std::move(result);
  result_ages_[session_id] = ++result_clock_;
  while (results_.size() > options_.max_cached_results) {
    auto oldest = result_ages_.begin();
    for (auto age = result_ages_.begin(); age != result_ages_.end(); ++age) {
      if (age->second < oldest->second) oldest = age;
    }
    results_.erase(oldest->first);
    result_ages_.erase(oldest);
  }
}

absl::Status Service::Bind() {
  httplib::Server& http = server_->http;
  if (options_.port == 0) {
    bound_port_ = http.bind_to_any_port(options_.host);
    if (bound_port_ <= 0) {
      return MakeError(ErrorKind::kBindError,
                       absl::StrCat("cannot bind ", options_.host));
    }
    return absl::OkStatus();
  }
  if (!http.bind_to_port(options_.host, options_.port)) {
    return MakeError(ErrorKind::kBindError,
                     absl::StrCat("cannot bind ", options_.host, ":",
                                  options_.port));
  }
  bound_port_ = options_.port;
  return absl::OkStatus();
}

absl::Status Service::Serve() {
  if (bound_port_ == 0) {
    if (absl::Status status = Bind(); !status.ok()) return status;
  }
  if (!server_->http.listen_after_bind()) {
    return MakeError(ErrorKind::kBindError, "listener stopped unexpectedly");
  }
  return absl::OkStatus();
}

void Service::Stop() {
  if (server_ != nullptr) server_->http.stop();
}

}  // namespace anonpal
