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

#include "anonpal/session_store.h"

#include <atomic>
#include <fstream>
#include <sstream>
#include <system_error>

#include "absl/strings/ascii.h"
#include "absl/strings/str_cat.h"
#include "anonpal/errors.h"

namespace anonpal {

bool SessionStore::IsValidId(absl::string_view id) {
  if (id.empty() || id.size() > 128 || id.front() == '.') return false;
  for (char c : id) {
    if (!absl::ascii_isalnum(static_cast<unsigned char>(c)) && c != '_' &&
        c != '-' && c != '.') {
      return false;
    }
  }
  return true;
}

std::filesystem::path SessionStore::PathFor(const std::string& session_id) const {
  return *dir_ / (session_id + ".json");
}

std::shared_ptr<std::mutex> SessionStore::LockFor(const std::string& session_id) {
  std::lock_guard guard(registry_mutex_);
  auto& slot = locks_[session_id];
  if (slot == nullptr) slot = std::make_shared<std::mutex>();
  return slot;
}

absl::StatusOr<PseudonymSession> SessionStore::LoadUnlocked(
    const std::string& session_id) {
  if (!IsValidId(session_id)) {
    return MakeError(ErrorKind::kRangeError,
                     absl::StrCat("invalid session id '", session_id, "'"));
  }
  std::string text;
  if (!dir_.has_value()) {
    std::lock_guard guard(registry_mutex_);
    auto it = memory_.find(session_id);
    if (it == memory_.end()) return PseudonymSession::Fresh(session_id);
    text = it->second;
  } else {
    const std::filesystem::path path = PathFor(session_id);
    std::error_code ec;
    if (!std::filesystem::exists(path, ec)) {
      if (ec) {
        return MakeError(ErrorKind::kIoError,
                         absl::StrCat("cannot stat ", path.string(), ": ",
                                      ec.message()));
      }
      return PseudonymSession::Fresh(session_id);
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) {
      return MakeError(ErrorKind::kIoError,
                       absl::StrCat("cannot read ", path.string()));
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    text = buffer.str();
  }
  absl::StatusOr<PseudonymSession> session = SessionFromJson(text);
  if (!session.ok()) return session.status();
  if (session->session_id() != session_id) {
    return MakeError(ErrorKind::kCorruptSession,
                     absl::StrCat("file for '", session_id,
                                  "' holds session '", session->session_id(),
                                  "'"));
  }
  return session;
}

absl::Status SessionStore::SaveUnlocked(const PseudonymSession& session) {
  if (!IsValidId(session.session_id())) {
    return MakeError(ErrorKind::kRangeError,
                     absl::StrCat("invalid session id '",
                                  session.session_id(), "'"));
  }
  const std::string text = SessionToJson(session);
  if (!dir_.has_value()) {
    std::lock_guard guard(registry_mutex_);
    memory_[session.session_id()] = text;
    return absl::OkStatus();
  }
  static std::atomic<std::uint64_t> counter{0};
  std::error_code ec;
  std::filesystem::create_directories(*dir_, ec);
  if (ec) {
    return MakeError(ErrorKind::kIoError,
                     absl::StrCat("cannot create ", dir_->string(), ": ",
                                  ec.message()));
  }
  const std::filesystem::path path = PathFor(session.session_id());
  const std::filesystem::path tmp =
      path.string() + absl::StrCat(".tmp", counter.fetch_add(1));
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << text;
    out.flush();
    if (!out) {
      std::filesystem::remove(tmp, ec);
      return MakeError(ErrorKind::kIoError,
                       absl::StrCat("cannot write ", tmp.string()));
    }
  }
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    return MakeError(ErrorKind::kIoError,
                     absl::StrCat("cannot replace ", path.string()));
  }
  return absl::OkStatus();
}

absl::StatusOr<PseudonymSession> SessionStore::Load(
    const std::string& session_id) {
  std::shared_ptr<std::mutex> lock = LockFor(session_id);
  std::lock_guard guard(*lock);
  return LoadUnlocked(session_id);
}

absl::Status SessionStore::Save(const PseudonymSession& session) {
  std::shared_ptr<std::mutex> lock = LockFor(session.session_id());
  std::lock_guard guard(*lock);
  return SaveUnlocked(session);
}

absl::Status SessionStore::Update(
    const std::string& session_id,
    const std::function<absl::Status(PseudonymSession&)>& fn) {
  std::shared_ptr<std::mutex> lock = LockFor(session_id);
  std::lock_guard guard(*lock);
  absl::StatusOr<PseudonymSession> session = LoadUnlocked(session_id);
  if (!session.ok()) return session.status();
  if (absl::Status status = fn(*session); !status.ok()) return status;
  return SaveUnlocked(*session);
}

}  // namespace anonpal
