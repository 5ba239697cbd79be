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

// Pseudonym sessions keyed by id, persisted as one JSON file per session or
// kept in memory.

#ifndef ANONPAL_SESSION_STORE_H_
#define ANONPAL_SESSION_STORE_H_

#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>

#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "anonpal/pseudonymizer.h"

namespace anonpal {

class SessionStore {
 public:
  // In-memory store.
  SessionStore() = default;
  // Files live under `dir`, created on first save.
  explicit SessionStore(std::filesystem::path dir) : dir_(std::move(dir)) {}

  SessionStore(const SessionStore&) = delete;
  SessionStore& operator=(const SessionStore&) = delete;

  // Ids are 1-128 characters from [A-Za-z0-9_.-], not starting with '.'.
  static bool IsValidId(absl::string_view id);

  // An unknown id yields a fresh session with a random salt. A file that
  // does not parse is kCorruptSession; it is never silently replaced.
  absl::StatusOr<PseudonymSession> Load(const std::string& session_id);

  // Atomic replace (write to a temporary file, then rename). kIoError.
  absl::Status Save(const PseudonymSession& session);

  // Load, run `fn`, and save when `fn` succeeds, all under the per-id lock.
  absl::Status Update(const std::string& session_id,
                      const std::function<absl::Status(PseudonymSession&)>& fn);

  std::optional<std::filesystem::path> directory() const { return dir_; }

 private:
  std::filesystem::path PathFor(const std::string& session_id) const;
  std::shared_ptr<std::mutex> LockFor(const std::string& session_id);
  absl::StatusOr<PseudonymSession> LoadUnlocked(const std::string& session_id);
  absl::Status SaveUnlocked(const PseudonymSession& session);

  std::optional<std::filesystem::path> dir_;
  std::mutex registry_mutex_;
  std::map<std::string, std::shared_ptr<std::mutex>> locks_;
  std::map<std::string, std::string> memory_;
};

}  // namespace anonpal

#endif  // ANONPAL_SESSION_STORE_H_
