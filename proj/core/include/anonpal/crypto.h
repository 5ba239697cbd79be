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

#ifndef ANONPAL_CRYPTO_H_
#define ANONPAL_CRYPTO_H_

#include <array>
#include <cstdint>
#include <span>
#include <string>

#include "absl/strings/string_view.h"

namespace anonpal {

using Digest = std::array<std::uint8_t, 32>;

Digest Sha256(absl::string_view data);
Digest HmacSha256(std::span<const std::uint8_t> key, absl::string_view message);

std::string ToHex(std::span<const std::uint8_t> bytes);

// First eight bytes of HMAC-SHA256(key, message), big-endian.
std::uint64_t KeyedHash64(std::span<const std::uint8_t> key,
                          absl::string_view message);

// Cryptographically secure random bytes.
void FillRandom(std::span<std::uint8_t> out);

}  // namespace anonpal

#endif  // ANONPAL_CRYPTO_H_
