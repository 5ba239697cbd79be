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

#include "anonpal/crypto.h"

#include <algorithm>
#include <array>
#include <random>
#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "oracles/sha256_oracle.h"

namespace anonpal {
namespace {

std::vector<std::uint8_t> Bytes(absl::string_view text) {
  return std::vector<std::uint8_t>(text.begin(), text.end());
}

TEST(Sha256Test, StandardVectors) {
  EXPECT_EQ(ToHex(Sha256("")),
            "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  EXPECT_EQ(ToHex(Sha256("abc")),
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  EXPECT_EQ(
      ToHex(Sha256("abcdbcdecdefdefgefghfghighijhijkijkljklmklmnlmnomnopnopq")),
      "248d6a61d20638b8e5c026930c3e6039a33ce45964ff2167f6ecedd419db06c1");
}

TEST(HmacSha256Test, Rfc4231Case2) {
  const std::vector<std::uint8_t> key = Bytes("Jefe");
  EXPECT_EQ(ToHex(HmacSha256(key, "what do ya want for nothing?")),
            "5bdcc146bf60754e6a042426089575c75a003f089d2739839dec58b964ec3843");
}

TEST(HmacSha256Test, LongKeyIsHashedFirst) {
  // RFC 4231 case 6: 131 bytes of 0xaa.
  const std::vector<std::uint8_t> key(131, 0xaa);
  EXPECT_EQ(ToHex(HmacSha256(
                key, "Test Using Larger Than Block-Size Key - Hash Key First")),
            "60e431591ee0b67f0d8a26aacbf5b77f8e0bc6213728c5140546040f0ee37f54");
}

TEST(CryptoTest, AgreesWithIndependentImplementation) {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> byte(0, 255);
  std::uniform_int_distribution<int> length(0, 200);
  for (int trial = 0; trial < 500; ++trial) {
    std::string message;
    for (int i = length(rng); i > 0; --i) {
      message.push_back(static_cast<char>(byte(rng)));
    }
    std::vector<std::uint8_t> key(static_cast<std::size_t>(length(rng)));
    for (auto& b : key) b = static_cast<std::uint8_t>(byte(rng));

    const Digest digest = Sha256(message);
    const auto expected = oracle::Sha256(message);
    ASSERT_TRUE(std::equal(digest.begin(), digest.end(), expected.begin()));

    const Digest mac = HmacSha256(key, message);
    const auto expected_mac = oracle::HmacSha256(key, message);
    ASSERT_TRUE(std::equal(mac.begin(), mac.end(), expected_mac.begin()));
    ASSERT_EQ(KeyedHash64(key, message), oracle::First8(expected_mac));
    ASSERT_EQ(ToHex(mac), oracle::Hex(expected_mac));
  }
}

TEST(ToHexTest, LowercaseTwoDigitsPerByte) {
  const std::vector<std::uint8_t> bytes = {0x00, 0x0f, 0xa0, 0xff};
  EXPECT_EQ(ToHex(bytes), "000fa0ff");
  EXPECT_EQ(ToHex(std::vector<std::uint8_t>{}), "");
}

TEST(FillRandomTest, ProducesDistinctBuffers) {
  std::array<std::uint8_t, 32> a{}, b{};
  FillRandom(a);
  FillRandom(b);
  EXPECT_NE(a, b);
}

}  // namespace
}  // namespace anonpal
