//
// Copyright 2026 The itrbench Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#include "itrbench/embedstore.h"

#include <cmath>
#include <cstring>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "test_util.h"

namespace itrbench {
namespace {

EmbeddingMatrix Small() {
  return EmbeddingMatrix({"a", "bb", "c\xc3\xa9"}, 2,
                         {1.0f, 2.0f, -3.5f, 0.25f, 1e-7f, 4.0f}, false);
}

// Recomputes the trailing checksum after a payload edit.
void Reseal(std::string& bytes) {
  uint64_t sum = 0;
  for (size_t i = kEmbdHeaderSize; i + 8 < bytes.size(); ++i) {
    sum += static_cast<unsigned char>(bytes[i]);
  }
  for (int b = 0; b < 8; ++b) {
    bytes[bytes.size() - 8 + b] = static_cast<char>((sum >> (8 * b)) & 0xFF);
  }
}

// Offset of the first value byte.
size_t ValuesOffset(const EmbeddingMatrix& m) {
  size_t offset = kEmbdHeaderSize;
  for (const std::string& id : m.ids()) offset += 2 + id.size();
  return offset;
}

FormatErrorKind ParseFailure(const std::string& bytes) {
  try {
    ParseEmbeddings(bytes);
  } catch (const FormatError& e) {
    EXPECT_EQ(e.code(), ErrorCode::kFormat);
    return e.kind();
  }
  ADD_FAILURE() << "parse unexpectedly succeeded";
  return FormatErrorKind::kBadMagic;
}

TEST(EmbedStoreTest, HeaderLayout) {
  const std::string bytes = SerializeEmbeddings(Small());
  ASSERT_GE(bytes.size(), kEmbdHeaderSize);
  EXPECT_EQ(bytes.substr(0, 4), "EMBD");
  EXPECT_EQ(bytes[4], 1);
  EXPECT_EQ(bytes[8], 1);
  EXPECT_EQ(bytes[9], 0);
  EXPECT_EQ(bytes[12], 3);
  EXPECT_EQ(bytes[20], 2);
  // Header, ids (1+2+3 bytes plus 3 length prefixes), values, checksum.
  EXPECT_EQ(bytes.size(), 24u + 12u + 6u * 4u + 8u);
  EXPECT_EQ(bytes.substr(24, 3), std::string("\x01\x00" "a", 3));
}

TEST(EmbedStoreTest, RoundTripIsBitExact) {
  std::mt19937_64 rng(3);
  for (size_t n : {0u, 1u, 7u, 100u}) {
    std::vector<std::string> ids;
    for (size_t i = 0; i < n; ++i) ids.push_back("id_" + std::to_string(i));
    const EmbeddingMatrix m = testing::RandomEmbeddings(ids, 16, rng);
    const EmbeddingMatrix back = ParseEmbeddings(SerializeEmbeddings(m));
    EXPECT_TRUE(back == m) << n;
    EXPECT_EQ(back.ids(), m.ids());
    EXPECT_EQ(std::memcmp(back.data().data(), m.data().data(),
                          m.data().size() * sizeof(float)),
              0);
  }
  const EmbeddingMatrix normalized = L2Normalize(Small());
  const EmbeddingMatrix back = ParseEmbeddings(SerializeEmbeddings(normalized));
  EXPECT_TRUE(back.normalized());
  EXPECT_TRUE(back == normalized);
}

TEST(EmbedStoreTest, FileRoundTrip) {
  testing::ScratchDir dir;
  WriteEmbeddings(dir / "m.embd", Small());
  EXPECT_TRUE(ReadEmbeddings(dir / "m.embd") == Small());
  try {
    ReadEmbeddings(dir / "missing.embd");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kIo);
  }
  std::string bytes = SerializeEmbeddings(Small());
  bytes[0] = 'X';
  testing::WriteBytes(dir / "bad.embd", bytes);
  try {
    ReadEmbeddings(dir / "bad.embd");
    FAIL();
  } catch (const FormatError& e) {
    EXPECT_EQ(e.kind(), FormatErrorKind::kBadMagic);
    EXPECT_NE(std::string(e.what()).find("bad.embd"), std::string::npos);
  }
}

TEST(EmbedStoreTest, EveryCorruptionClassIsDetected) {
  const EmbeddingMatrix m = Small();
  const std::string good = SerializeEmbeddings(m);
  const size_t values = ValuesOffset(m);
  auto mutated = [&](size_t offset, char value) {
    std::string b = good;
    b[offset] = value;
    return b;
  };
  EXPECT_EQ(ParseFailure(mutated(1, 'N')), FormatErrorKind::kBadMagic);
  EXPECT_EQ(ParseFailure(mutated(4, 2)), FormatErrorKind::kUnsupportedVersion);
  EXPECT_EQ(ParseFailure(mutated(8, 2)), FormatErrorKind::kUnsupportedDtype);
  EXPECT_EQ(ParseFailure(mutated(10, 1)), FormatErrorKind::kBadReserved);
  EXPECT_EQ(ParseFailure(mutated(9, 2)), FormatErrorKind::kBadNormalizedFlag);
  EXPECT_EQ(ParseFailure(good.substr(0, 10)), FormatErrorKind::kTruncated);
  EXPECT_EQ(ParseFailure(good.substr(0, good.size() - 1)),
            FormatErrorKind::kTruncated);
  EXPECT_EQ(ParseFailure(good + "x"), FormatErrorKind::kTrailingBytes);
  EXPECT_EQ(ParseFailure(mutated(values + 1, good[values + 1] ^ 0x10)),
            FormatErrorKind::kChecksumMismatch);
  // Row count larger than the payload.
  EXPECT_EQ(ParseFailure(mutated(12, 9)), FormatErrorKind::kTruncated);

  std::string nan = good;
  const float q = std::numeric_limits<float>::quiet_NaN();
  std::memcpy(&nan[values], &q, 4);
  Reseal(nan);
  EXPECT_EQ(ParseFailure(nan), FormatErrorKind::kNonFinite);

  std::string inf = good;
  const float i = std::numeric_limits<float>::infinity();
  std::memcpy(&inf[values + 4], &i, 4);
  Reseal(inf);
  EXPECT_EQ(ParseFailure(inf), FormatErrorKind::kNonFinite);

  std::string dup = SerializeEmbeddings(
      EmbeddingMatrix({"a", "b"}, 1, {1.0f, 2.0f}, false));
  dup[24 + 3 + 2] = 'a';
  Reseal(dup);
  EXPECT_EQ(ParseFailure(dup), FormatErrorKind::kDuplicateId);

  std::string empty_id = SerializeEmbeddings(
      EmbeddingMatrix({"a"}, 1, {1.0f}, false));
  // Zero-length id: drop the id byte and the length.
  empty_id = empty_id.substr(0, 24) + std::string("\x00\x00", 2) +
             empty_id.substr(27);
  Reseal(empty_id);
  EXPECT_EQ(ParseFailure(empty_id), FormatErrorKind::kBadId);

  std::string bad_utf8 = SerializeEmbeddings(
      EmbeddingMatrix({"a"}, 1, {1.0f}, false));
  bad_utf8[26] = '\xff';
  Reseal(bad_utf8);
  EXPECT_EQ(ParseFailure(bad_utf8), FormatErrorKind::kBadId);

  std::string zero_dim = mutated(20, 0);
  EXPECT_EQ(ParseFailure(zero_dim), FormatErrorKind::kZeroDim);

  // Normalized flag set on rows that are not unit length.
  std::string not_unit = mutated(9, 1);
  EXPECT_EQ(ParseFailure(not_unit), FormatErrorKind::kNotNormalized);
}

TEST(EmbedStoreTest, FormatErrorNamesItsKind) {
  EXPECT_EQ(FormatErrorKindName(FormatErrorKind::kChecksumMismatch),
            "checksum mismatch");
  const FormatError e(FormatErrorKind::kTruncated, "short");
  EXPECT_STREQ(e.what(), "truncated payload: short");
}

TEST(EmbedStoreTest, ConstructorValidates) {
  auto expect_invalid = [](auto&& fn) {
    try {
      fn();
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kInvalid);
    }
  };
  expect_invalid([] { EmbeddingMatrix({"a"}, 2, {1.0f}, false); });
  expect_invalid([] { EmbeddingMatrix({"a", "a"}, 1, {1.0f, 2.0f}, false); });
  expect_invalid([] { EmbeddingMatrix({"a"}, 0, {}, false); });
  expect_invalid([] {
    EmbeddingMatrix({"a"}, 1, {std::numeric_limits<float>::infinity()}, false);
  });
  const EmbeddingMatrix m = Small();
  EXPECT_EQ(m.RowOf("bb"), 1u);
  EXPECT_TRUE(m.Contains("c\xc3\xa9"));
  try {
    m.RowOf("zz");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kLookup);
  }
}

TEST(EmbedStoreTest, L2Normalize) {
  const EmbeddingMatrix m({"x"}, 2, {3.0f, 4.0f}, false);
  const EmbeddingMatrix n = L2Normalize(m);
  EXPECT_TRUE(n.normalized());
  EXPECT_FLOAT_EQ(n.data()[0], 0.6f);
  EXPECT_FLOAT_EQ(n.data()[1], 0.8f);

  std::mt19937_64 rng(8);
  std::vector<std::string> ids;
  for (int i = 0; i < 200; ++i) ids.push_back(std::to_string(i));
  const EmbeddingMatrix once = L2Normalize(testing::RandomEmbeddings(ids, 64, rng));
  EXPECT_LE(MaxNormDeviation(once), 1e-6);
  const EmbeddingMatrix twice = L2Normalize(once);
  for (size_t i = 0; i < once.data().size(); ++i) {
    ASSERT_NEAR(once.data()[i], twice.data()[i], 1e-7);
  }
}

TEST(EmbedStoreTest, ZeroRowCannotBeNormalized) {
  const EmbeddingMatrix m({"ok", "zero"}, 2, {1.0f, 0.0f, 0.0f, 0.0f}, false);
  try {
    L2Normalize(m);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalid);
    EXPECT_NE(std::string(e.what()).find("zero"), std::string::npos);
  }
}

TEST(EmbedStoreTest, WriteRefusesUnencodableIds) {
  for (const std::string& id :
       {std::string(), std::string(70000, 'x'), std::string("\xc3")}) {
    try {
      SerializeEmbeddings(EmbeddingMatrix({id}, 1, {1.0f}, false));
      FAIL() << id.size();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kInvalid);
    }
  }
}

TEST(EmbedStoreTest, WriteRefusesFalseNormalizedFlag) {
  const EmbeddingMatrix m({"x"}, 2, {3.0f, 4.0f}, true);
  try {
    SerializeEmbeddings(m);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalid);
  }
}

}  // namespace
}  // namespace itrbench
