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

// Id-addressed embedding matrices and the EMBD binary container.
//
// EMBD layout, all integers little-endian:
//   0   "EMBD"
//   4   u32 version = 1
//   8   u8  dtype = 1 (f32)
//   9   u8  normalized (0 or 1)
//   10  u16 reserved = 0
//   12  u64 row count n
//   20  u32 dim d
//   24  n id records: u16 byte length, UTF-8 bytes
//       n * d f32 values, row-major
//       u64 checksum: sum of the id and value bytes, mod 2^64

#ifndef ITRBENCH_EMBEDSTORE_H_
#define ITRBENCH_EMBEDSTORE_H_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "itrbench/error.h"

namespace itrbench {

inline constexpr uint32_t kEmbdVersion = 1;
inline constexpr uint8_t kEmbdDtypeF32 = 1;
inline constexpr size_t kEmbdHeaderSize = 24;

// Distinct failure classes of ReadEmbeddings / ParseEmbeddings. All of them
// surface as Error(kFormat); the kind is also available for tests.
enum class FormatErrorKind {
  kBadMagic,
  kUnsupportedVersion,
  kUnsupportedDtype,
  kBadReserved,
  kBadNormalizedFlag,
  kTruncated,
  kTrailingBytes,
  kChecksumMismatch,
  kNonFinite,
  kDuplicateId,
  kZeroDim,
  kNotNormalized,
  kBadId,
};

std::string_view FormatErrorKindName(FormatErrorKind kind);

class FormatError : public Error {
 public:
  FormatError(FormatErrorKind kind, const std::string& message)
      : Error(ErrorCode::kFormat,
              std::string(FormatErrorKindName(kind)) + ": " + message),
        kind_(kind) {}

  FormatErrorKind kind() const { return kind_; }

 private:
  FormatErrorKind kind_;
};

class EmbeddingMatrix {
 public:
  EmbeddingMatrix() = default;
  // Throws kInvalid on a row/id count mismatch, duplicate ids, dim 0 with
  // rows present, or non-finite values.
  EmbeddingMatrix(std::vector<std::string> ids, uint32_t dim,
                  std::vector<float> data, bool normalized);

  const std::vector<std::string>& ids() const { return ids_; }
  uint32_t dim() const { return dim_; }
  size_t rows() const { return ids_.size(); }
  const std::vector<float>& data() const { return data_; }
  bool normalized() const { return normalized_; }

  std::span<const float> row(size_t i) const {
    return std::span<const float>(data_).subspan(i * dim_, dim_);
  }
  bool Contains(std::string_view id) const;
  // Row index of `id`; throws kLookup.
  size_t RowOf(std::string_view id) const;

  bool operator==(const EmbeddingMatrix& other) const;

 private:
  std::vector<std::string> ids_;
  uint32_t dim_ = 0;
  std::vector<float> data_;
  bool normalized_ = false;
  std::unordered_map<std::string, size_t> row_of_;
};

// Serialization. Writing refuses matrices whose normalized flag is set but
// whose rows are not unit length (kInvalid).
std::string SerializeEmbeddings(const EmbeddingMatrix& matrix);
EmbeddingMatrix ParseEmbeddings(std::string_view bytes);

void WriteEmbeddings(const std::string& path, const EmbeddingMatrix& matrix);
EmbeddingMatrix ReadEmbeddings(const std::string& path);

// Scales every row to unit L2 norm. Throws kInvalid naming the first row
// whose norm is below 1e-12.
EmbeddingMatrix L2Normalize(const EmbeddingMatrix& matrix);

// Largest |norm - 1| over rows.
double MaxNormDeviation(const EmbeddingMatrix& matrix);

}  // namespace itrbench

#endif  // ITRBENCH_EMBEDSTORE_H_
