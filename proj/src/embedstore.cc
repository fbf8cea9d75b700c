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

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "itrbench/error.h"

namespace itrbench {
namespace {

constexpr double kUnitTolerance = 1e-5;
constexpr double kZeroNorm = 1e-12;

static_assert(std::endian::native == std::endian::little,
              "EMBD I/O assumes a little-endian host");

template <typename T>
void PutLe(std::string& out, T value) {
  for (size_t i = 0; i < sizeof(T); ++i) {
    out.push_back(static_cast<char>(
        static_cast<uint8_t>(static_cast<uint64_t>(value) >> (8 * i))));
  }
}

template <typename T>
T GetLe(std::string_view bytes, size_t at) {
  uint64_t value = 0;
  for (size_t i = 0; i < sizeof(T); ++i) {
    value |= static_cast<uint64_t>(static_cast<uint8_t>(bytes[at + i]))
             << (8 * i);
  }
  return static_cast<T>(value);
}

uint64_t ByteSum(std::string_view bytes) {
  uint64_t sum = 0;
  for (char c : bytes) sum += static_cast<uint8_t>(c);
  return sum;
}

// Well-formed UTF-8: no overlong forms, surrogates or values past U+10FFFF.
bool IsValidUtf8(std::string_view s) {
  size_t i = 0;
  while (i < s.size()) {
    const auto c = static_cast<uint8_t>(s[i]);
    size_t extra = 0;
    uint32_t cp = 0;
    if (c < 0x80) {
      ++i;
      continue;
    } else if ((c & 0xE0) == 0xC0) {
      extra = 1;
      cp = c & 0x1F;
    } else if ((c & 0xF0) == 0xE0) {
      extra = 2;
      cp = c & 0x0F;
    } else if ((c & 0xF8) == 0xF0) {
      extra = 3;
      cp = c & 0x07;
    } else {
      return false;
    }
    if (i + extra >= s.size()) return false;
    for (size_t k = 1; k <= extra; ++k) {
      const auto b = static_cast<uint8_t>(s[i + k]);
      if ((b & 0xC0) != 0x80) return false;
      cp = (cp << 6) | (b & 0x3F);
    }
    static constexpr uint32_t kMin[] = {0, 0x80, 0x800, 0x10000};
    if (cp < kMin[extra] || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
      return false;
    }
    i += extra + 1;
  }
  return true;
}

void CheckId(std::string_view id) {
  if (id.empty()) throw FormatError(FormatErrorKind::kBadId, "empty id");
  if (!IsValidUtf8(id)) {
    throw FormatError(FormatErrorKind::kBadId, "id is not valid UTF-8");
  }
}

double RowNorm(std::span<const float> row) {
  double sum = 0;
  for (float v : row) sum += static_cast<double>(v) * v;
  return std::sqrt(sum);
}

}  // namespace

std::string_view FormatErrorKindName(FormatErrorKind kind) {
  switch (kind) {
    case FormatErrorKind::kBadMagic:
      return "bad magic";
    case FormatErrorKind::kUnsupportedVersion:
      return "unsupported version";
    case FormatErrorKind::kUnsupportedDtype:
      return "unsupported dtype";
    case FormatErrorKind::kBadReserved:
      return "nonzero reserved field";
    case FormatErrorKind::kBadNormalizedFlag:
      return "bad normalized flag";
    case FormatErrorKind::kTruncated:
      return "truncated payload";
    case FormatErrorKind::kTrailingBytes:
      return "trailing bytes";
    case FormatErrorKind::kChecksumMismatch:
      return "checksum mismatch";
    case FormatErrorKind::kNonFinite:
      return "non-finite value";
    case FormatErrorKind::kDuplicateId:
      return "duplicate id";
    case FormatErrorKind::kZeroDim:
      return "zero dimension";
    case FormatErrorKind::kNotNormalized:
      return "rows not unit length";
    case FormatErrorKind::kBadId:
      return "bad id";
  }
  return "unknown";
}

EmbeddingMatrix::EmbeddingMatrix(std::vector<std::string> ids, uint32_t dim,
                                 std::vector<float> data, bool normalized)
    : ids_(std::move(ids)),
      dim_(dim),
      data_(std::move(data)),
      normalized_(normalized) {
  if (dim_ == 0 && !ids_.empty()) {
    throw Error(ErrorCode::kInvalid, "embedding dimension must be positive");
  }
  if (data_.size() != ids_.size() * static_cast<size_t>(dim_)) {
    throw Error(ErrorCode::kInvalid,
                "embedding payload has " + std::to_string(data_.size()) +
                    " values, expected " + std::to_string(ids_.size()) + " x " +
                    std::to_string(dim_));
  }
  row_of_.reserve(ids_.size());
  for (size_t i = 0; i < ids_.size(); ++i) {
    if (ids_[i].size() > 0xffff) {
      throw Error(ErrorCode::kInvalid, "embedding id longer than 65535 bytes");
    }
    if (!row_of_.emplace(ids_[i], i).second) {
      throw Error(ErrorCode::kInvalid, "duplicate embedding id '" + ids_[i] + "'");
    }
  }
  for (size_t i = 0; i < data_.size(); ++i) {
    if (!std::isfinite(data_[i])) {
      throw Error(ErrorCode::kInvalid,
                  "non-finite value in row '" + ids_[i / dim_] + "'");
    }
  }
}

bool EmbeddingMatrix::Contains(std::string_view id) const {
  return row_of_.contains(std::string(id));
}

size_t EmbeddingMatrix::RowOf(std::string_view id) const {
  auto it = row_of_.find(std::string(id));
  if (it == row_of_.end()) {
    throw Error(ErrorCode::kLookup,
                "no embedding for id '" + std::string(id) + "'");
  }
  return it->second;
}

bool EmbeddingMatrix::operator==(const EmbeddingMatrix& other) const {
  if (ids_ != other.ids_ || dim_ != other.dim_ ||
      normalized_ != other.normalized_ || data_.size() != other.data_.size()) {
    return false;
  }
  // Bitwise, so -0.0 and 0.0 differ.
  return data_.empty() ||
         std::memcmp(data_.data(), other.data_.data(),
                     data_.size() * sizeof(float)) == 0;
}

double MaxNormDeviation(const EmbeddingMatrix& matrix) {
  double worst = 0;
  for (size_t i = 0; i < matrix.rows(); ++i) {
    worst = std::max(worst, std::abs(RowNorm(matrix.row(i)) - 1.0));
  }
  return worst;
}

std::string SerializeEmbeddings(const EmbeddingMatrix& matrix) {
  if (matrix.normalized() && MaxNormDeviation(matrix) > kUnitTolerance) {
    throw Error(ErrorCode::kInvalid,
                "matrix is flagged normalized but has non-unit rows");
  }
  std::string out = "EMBD";
  PutLe<uint32_t>(out, kEmbdVersion);
  PutLe<uint8_t>(out, kEmbdDtypeF32);
  PutLe<uint8_t>(out, matrix.normalized() ? 1 : 0);
  PutLe<uint16_t>(out, 0);
  PutLe<uint64_t>(out, matrix.rows());
  PutLe<uint32_t>(out, matrix.dim());
  for (const std::string& id : matrix.ids()) {
    if (id.empty() || id.size() > UINT16_MAX || !IsValidUtf8(id)) {
      throw Error(ErrorCode::kInvalid,
                  "id must be 1 to 65535 bytes of UTF-8: '" + id + "'");
    }
    PutLe<uint16_t>(out, static_cast<uint16_t>(id.size()));
    out.append(id);
  }
  const size_t values_at = out.size();
  out.resize(values_at + matrix.data().size() * sizeof(float));
  if (!matrix.data().empty()) {
    std::memcpy(out.data() + values_at, matrix.data().data(),
                matrix.data().size() * sizeof(float));
  }
  const uint64_t checksum =
      ByteSum(std::string_view(out).substr(kEmbdHeaderSize));
  PutLe<uint64_t>(out, checksum);
  return out;
}

EmbeddingMatrix ParseEmbeddings(std::string_view bytes) {
  auto need = [&](size_t at, size_t count, const char* what) {
    if (at > bytes.size() || bytes.size() - at < count) {
      throw FormatError(FormatErrorKind::kTruncated,
                        std::string("file ends inside ") + what);
    }
  };
  need(0, 4, "the magic");
  if (bytes.substr(0, 4) != "EMBD") {
    throw FormatError(FormatErrorKind::kBadMagic, "expected \"EMBD\"");
  }
  need(0, kEmbdHeaderSize, "the header");
  const auto version = GetLe<uint32_t>(bytes, 4);
  if (version != kEmbdVersion) {
    throw FormatError(FormatErrorKind::kUnsupportedVersion,
                      "version " + std::to_string(version));
  }
  const auto dtype = GetLe<uint8_t>(bytes, 8);
  if (dtype != kEmbdDtypeF32) {
    throw FormatError(FormatErrorKind::kUnsupportedDtype,
                      "dtype " + std::to_string(dtype));
  }
  const auto normalized = GetLe<uint8_t>(bytes, 9);
  if (normalized > 1) {
    throw FormatError(FormatErrorKind::kBadNormalizedFlag,
                      "flag " + std::to_string(normalized));
  }
  if (GetLe<uint16_t>(bytes, 10) != 0) {
    throw FormatError(FormatErrorKind::kBadReserved, "reserved field is set");
  }
  const auto n = GetLe<uint64_t>(bytes, 12);
  const auto dim = GetLe<uint32_t>(bytes, 20);
  if (dim == 0 && n > 0) {
    throw FormatError(FormatErrorKind::kZeroDim, "dim is 0 with rows present");
  }
  // Each row needs at least its 2-byte length prefix.
  if (n > (bytes.size() - kEmbdHeaderSize) / 2) {
    throw FormatError(FormatErrorKind::kTruncated,
                      "header declares " + std::to_string(n) +
                          " rows, more than the file can hold");
  }

  size_t at = kEmbdHeaderSize;
  std::vector<std::string> ids;
  ids.reserve(n);
  for (uint64_t i = 0; i < n; ++i) {
    need(at, 2, "an id record");
    const auto length = GetLe<uint16_t>(bytes, at);
    at += 2;
    need(at, length, "an id record");
    ids.emplace_back(bytes.substr(at, length));
    at += length;
  }
  const size_t count = static_cast<size_t>(n) * dim;
  if (dim != 0 && count / dim != n) {
    throw FormatError(FormatErrorKind::kTruncated, "row count overflows");
  }
  need(at, count * sizeof(float), "the value block");
  std::vector<float> data(count);
  if (count > 0) std::memcpy(data.data(), bytes.data() + at, count * sizeof(float));
  const size_t payload_end = at + count * sizeof(float);
  need(payload_end, 8, "the checksum");
  if (bytes.size() > payload_end + 8) {
    throw FormatError(FormatErrorKind::kTrailingBytes,
                      std::to_string(bytes.size() - payload_end - 8) +
                          " bytes after the checksum");
  }
  const uint64_t stored = GetLe<uint64_t>(bytes, payload_end);
  const uint64_t computed = ByteSum(
      bytes.substr(kEmbdHeaderSize, payload_end - kEmbdHeaderSize));
  if (stored != computed) {
    throw FormatError(FormatErrorKind::kChecksumMismatch,
                      "stored " + std::to_string(stored) + ", computed " +
                          std::to_string(computed));
  }

  for (const std::string& id : ids) CheckId(id);
  for (size_t i = 0; i < count; ++i) {
    if (!std::isfinite(data[i])) {
      throw FormatError(FormatErrorKind::kNonFinite,
                        "row '" + ids[i / dim] + "' column " +
                            std::to_string(i % dim));
    }
  }
  {
    std::unordered_map<std::string_view, size_t> seen;
    for (const std::string& id : ids) {
      if (!seen.emplace(id, 0).second) {
        throw FormatError(FormatErrorKind::kDuplicateId, "'" + id + "'");
      }
    }
  }
  EmbeddingMatrix matrix(std::move(ids), dim, std::move(data), normalized == 1);
  if (matrix.normalized() && MaxNormDeviation(matrix) > kUnitTolerance) {
    throw FormatError(FormatErrorKind::kNotNormalized,
                      "header sets the normalized flag");
  }
  return matrix;
}

void WriteEmbeddings(const std::string& path, const EmbeddingMatrix& matrix) {
  const std::string bytes = SerializeEmbeddings(matrix);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot open '" + path + "' for writing");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  out.close();
  if (!out) throw Error(ErrorCode::kIo, "write to '" + path + "' failed");
}

EmbeddingMatrix ReadEmbeddings(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open embedding file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  try {
    return ParseEmbeddings(buffer.str());
  } catch (const FormatError& e) {
    throw FormatError(e.kind(), path + ": " +
                                    std::string(e.what()).substr(
                                        FormatErrorKindName(e.kind()).size() + 2));
  }
}

EmbeddingMatrix L2Normalize(const EmbeddingMatrix& matrix) {
  std::vector<float> data(matrix.data().size());
  const uint32_t d = matrix.dim();
  for (size_t i = 0; i < matrix.rows(); ++i) {
    std::span<const float> row = matrix.row(i);
    const double norm = RowNorm(row);
    if (norm < kZeroNorm) {
      throw Error(ErrorCode::kInvalid,
                  "cannot normalize zero row '" + matrix.ids()[i] + "'");
    }
    for (uint32_t j = 0; j < d; ++j) {
      data[i * d + j] = static_cast<float>(row[j] / norm);
    }
  }
  return EmbeddingMatrix(matrix.ids(), d, std::move(data), true);
}

}  // namespace itrbench
