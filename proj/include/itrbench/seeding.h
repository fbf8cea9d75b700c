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

// Portable hashing and pseudo-random generation.
//
// Everything here is part of the on-disk contract: golden perturbation files
// produced by one build must be reproducible by any other implementation,
// so the algorithms and constants below must never change.
//
//   Fnv1a64      FNV-1a, offset basis 0xcbf29ce484222325, prime 0x100000001b3.
//   SplitMix64   state += 0x9e3779b97f4a7c15;
//                z = (state ^ (state >> 30)) * 0xbf58476d1ce4e5b9;
//                z = (z ^ (z >> 27)) * 0x94d049bb133111eb;
//                return z ^ (z >> 31);
//   DeriveSeed   h = Fnv1a64(le64(master_seed) || caption_id || 0x00 || kind_tag)
//                return SplitMix64 output for state h (one step).
//   Uniform(n)   rejection sampling: draw r until r >= (2^64 - n) mod n,
//                return r mod n.
//   Shuffle      Fisher-Yates, i from n-1 down to 1, j = Uniform(i + 1).
//
// Test vectors live in tests/seeding_test.cc.

#ifndef ITRBENCH_SEEDING_H_
#define ITRBENCH_SEEDING_H_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>

namespace itrbench {

inline constexpr uint64_t kFnvOffsetBasis = 0xcbf29ce484222325ULL;
inline constexpr uint64_t kFnvPrime = 0x100000001b3ULL;

// Incremental FNV-1a 64.
class Fnv1a64 {
 public:
  Fnv1a64() = default;

  void Update(std::span<const uint8_t> bytes) {
    for (uint8_t b : bytes) {
      hash_ ^= b;
      hash_ *= kFnvPrime;
    }
  }
  void Update(std::string_view text) {
    Update(std::span<const uint8_t>(
        reinterpret_cast<const uint8_t*>(text.data()), text.size()));
  }
  void UpdateU64(uint64_t value) {
    uint8_t le[8];
    for (int i = 0; i < 8; ++i) le[i] = static_cast<uint8_t>(value >> (8 * i));
    Update(std::span<const uint8_t>(le, 8));
  }

  uint64_t digest() const { return hash_; }

 private:
  uint64_t hash_ = kFnvOffsetBasis;
};

// Hex-encoded FNV-1a 64 digest of a whole file; used for report provenance.
std::string FileDigest(const std::string& path);

class SplitMix64 {
 public:
  explicit SplitMix64(uint64_t seed) : state_(seed) {}

  uint64_t Next() {
    state_ += 0x9e3779b97f4a7c15ULL;
    uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform integer in [0, n). n must be positive.
  uint64_t Uniform(uint64_t n) {
    const uint64_t threshold = (0 - n) % n;
    for (;;) {
      const uint64_t r = Next();
      if (r >= threshold) return r % n;
    }
  }

  template <typename T>
  void Shuffle(std::span<T> items) {
    for (size_t i = items.size(); i > 1; --i) {
      const size_t j = static_cast<size_t>(Uniform(i));
      using std::swap;
      swap(items[i - 1], items[j]);
    }
  }

 private:
  uint64_t state_;
};

uint64_t DeriveSeed(uint64_t master_seed, std::string_view caption_id,
                    std::string_view kind_tag);

}  // namespace itrbench

#endif  // ITRBENCH_SEEDING_H_
