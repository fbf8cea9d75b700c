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

#include "itrbench/seeding.h"

#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "itrbench/error.h"

namespace itrbench {

uint64_t DeriveSeed(uint64_t master_seed, std::string_view caption_id,
                    std::string_view kind_tag) {
  Fnv1a64 hash;
  hash.UpdateU64(master_seed);
  hash.Update(caption_id);
  const uint8_t separator = 0;
  hash.Update(std::span<const uint8_t>(&separator, 1));
  hash.Update(kind_tag);
  return SplitMix64(hash.digest()).Next();
}

std::string FileDigest(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open '" + path + "'");
  Fnv1a64 hash;
  std::vector<char> buffer(1 << 16);
  while (in) {
    in.read(buffer.data(), static_cast<std::streamsize>(buffer.size()));
    const auto got = static_cast<size_t>(in.gcount());
    hash.Update(std::span<const uint8_t>(
        reinterpret_cast<const uint8_t*>(buffer.data()), got));
  }
  char hex[17];
  std::snprintf(hex, sizeof(hex), "%016llx",
                static_cast<unsigned long long>(hash.digest()));
  return hex;
}

}  // namespace itrbench
