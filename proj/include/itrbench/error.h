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

#ifndef ITRBENCH_ERROR_H_
#define ITRBENCH_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace itrbench {

// Error classes. Each maps onto one process exit code in the CLI.
enum class ErrorCode {
  kUsage,      // bad flags, unknown split selector, bad config values
  kParse,      // malformed annotation / WordNet / config text
  kIo,         // missing or unreadable files
  kCoverage,   // embeddings do not cover the corpus
  kFormat,     // EMBD binary format violations
  kIntegrity,  // dangling WordNet pointers, hypernym cycles
  kLookup,     // unknown caption / image id
  kMismatch,   // reports that cannot be compared
  kInvalid,    // invariant violation on an in-memory value
};

std::string_view ErrorCodeName(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace itrbench

#endif  // ITRBENCH_ERROR_H_
