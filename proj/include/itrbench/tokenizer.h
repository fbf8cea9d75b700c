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

#ifndef ITRBENCH_TOKENIZER_H_
#define ITRBENCH_TOKENIZER_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace itrbench {

enum class PosTag {
  kNoun,
  kAdj,
  kDetArticle,
  kDetQuantifier,
  kVerb,
  kAdv,
  kPron,
  kPrep,
  kConj,
  kNum,
  kPunct,
  kOther,
};

std::string_view PosTagName(PosTag tag);

struct Token {
  std::string surface;
  std::string lower;  // ASCII case-folded surface
  PosTag pos = PosTag::kOther;
  size_t begin = 0;  // byte offsets into the source text
  size_t end = 0;
};

// Splits on ASCII whitespace, then peels leading and trailing runs of ASCII
// punctuation off each chunk into separate kPunct tokens. A chunk made only
// of punctuation becomes one kPunct token. Interior punctuation ("t-shirt",
// "dog's") stays inside the word. Other tokens are left as kOther for the
// tagger.
std::vector<Token> Tokenize(std::string_view text);

// Inverse of Tokenize: text[begin, end) of every token plus the original
// separators between them.
std::string Reconstruct(std::string_view text, const std::vector<Token>& tokens);

std::string AsciiLower(std::string_view s);

inline bool IsWordToken(const Token& token) {
  return token.pos != PosTag::kPunct;
}

}  // namespace itrbench

#endif  // ITRBENCH_TOKENIZER_H_
