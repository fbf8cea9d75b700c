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

#include "itrbench/tokenizer.h"

#include <string>
#include <vector>

namespace itrbench {
namespace {

bool IsSpace(unsigned char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

bool IsPunct(unsigned char c) {
  return c < 0x80 && c > 0x20 && c != 0x7f &&
         !((c >= '0' && c <= '9') || (c >= 'a' && c <= 'z') ||
           (c >= 'A' && c <= 'Z'));
}

Token MakeToken(std::string_view text, size_t begin, size_t end, PosTag pos) {
  Token token;
  token.surface = std::string(text.substr(begin, end - begin));
  token.lower = AsciiLower(token.surface);
  token.pos = pos;
  token.begin = begin;
  token.end = end;
  return token;
}

}  // namespace

std::string_view PosTagName(PosTag tag) {
  switch (tag) {
    case PosTag::kNoun:
      return "NOUN";
    case PosTag::kAdj:
      return "ADJ";
    case PosTag::kDetArticle:
      return "DET_ARTICLE";
    case PosTag::kDetQuantifier:
      return "DET_QUANTIFIER";
    case PosTag::kVerb:
      return "VERB";
    case PosTag::kAdv:
      return "ADV";
    case PosTag::kPron:
      return "PRON";
    case PosTag::kPrep:
      return "PREP";
    case PosTag::kConj:
      return "CONJ";
    case PosTag::kNum:
      return "NUM";
    case PosTag::kPunct:
      return "PUNCT";
    case PosTag::kOther:
      return "OTHER";
  }
  return "OTHER";
}

std::string AsciiLower(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

std::vector<Token> Tokenize(std::string_view text) {
  std::vector<Token> tokens;
  size_t i = 0;
  const size_t n = text.size();
  while (i < n) {
    while (i < n && IsSpace(static_cast<unsigned char>(text[i]))) ++i;
    if (i == n) break;
    size_t chunk_end = i;
    while (chunk_end < n && !IsSpace(static_cast<unsigned char>(text[chunk_end]))) {
      ++chunk_end;
    }
    size_t word_begin = i;
    while (word_begin < chunk_end &&
           IsPunct(static_cast<unsigned char>(text[word_begin]))) {
      ++word_begin;
    }
    if (word_begin == chunk_end) {
      tokens.push_back(MakeToken(text, i, chunk_end, PosTag::kPunct));
      i = chunk_end;
      continue;
    }
    size_t word_end = chunk_end;
    while (word_end > word_begin &&
           IsPunct(static_cast<unsigned char>(text[word_end - 1]))) {
      --word_end;
    }
    if (word_begin > i) {
      tokens.push_back(MakeToken(text, i, word_begin, PosTag::kPunct));
    }
    tokens.push_back(MakeToken(text, word_begin, word_end, PosTag::kOther));
    if (word_end < chunk_end) {
      tokens.push_back(MakeToken(text, word_end, chunk_end, PosTag::kPunct));
    }
    i = chunk_end;
  }
  return tokens;
}

std::string Reconstruct(std::string_view text,
                        const std::vector<Token>& tokens) {
  std::string out;
  size_t cursor = 0;
  for (const Token& token : tokens) {
    out.append(text.substr(cursor, token.begin - cursor));
    out.append(token.surface);
    cursor = token.end;
  }
  out.append(text.substr(cursor));
  return out;
}

}  // namespace itrbench
