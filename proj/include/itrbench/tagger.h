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

#ifndef ITRBENCH_TAGGER_H_
#define ITRBENCH_TAGGER_H_

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "itrbench/tokenizer.h"
#include "itrbench/wordnet.h"

namespace itrbench {

class PosTagger {
 public:
  virtual ~PosTagger() = default;

  // Fills Token::pos for every non-punctuation token.
  virtual void Tag(std::span<Token> tokens) const = 0;
};

// Deterministic lexicon tagger:
//  1. closed-class lexicons (articles, quantifiers and cardinal numbers,
//     prepositions, pronouns, conjunctions, auxiliaries, a few adverbs);
//  2. open-class lookup in WordNet. A word listed under several classes takes
//     the class with the highest concordance tag frequency; ties, and
//     databases without cntlist.rev, fall back to NOUN > ADJ > VERB > ADV;
//  3. suffix rules for unknown words: -ly ADV, -ing/-ed VERB, else NOUN.
class LexiconTagger : public PosTagger {
 public:
  // `db` may be null, in which case step 2 is skipped.
  explicit LexiconTagger(const WordNetDb* db) : db_(db) {}

  void Tag(std::span<Token> tokens) const override;

  PosTag TagWord(std::string_view lower) const;

 private:
  const WordNetDb* db_;
};

// Tokenize + Tag.
std::vector<Token> TokenizeAndTag(std::string_view text,
                                  const PosTagger& tagger);

// Maps an open-class tag onto its WordNet class.
std::optional<PosClass> WordNetClass(PosTag tag);

}  // namespace itrbench

#endif  // ITRBENCH_TAGGER_H_
