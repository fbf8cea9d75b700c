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

#include "itrbench/tagger.h"

#include <optional>
#include <string_view>
#include <unordered_map>

namespace itrbench {
namespace {

const std::unordered_map<std::string_view, PosTag>& ClosedClassLexicon() {
  static const auto* lexicon = [] {
    auto* m = new std::unordered_map<std::string_view, PosTag>;
    // Insertion order sets precedence: the first class listed wins.
    auto add = [m](PosTag tag, std::initializer_list<std::string_view> words) {
      for (std::string_view w : words) m->emplace(w, tag);
    };
    add(PosTag::kDetArticle, {"a", "an", "the"});
    add(PosTag::kDetQuantifier,
        {"some",     "many",     "few",     "several",  "all",      "both",
         "each",     "every",    "most",    "no",       "any",      "one",
         "two",      "three",    "four",    "five",     "six",      "seven",
         "eight",    "nine",     "ten",     "eleven",   "twelve",   "thirteen",
         "fourteen", "fifteen",  "sixteen", "seventeen", "eighteen", "nineteen",
         "twenty",   "thirty",   "forty",   "fifty",    "sixty",    "seventy",
         "eighty",   "ninety",   "hundred", "thousand", "dozen"});
    add(PosTag::kPrep,
        {"aboard",  "about",   "above",   "across",     "after",   "against",
         "along",   "alongside", "amid",  "among",      "around",  "as",
         "at",      "atop",    "before",  "behind",     "below",   "beneath",
         "beside",  "besides", "between", "beyond",     "by",      "despite",
         "down",    "during",  "except",  "for",        "from",    "in",
         "inside",  "into",    "like",    "near",       "of",      "off",
         "on",      "onto",    "opposite", "out",       "outside", "over",
         "past",    "per",     "than",    "through",    "throughout", "to",
         "toward",  "towards", "under",   "underneath", "unlike",  "until",
         "up",      "upon",    "via",     "with",       "within",  "without"});
    add(PosTag::kPron,
        {"i",        "me",       "my",         "mine",      "you",
         "your",     "yours",    "he",         "him",       "his",
         "she",      "her",      "hers",       "it",        "its",
         "we",       "us",       "our",        "ours",      "they",
         "them",     "their",    "theirs",     "this",      "that",
         "these",    "those",    "who",        "whom",      "whose",
         "which",    "what",     "myself",     "yourself",  "himself",
         "herself",  "itself",   "ourselves",  "themselves", "someone",
         "somebody", "something", "anyone",    "anything",  "everyone",
         "everything", "nobody", "nothing",    "another",   "other",
         "others"});
    add(PosTag::kConj,
        {"and", "or", "but", "nor", "yet", "so", "because", "although",
         "though", "while", "whereas", "if", "unless", "since", "whether"});
    add(PosTag::kVerb,
        {"is", "are", "was", "were", "be", "been", "being", "am", "has",
         "have", "had", "having", "do", "does", "did", "can", "could", "will",
         "would", "shall", "should", "may", "might", "must"});
    add(PosTag::kAdv, {"not", "very", "too", "also", "there", "here", "just",
                       "almost", "nearly", "quite", "really"});
    return m;
  }();
  return *lexicon;
}

bool AllDigits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

bool HasDigit(std::string_view s) {
  for (char c : s) {
    if (c >= '0' && c <= '9') return true;
  }
  return false;
}

bool EndsWithLongEnough(std::string_view word, std::string_view suffix) {
  return word.size() > suffix.size() + 1 && word.ends_with(suffix);
}

PosTag FromClass(PosClass pos) {
  switch (pos) {
    case PosClass::kNoun:
      return PosTag::kNoun;
    case PosClass::kAdj:
      return PosTag::kAdj;
    case PosClass::kVerb:
      return PosTag::kVerb;
    case PosClass::kAdv:
      return PosTag::kAdv;
  }
  return PosTag::kNoun;
}

}  // namespace

std::optional<PosClass> WordNetClass(PosTag tag) {
  switch (tag) {
    case PosTag::kNoun:
      return PosClass::kNoun;
    case PosTag::kAdj:
      return PosClass::kAdj;
    case PosTag::kVerb:
      return PosClass::kVerb;
    case PosTag::kAdv:
      return PosClass::kAdv;
    default:
      return std::nullopt;
  }
}

PosTag LexiconTagger::TagWord(std::string_view lower) const {
  const auto& closed = ClosedClassLexicon();
  if (auto it = closed.find(lower); it != closed.end()) return it->second;
  if (AllDigits(lower)) return PosTag::kDetQuantifier;
  if (HasDigit(lower)) return PosTag::kNum;

  if (db_ != nullptr) {
    // Priority order doubles as the tie-break.
    static constexpr PosClass kPriority[] = {PosClass::kNoun, PosClass::kAdj,
                                             PosClass::kVerb, PosClass::kAdv};
    std::optional<PosClass> best;
    uint64_t best_frequency = 0;
    for (PosClass pos : kPriority) {
      if (!db_->has_class(pos) || !db_->Contains(lower, pos)) continue;
      const uint64_t frequency = db_->TagFrequency(lower, pos);
      if (!best || frequency > best_frequency) {
        best = pos;
        best_frequency = frequency;
      }
    }
    if (best) return FromClass(*best);
  }

  if (EndsWithLongEnough(lower, "ly")) return PosTag::kAdv;
  if (EndsWithLongEnough(lower, "ing") || EndsWithLongEnough(lower, "ed")) {
    return PosTag::kVerb;
  }
  return PosTag::kNoun;
}

void LexiconTagger::Tag(std::span<Token> tokens) const {
  for (Token& token : tokens) {
    if (token.pos == PosTag::kPunct) continue;
    token.pos = TagWord(token.lower);
  }
}

std::vector<Token> TokenizeAndTag(std::string_view text,
                                  const PosTagger& tagger) {
  std::vector<Token> tokens = Tokenize(text);
  tagger.Tag(tokens);
  return tokens;
}

}  // namespace itrbench
