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

// Seeded caption perturbations: word-order shuffles, distraction clauses,
// lexical replacement and keyboard typos.
//
// Every caption gets its own generator seeded with
// DeriveSeed(master_seed, caption_id, KindTag(kind)), so the output for a
// caption never depends on which other captions were processed, in what
// order, or on how many threads. Draw order per kind:
//
//   shuffles      one Fisher-Yates pass per permuted group, groups left to
//                 right (ShuffleTrigrams: one pass over the group list)
//   Distraction   one Uniform(pool size) draw
//   lexical       [LexicalVariation: Uniform(2) picks ReplaceSynonyms or
//                 ReplaceNouns]; Fisher-Yates over the eligible token
//                 indices, keep the first min(k, eligible); then, in
//                 ascending token order, Uniform(#synonyms) per chosen token
//   typos         [Typos: Uniform(4) picks Transposition, Omission,
//                 Insertion or KeyProximity]; Fisher-Yates over eligible
//                 words, keep the first m; then, per chosen word in
//                 ascending order:
//                   Transposition  Uniform(#positions i with w[i] != w[i+1]),
//                                  swap w[i], w[i+1]
//                   Omission       Uniform(len), delete
//                   Insertion      Uniform(len) anchor, Uniform(#neighbours)
//                                  key, Uniform(2) side (0 before, 1 after)
//                   KeyProximity   Uniform(len), Uniform(#neighbours)

#ifndef ITRBENCH_PERTURB_H_
#define ITRBENCH_PERTURB_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "itrbench/corpus.h"
#include "itrbench/keyboard.h"
#include "itrbench/seeding.h"
#include "itrbench/tagger.h"
#include "itrbench/tokenizer.h"
#include "itrbench/wordnet.h"
#include "json.hpp"

namespace itrbench {

enum class PerturbationKind {
  kShuffleNounsAdjectives,
  kShuffleAllButNounsAdjectives,
  kShuffleWithinTrigrams,
  kShuffleTrigrams,
  kShuffleAllWords,
  kDistraction,
  kReplaceSynonyms,
  kReplaceNouns,
  kTypoTransposition,
  kTypoOmission,
  kTypoInsertion,
  kTypoKeyProximity,
  // Presets: one atomic kind drawn per caption.
  kTypos,
  kLexicalVariation,
};

inline constexpr PerturbationKind kAllPerturbationKinds[] = {
    PerturbationKind::kShuffleNounsAdjectives,
    PerturbationKind::kShuffleAllButNounsAdjectives,
    PerturbationKind::kShuffleWithinTrigrams,
    PerturbationKind::kShuffleTrigrams,
    PerturbationKind::kShuffleAllWords,
    PerturbationKind::kDistraction,
    PerturbationKind::kReplaceSynonyms,
    PerturbationKind::kReplaceNouns,
    PerturbationKind::kTypoTransposition,
    PerturbationKind::kTypoOmission,
    PerturbationKind::kTypoInsertion,
    PerturbationKind::kTypoKeyProximity,
    PerturbationKind::kTypos,
    PerturbationKind::kLexicalVariation,
};

std::string_view KindName(PerturbationKind kind);   // "ShuffleAllWords"
std::string_view KindTag(PerturbationKind kind);    // "shuffle_all_words"
std::string_view KindLabel(PerturbationKind kind);  // "Shuffle all words"
// Accepts KindName or KindTag spellings; throws kUsage.
PerturbationKind ParseKind(std::string_view text);

bool IsShuffle(PerturbationKind kind);
bool IsLexical(PerturbationKind kind);  // includes kLexicalVariation
bool IsTypo(PerturbationKind kind);     // includes kTypos

inline const std::vector<std::string>& DefaultDistractionPool() {
  static const std::vector<std::string> pool = {"and true is true",
                                                "and one plus one is two"};
  return pool;
}

struct PerturbationSpec {
  PerturbationKind kind = PerturbationKind::kShuffleAllWords;
  int k = 1;                   // lexical replacements per caption
  std::optional<double> rate;  // typo words per caption; unset = one word
  uint64_t seed = 0;
  std::vector<std::string> distraction_pool = DefaultDistractionPool();

  // Throws kUsage on k < 1, rate outside (0, 1] or an empty pool.
  void Validate() const;
};

// One replaced token.
struct Edit {
  size_t token_index = 0;
  std::string before;
  std::string after;
};

struct PerturbedCaption {
  std::string caption_id;
  PerturbationKind kind = PerturbationKind::kShuffleAllWords;
  // Atomic kind actually applied; differs from `kind` only for presets.
  PerturbationKind applied_kind = PerturbationKind::kShuffleAllWords;
  std::string text;
  bool changed = false;
  std::vector<Edit> edits;  // lexical and typo kinds only
};

// Rebuilds `text` with each token's span replaced by `surfaces[i]`,
// keeping every separator between tokens byte-for-byte.
std::string RebuildText(std::string_view text, std::span<const Token> tokens,
                        std::span<const std::string> surfaces);

// Word-order shuffles over tagged tokens. Punctuation never moves.
std::string ShuffleCaption(std::string_view text, std::span<const Token> tokens,
                           PerturbationKind kind, SplitMix64& rng);

std::string Distract(std::string_view text,
                     std::span<const std::string> pool, SplitMix64& rng);

// Typo helpers over a single ASCII word.
std::vector<size_t> TranspositionPositions(std::string_view word);
std::string Transpose(std::string_view word, size_t position);
// Every distinct output reachable by one transposition.
std::vector<std::string> AllTranspositions(std::string_view word);
std::string ApplyTypo(std::string_view word, PerturbationKind kind,
                      SplitMix64& rng,
                      const KeyboardLayout& keyboard = KeyboardLayout::Qwerty());

// A word is typo-eligible when it is all ASCII letters and at least 3 long.
bool IsTypoEligible(const Token& token);

// Token indices eligible for a lexical kind (ReplaceNouns or
// ReplaceSynonyms).
std::vector<size_t> LexicalCandidates(std::span<const Token> tokens,
                                      PerturbationKind kind,
                                      const WordNetDb& db);

class Perturber {
 public:
  // `db` may be null except for lexical kinds (kUsage); it also feeds the
  // tagger used by the noun/adjective shuffles.
  Perturber(PerturbationSpec spec, const WordNetDb* db);

  const PerturbationSpec& spec() const { return spec_; }

  PerturbedCaption Apply(std::string_view caption_id,
                         std::string_view text) const;
  PerturbedCaption Apply(const Caption& caption) const {
    return Apply(caption.caption_id, caption.text);
  }

 private:
  PerturbedCaption ApplyLexical(PerturbedCaption result, std::string_view text,
                                std::vector<Token> tokens,
                                PerturbationKind kind, SplitMix64& rng) const;
  PerturbedCaption ApplyTypos(PerturbedCaption result, std::string_view text,
                              std::vector<Token> tokens, PerturbationKind kind,
                              SplitMix64& rng) const;

  PerturbationSpec spec_;
  const WordNetDb* db_;
  LexiconTagger tagger_;
};

struct PerturbedCorpus {
  Corpus corpus;
  std::vector<PerturbedCaption> captions;  // corpus caption order
  size_t changed_count = 0;
};

// Applies the spec to every caption. `order` (optional) is a permutation of
// caption indices giving the processing order; results are identical for
// every order and thread count.
PerturbedCorpus PerturbCorpus(const Corpus& corpus, const Perturber& perturber,
                              int threads = 1,
                              std::span<const size_t> order = {});

// Sidecar manifest: kind, seed, k, rate, pool, caption and change counts.
nlohmann::json PerturbationManifest(const PerturbedCorpus& perturbed,
                                    const PerturbationSpec& spec);

// Annotation document for the perturbed corpus, carrying a "perturbation"
// block so downstream tools can tell it apart from clean annotations.
nlohmann::json PerturbedAnnotations(const PerturbedCorpus& perturbed,
                                    const PerturbationSpec& spec);

}  // namespace itrbench

#endif  // ITRBENCH_PERTURB_H_
