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

#ifndef ITRBENCH_GRANULARITY_H_
#define ITRBENCH_GRANULARITY_H_

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "itrbench/corpus.h"
#include "itrbench/tagger.h"
#include "itrbench/wordnet.h"
#include "json.hpp"

namespace itrbench {

// Caption granularity features. For a single caption the fields are raw
// counts; for a corpus they are means over captions.
struct GranularityProfile {
  double adjectives = 0;
  double complement_phrases = 0;
  double articles = 0;
  double quantifiers = 0;
  double concept_depth = 0;
  double caption_length_chars = 0;
  double word_count = 0;
  double concept_diversity = 0;
  // Distinct noun synsets divided by word count.
  double diversity_ratio = 0;

  size_t caption_count = 0;
  // Captions without any WordNet-resolvable noun; their depth counts as 0.
  size_t nounless_captions = 0;

  bool operator==(const GranularityProfile&) const = default;
};

// Feature definitions:
//   adjectives          ADJ tokens
//   complement_phrases  PREP tokens and complementizers (that, which, who,
//                       whom, whose) after the first NOUN
//   articles            DET_ARTICLE tokens
//   quantifiers         DET_QUANTIFIER tokens
//   concept_depth       mean over WordNet-known NOUN tokens of the deepest
//                       sense's min_depth
//   caption_length      code points of the trimmed text
//   word_count          non-punctuation tokens
//   concept_diversity   distinct first-sense noun synsets
GranularityProfile ProfileCaption(std::string_view text, const WordNetDb& db,
                                  const PosTagger& tagger);

// Mean of ProfileCaption over every caption. Per-caption work is spread over
// `threads` workers; the reduction is a fixed-order pairwise sum, so the
// result does not depend on the thread count. Throws kInvalid when empty.
GranularityProfile ProfileCorpus(const Corpus& corpus, const WordNetDb& db,
                                 const PosTagger& tagger, int threads = 1);

nlohmann::json ProfileToJson(const GranularityProfile& profile);

// Feature table with one column per labelled profile.
std::string RenderProfileTable(
    const std::vector<std::pair<std::string, GranularityProfile>>& columns);

double PairwiseSum(std::span<const double> values);

}  // namespace itrbench

#endif  // ITRBENCH_GRANULARITY_H_
