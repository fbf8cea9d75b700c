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

#include "itrbench/granularity.h"

#include <algorithm>
#include <cstdio>
#include <set>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "itrbench/error.h"

namespace itrbench {
namespace {

bool IsComplementizer(std::string_view lower) {
  return lower == "that" || lower == "which" || lower == "who" ||
         lower == "whom" || lower == "whose";
}

size_t CodePointsTrimmed(std::string_view text) {
  auto is_space = [](char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
           c == '\v';
  };
  while (!text.empty() && is_space(text.front())) text.remove_prefix(1);
  while (!text.empty() && is_space(text.back())) text.remove_suffix(1);
  size_t count = 0;
  for (char c : text) {
    if ((static_cast<unsigned char>(c) & 0xC0) != 0x80) ++count;
  }
  return count;
}

// Parallel map over [0, n); each worker owns a contiguous block.
template <typename Fn>
void ParallelFor(size_t n, int threads, Fn&& fn) {
  const size_t workers =
      std::clamp<size_t>(threads < 1 ? 1 : static_cast<size_t>(threads), 1,
                         std::max<size_t>(n, 1));
  if (workers == 1) {
    for (size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  const size_t block = (n + workers - 1) / workers;
  for (size_t w = 0; w < workers; ++w) {
    const size_t first = w * block;
    const size_t last = std::min(n, first + block);
    if (first >= last) break;
    pool.emplace_back([first, last, &fn] {
      for (size_t i = first; i < last; ++i) fn(i);
    });
  }
  for (std::thread& t : pool) t.join();
}

}  // namespace

double PairwiseSum(std::span<const double> values) {
  if (values.size() <= 8) {
    double sum = 0;
    for (double v : values) sum += v;
    return sum;
  }
  const size_t half = values.size() / 2;
  return PairwiseSum(values.first(half)) + PairwiseSum(values.subspan(half));
}

GranularityProfile ProfileCaption(std::string_view text, const WordNetDb& db,
                                  const PosTagger& tagger) {
  const std::vector<Token> tokens = TokenizeAndTag(text, tagger);
  GranularityProfile profile;
  profile.caption_count = 1;
  profile.caption_length_chars = static_cast<double>(CodePointsTrimmed(text));

  bool seen_noun = false;
  double depth_sum = 0;
  size_t depth_nouns = 0;
  std::set<uint32_t> distinct_synsets;
  for (const Token& token : tokens) {
    if (token.pos == PosTag::kPunct) continue;
    profile.word_count += 1;
    switch (token.pos) {
      case PosTag::kAdj:
        profile.adjectives += 1;
        break;
      case PosTag::kDetArticle:
        profile.articles += 1;
        break;
      case PosTag::kDetQuantifier:
        profile.quantifiers += 1;
        break;
      default:
        break;
    }
    if (seen_noun &&
        (token.pos == PosTag::kPrep || IsComplementizer(token.lower))) {
      profile.complement_phrases += 1;
    }
    if (token.pos == PosTag::kNoun) {
      seen_noun = true;
      const std::vector<const Synset*> senses =
          db.SynsetsOf(token.lower, PosClass::kNoun);
      if (!senses.empty()) {
        int deepest = 0;
        for (const Synset* s : senses) deepest = std::max(deepest, s->min_depth);
        depth_sum += deepest;
        ++depth_nouns;
        distinct_synsets.insert(senses.front()->offset);
      }
    }
  }
  if (depth_nouns > 0) {
    profile.concept_depth = depth_sum / static_cast<double>(depth_nouns);
  } else {
    profile.nounless_captions = 1;
  }
  profile.concept_diversity = static_cast<double>(distinct_synsets.size());
  if (profile.word_count > 0) {
    profile.diversity_ratio = profile.concept_diversity / profile.word_count;
  }
  return profile;
}

GranularityProfile ProfileCorpus(const Corpus& corpus, const WordNetDb& db,
                                 const PosTagger& tagger, int threads) {
  const size_t n = corpus.caption_count();
  if (n == 0) throw Error(ErrorCode::kInvalid, "cannot profile an empty corpus");
  std::vector<GranularityProfile> per_caption(n);
  ParallelFor(n, threads, [&](size_t i) {
    per_caption[i] = ProfileCaption(corpus.caption(i).text, db, tagger);
  });

  std::vector<double> column(n);
  auto mean = [&](double GranularityProfile::*field) {
    for (size_t i = 0; i < n; ++i) column[i] = per_caption[i].*field;
    return PairwiseSum(column) / static_cast<double>(n);
  };
  GranularityProfile profile;
  profile.adjectives = mean(&GranularityProfile::adjectives);
  profile.complement_phrases = mean(&GranularityProfile::complement_phrases);
  profile.articles = mean(&GranularityProfile::articles);
  profile.quantifiers = mean(&GranularityProfile::quantifiers);
  profile.concept_depth = mean(&GranularityProfile::concept_depth);
  profile.caption_length_chars =
      mean(&GranularityProfile::caption_length_chars);
  profile.word_count = mean(&GranularityProfile::word_count);
  profile.concept_diversity = mean(&GranularityProfile::concept_diversity);
  profile.diversity_ratio = mean(&GranularityProfile::diversity_ratio);
  profile.caption_count = n;
  for (const GranularityProfile& p : per_caption) {
    profile.nounless_captions += p.nounless_captions;
  }
  return profile;
}

nlohmann::json ProfileToJson(const GranularityProfile& profile) {
  return {
      {"adjectives", profile.adjectives},
      {"complement_phrases", profile.complement_phrases},
      {"articles", profile.articles},
      {"quantifiers", profile.quantifiers},
      {"concept_depth", profile.concept_depth},
      {"caption_length_chars", profile.caption_length_chars},
      {"word_count", profile.word_count},
      {"concept_diversity", profile.concept_diversity},
      {"diversity_ratio", profile.diversity_ratio},
      {"caption_count", profile.caption_count},
      {"nounless_captions", profile.nounless_captions},
  };
}

std::string RenderProfileTable(
    const std::vector<std::pair<std::string, GranularityProfile>>& columns) {
  struct Row {
    const char* level;
    const char* aspect;
    const char* feature;
    double GranularityProfile::*field;
  };
  static constexpr Row kRows[] = {
      {"NP", "Modifiers of the Noun", "Adjectives",
       &GranularityProfile::adjectives},
      {"", "", "Complement Phrases", &GranularityProfile::complement_phrases},
      {"", "Determiners", "Articles", &GranularityProfile::articles},
      {"", "", "Quantifiers", &GranularityProfile::quantifiers},
      {"", "Semantics", "Concept depth", &GranularityProfile::concept_depth},
      {"Caption", "Number of Characters", "Caption length",
       &GranularityProfile::caption_length_chars},
      {"", "Number of Words", "Number of words in a caption",
       &GranularityProfile::word_count},
      {"", "Semantics", "Diversity of concepts per caption",
       &GranularityProfile::concept_diversity},
  };
  std::string out;
  char buffer[256];
  std::snprintf(buffer, sizeof(buffer), "%-8s %-22s %-34s", "Level", "Aspect",
                "Features");
  out += buffer;
  for (const auto& [label, profile] : columns) {
    std::snprintf(buffer, sizeof(buffer), " %14s", label.c_str());
    out += buffer;
  }
  out += '\n';
  for (const Row& row : kRows) {
    std::snprintf(buffer, sizeof(buffer), "%-8s %-22s %-34s", row.level,
                  row.aspect, row.feature);
    out += buffer;
    for (const auto& [label, profile] : columns) {
      std::snprintf(buffer, sizeof(buffer), " %14.2f", profile.*(row.field));
      out += buffer;
    }
    out += '\n';
  }
  return out;
}

}  // namespace itrbench
