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

#include "itrbench/perturb.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <thread>
#include <vector>

#include "itrbench/error.h"

namespace itrbench {
namespace {

struct KindInfo {
  PerturbationKind kind;
  std::string_view name;
  std::string_view tag;
  std::string_view label;
};

constexpr KindInfo kKinds[] = {
    {PerturbationKind::kShuffleNounsAdjectives, "ShuffleNounsAdjectives",
     "shuffle_nouns_adjectives", "Shuffle N&A"},
    {PerturbationKind::kShuffleAllButNounsAdjectives,
     "ShuffleAllButNounsAdjectives", "shuffle_all_but_nouns_adjectives",
     "Shuffle all but N&A"},
    {PerturbationKind::kShuffleWithinTrigrams, "ShuffleWithinTrigrams",
     "shuffle_within_trigrams", "Shuffle within trigrams"},
    {PerturbationKind::kShuffleTrigrams, "ShuffleTrigrams", "shuffle_trigrams",
     "Shuffle trigrams"},
    {PerturbationKind::kShuffleAllWords, "ShuffleAllWords", "shuffle_all_words",
     "Shuffle all words"},
    {PerturbationKind::kDistraction, "Distraction", "distraction",
     "Distraction"},
    {PerturbationKind::kReplaceSynonyms, "ReplaceSynonyms", "replace_synonyms",
     "Replace synonyms"},
    {PerturbationKind::kReplaceNouns, "ReplaceNouns", "replace_nouns",
     "Replace nouns"},
    {PerturbationKind::kTypoTransposition, "TypoTransposition",
     "typo_transposition", "Typo: transposition"},
    {PerturbationKind::kTypoOmission, "TypoOmission", "typo_omission",
     "Typo: omission"},
    {PerturbationKind::kTypoInsertion, "TypoInsertion", "typo_insertion",
     "Typo: insertion"},
    {PerturbationKind::kTypoKeyProximity, "TypoKeyProximity",
     "typo_key_proximity", "Typo: key proximity"},
    {PerturbationKind::kTypos, "Typos", "typos", "Typos"},
    {PerturbationKind::kLexicalVariation, "LexicalVariation",
     "lexical_variation", "Lexical variation"},
};

const KindInfo& Info(PerturbationKind kind) {
  for (const KindInfo& info : kKinds) {
    if (info.kind == kind) return info;
  }
  return kKinds[0];
}

constexpr PerturbationKind kTypoKinds[] = {
    PerturbationKind::kTypoTransposition, PerturbationKind::kTypoOmission,
    PerturbationKind::kTypoInsertion, PerturbationKind::kTypoKeyProximity};

bool IsNounOrAdj(const Token& token) {
  return token.pos == PosTag::kNoun || token.pos == PosTag::kAdj;
}

bool IsAsciiLetter(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}

char ToLower(char c) {
  return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
}

char MatchCase(char replacement, char original) {
  if (original >= 'A' && original <= 'Z') {
    return static_cast<char>(replacement - 'a' + 'A');
  }
  return replacement;
}

// Permutes the surfaces at `positions` among themselves.
void ShuffleGroup(std::vector<std::string>& surfaces,
                  std::span<const size_t> positions, SplitMix64& rng) {
  std::vector<std::string> group;
  group.reserve(positions.size());
  for (size_t p : positions) group.push_back(surfaces[p]);
  rng.Shuffle(std::span<std::string>(group));
  for (size_t i = 0; i < positions.size(); ++i) {
    surfaces[positions[i]] = std::move(group[i]);
  }
}

std::vector<std::string> Surfaces(std::span<const Token> tokens) {
  std::vector<std::string> surfaces;
  surfaces.reserve(tokens.size());
  for (const Token& token : tokens) surfaces.push_back(token.surface);
  return surfaces;
}

}  // namespace

std::string_view KindName(PerturbationKind kind) { return Info(kind).name; }
std::string_view KindTag(PerturbationKind kind) { return Info(kind).tag; }
std::string_view KindLabel(PerturbationKind kind) { return Info(kind).label; }

PerturbationKind ParseKind(std::string_view text) {
  for (const KindInfo& info : kKinds) {
    if (text == info.name || text == info.tag) return info.kind;
  }
  throw Error(ErrorCode::kUsage,
              "unknown perturbation kind '" + std::string(text) + "'");
}

bool IsShuffle(PerturbationKind kind) {
  switch (kind) {
    case PerturbationKind::kShuffleNounsAdjectives:
    case PerturbationKind::kShuffleAllButNounsAdjectives:
    case PerturbationKind::kShuffleWithinTrigrams:
    case PerturbationKind::kShuffleTrigrams:
    case PerturbationKind::kShuffleAllWords:
      return true;
    default:
      return false;
  }
}

bool IsLexical(PerturbationKind kind) {
  return kind == PerturbationKind::kReplaceSynonyms ||
         kind == PerturbationKind::kReplaceNouns ||
         kind == PerturbationKind::kLexicalVariation;
}

bool IsTypo(PerturbationKind kind) {
  return kind == PerturbationKind::kTypos ||
         std::find(std::begin(kTypoKinds), std::end(kTypoKinds), kind) !=
             std::end(kTypoKinds);
}

void PerturbationSpec::Validate() const {
  if (k < 1) {
    throw Error(ErrorCode::kUsage, "k must be at least 1");
  }
  if (rate && !(*rate > 0.0 && *rate <= 1.0)) {
    throw Error(ErrorCode::kUsage, "rate must lie in (0, 1]");
  }
  if (kind == PerturbationKind::kDistraction && distraction_pool.empty()) {
    throw Error(ErrorCode::kUsage, "distraction pool is empty");
  }
}

std::string RebuildText(std::string_view text, std::span<const Token> tokens,
                        std::span<const std::string> surfaces) {
  std::string out;
  out.reserve(text.size() + 16);
  size_t cursor = 0;
  for (size_t i = 0; i < tokens.size(); ++i) {
    out.append(text.substr(cursor, tokens[i].begin - cursor));
    out.append(surfaces[i]);
    cursor = tokens[i].end;
  }
  out.append(text.substr(cursor));
  return out;
}

std::string ShuffleCaption(std::string_view text, std::span<const Token> tokens,
                           PerturbationKind kind, SplitMix64& rng) {
  std::vector<size_t> words;
  for (size_t i = 0; i < tokens.size(); ++i) {
    if (IsWordToken(tokens[i])) words.push_back(i);
  }
  std::vector<std::string> surfaces = Surfaces(tokens);

  switch (kind) {
    case PerturbationKind::kShuffleNounsAdjectives:
    case PerturbationKind::kShuffleAllButNounsAdjectives: {
      const bool want = kind == PerturbationKind::kShuffleNounsAdjectives;
      std::vector<size_t> positions;
      for (size_t p : words) {
        if (IsNounOrAdj(tokens[p]) == want) positions.push_back(p);
      }
      ShuffleGroup(surfaces, positions, rng);
      break;
    }
    case PerturbationKind::kShuffleWithinTrigrams:
      for (size_t g = 0; g < words.size(); g += 3) {
        const size_t len = std::min<size_t>(3, words.size() - g);
        ShuffleGroup(surfaces, std::span<const size_t>(words).subspan(g, len),
                     rng);
      }
      break;
    case PerturbationKind::kShuffleTrigrams: {
      std::vector<size_t> groups;
      for (size_t g = 0; g < words.size(); g += 3) groups.push_back(g);
      rng.Shuffle(std::span<size_t>(groups));
      std::vector<std::string> order;
      order.reserve(words.size());
      for (size_t g : groups) {
        for (size_t i = g; i < std::min(g + 3, words.size()); ++i) {
          order.push_back(tokens[words[i]].surface);
        }
      }
      for (size_t i = 0; i < words.size(); ++i) {
        surfaces[words[i]] = std::move(order[i]);
      }
      break;
    }
    case PerturbationKind::kShuffleAllWords:
      ShuffleGroup(surfaces, words, rng);
      break;
    default:
      throw Error(ErrorCode::kInvalid, "not a shuffle kind: " +
                                           std::string(KindName(kind)));
  }
  return RebuildText(text, tokens, surfaces);
}

std::string Distract(std::string_view text, std::span<const std::string> pool,
                     SplitMix64& rng) {
  if (pool.empty()) throw Error(ErrorCode::kUsage, "distraction pool is empty");
  const std::string& clause = pool[rng.Uniform(pool.size())];
  if (text.empty()) return clause;
  std::string out(text);
  out += ' ';
  out += clause;
  return out;
}

std::vector<size_t> TranspositionPositions(std::string_view word) {
  std::vector<size_t> positions;
  for (size_t i = 0; i + 1 < word.size(); ++i) {
    if (word[i] != word[i + 1]) positions.push_back(i);
  }
  return positions;
}

std::string Transpose(std::string_view word, size_t position) {
  std::string out(word);
  std::swap(out[position], out[position + 1]);
  return out;
}

std::vector<std::string> AllTranspositions(std::string_view word) {
  std::vector<std::string> out;
  for (size_t p : TranspositionPositions(word)) {
    std::string candidate = Transpose(word, p);
    if (std::find(out.begin(), out.end(), candidate) == out.end()) {
      out.push_back(std::move(candidate));
    }
  }
  return out;
}

std::string ApplyTypo(std::string_view word, PerturbationKind kind,
                      SplitMix64& rng, const KeyboardLayout& keyboard) {
  std::string out(word);
  if (word.empty()) return out;
  switch (kind) {
    case PerturbationKind::kTypoTransposition: {
      const std::vector<size_t> positions = TranspositionPositions(word);
      if (positions.empty()) return out;
      return Transpose(word, positions[rng.Uniform(positions.size())]);
    }
    case PerturbationKind::kTypoOmission:
      out.erase(rng.Uniform(word.size()), 1);
      return out;
    case PerturbationKind::kTypoInsertion: {
      const size_t anchor = rng.Uniform(word.size());
      const std::string_view neighbours =
          keyboard.Adjacent(ToLower(word[anchor]));
      if (neighbours.empty()) return out;
      const char key = MatchCase(neighbours[rng.Uniform(neighbours.size())],
                                 word[anchor]);
      const size_t side = rng.Uniform(2);
      out.insert(out.begin() + static_cast<std::ptrdiff_t>(anchor + side), key);
      return out;
    }
    case PerturbationKind::kTypoKeyProximity: {
      const size_t position = rng.Uniform(word.size());
      const std::string_view neighbours =
          keyboard.Adjacent(ToLower(word[position]));
      if (neighbours.empty()) return out;
      out[position] = MatchCase(neighbours[rng.Uniform(neighbours.size())],
                                word[position]);
      return out;
    }
    default:
      throw Error(ErrorCode::kInvalid,
                  "not an atomic typo kind: " + std::string(KindName(kind)));
  }
}

bool IsTypoEligible(const Token& token) {
  if (!IsWordToken(token) || token.surface.size() < 3) return false;
  return std::all_of(token.surface.begin(), token.surface.end(), IsAsciiLetter);
}

std::vector<size_t> LexicalCandidates(std::span<const Token> tokens,
                                      PerturbationKind kind,
                                      const WordNetDb& db) {
  std::vector<size_t> candidates;
  for (size_t i = 0; i < tokens.size(); ++i) {
    const Token& token = tokens[i];
    std::optional<PosClass> pos;
    if (kind == PerturbationKind::kReplaceNouns) {
      if (token.pos == PosTag::kNoun) pos = PosClass::kNoun;
    } else {
      pos = WordNetClass(token.pos);
    }
    if (!pos || !db.has_class(*pos)) continue;
    if (!db.SynonymsOf(token.lower, *pos).empty()) candidates.push_back(i);
  }
  return candidates;
}

Perturber::Perturber(PerturbationSpec spec, const WordNetDb* db)
    : spec_(std::move(spec)), db_(db), tagger_(db) {
  spec_.Validate();
  if (IsLexical(spec_.kind) && db_ == nullptr) {
    throw Error(ErrorCode::kUsage, std::string(KindName(spec_.kind)) +
                                       " requires a WordNet database");
  }
}

PerturbedCaption Perturber::Apply(std::string_view caption_id,
                                  std::string_view text) const {
  PerturbedCaption result;
  result.caption_id = std::string(caption_id);
  result.kind = spec_.kind;
  result.applied_kind = spec_.kind;
  SplitMix64 rng(DeriveSeed(spec_.seed, caption_id, KindTag(spec_.kind)));

  if (spec_.kind == PerturbationKind::kDistraction) {
    result.text = Distract(text, spec_.distraction_pool, rng);
  } else {
    std::vector<Token> tokens = TokenizeAndTag(text, tagger_);
    if (IsShuffle(spec_.kind)) {
      result.text = ShuffleCaption(text, tokens, spec_.kind, rng);
    } else if (IsLexical(spec_.kind)) {
      PerturbationKind kind = spec_.kind;
      if (kind == PerturbationKind::kLexicalVariation) {
        kind = rng.Uniform(2) == 0 ? PerturbationKind::kReplaceSynonyms
                                   : PerturbationKind::kReplaceNouns;
      }
      return ApplyLexical(std::move(result), text, std::move(tokens), kind,
                          rng);
    } else {
      PerturbationKind kind = spec_.kind;
      if (kind == PerturbationKind::kTypos) kind = kTypoKinds[rng.Uniform(4)];
      return ApplyTypos(std::move(result), text, std::move(tokens), kind, rng);
    }
  }
  result.changed = result.text != text;
  return result;
}

PerturbedCaption Perturber::ApplyLexical(PerturbedCaption result,
                                         std::string_view text,
                                         std::vector<Token> tokens,
                                         PerturbationKind kind,
                                         SplitMix64& rng) const {
  result.applied_kind = kind;
  std::vector<size_t> eligible = LexicalCandidates(tokens, kind, *db_);
  rng.Shuffle(std::span<size_t>(eligible));
  const size_t take = std::min(eligible.size(), static_cast<size_t>(spec_.k));
  std::vector<size_t> chosen(eligible.begin(), eligible.begin() + take);
  std::sort(chosen.begin(), chosen.end());

  std::vector<std::string> surfaces = Surfaces(tokens);
  for (size_t index : chosen) {
    const Token& token = tokens[index];
    const PosClass pos = kind == PerturbationKind::kReplaceNouns
                             ? PosClass::kNoun
                             : *WordNetClass(token.pos);
    const std::vector<std::string> synonyms = db_->SynonymsOf(token.lower, pos);
    surfaces[index] = synonyms[rng.Uniform(synonyms.size())];
    result.edits.push_back({index, token.surface, surfaces[index]});
  }
  result.text = RebuildText(text, tokens, surfaces);
  result.changed = result.text != text;
  return result;
}

PerturbedCaption Perturber::ApplyTypos(PerturbedCaption result,
                                       std::string_view text,
                                       std::vector<Token> tokens,
                                       PerturbationKind kind,
                                       SplitMix64& rng) const {
  result.applied_kind = kind;
  std::vector<size_t> eligible;
  for (size_t i = 0; i < tokens.size(); ++i) {
    if (IsTypoEligible(tokens[i])) eligible.push_back(i);
  }
  size_t take = eligible.empty() ? 0 : 1;
  if (spec_.rate && !eligible.empty()) {
    take = static_cast<size_t>(
        std::ceil(*spec_.rate * static_cast<double>(eligible.size())));
    take = std::clamp<size_t>(take, 1, eligible.size());
  }
  rng.Shuffle(std::span<size_t>(eligible));
  std::vector<size_t> chosen(eligible.begin(), eligible.begin() + take);
  std::sort(chosen.begin(), chosen.end());

  std::vector<std::string> surfaces = Surfaces(tokens);
  for (size_t index : chosen) {
    surfaces[index] = ApplyTypo(tokens[index].surface, kind, rng);
    if (surfaces[index] != tokens[index].surface) {
      result.edits.push_back({index, tokens[index].surface, surfaces[index]});
    }
  }
  result.text = RebuildText(text, tokens, surfaces);
  result.changed = result.text != text;
  return result;
}

PerturbedCorpus PerturbCorpus(const Corpus& corpus, const Perturber& perturber,
                              int threads, std::span<const size_t> order) {
  const size_t n = corpus.caption_count();
  std::vector<size_t> sequence;
  if (order.empty()) {
    sequence.resize(n);
    std::iota(sequence.begin(), sequence.end(), 0);
  } else {
    if (order.size() != n) {
      throw Error(ErrorCode::kInvalid, "processing order is not a permutation");
    }
    sequence.assign(order.begin(), order.end());
  }

  std::vector<PerturbedCaption> results(n);
  auto work = [&](size_t first, size_t last) {
    for (size_t i = first; i < last; ++i) {
      const size_t index = sequence[i];
      results[index] = perturber.Apply(corpus.caption(index));
    }
  };
  const size_t workers = std::clamp<size_t>(
      static_cast<size_t>(std::max(threads, 1)), 1, std::max<size_t>(n, 1));
  if (workers == 1) {
    work(0, n);
  } else {
    std::vector<std::thread> pool;
    const size_t block = (n + workers - 1) / workers;
    for (size_t first = 0; first < n; first += block) {
      pool.emplace_back(work, first, std::min(n, first + block));
    }
    for (std::thread& t : pool) t.join();
  }

  std::vector<ImageTextTuple> tuples = corpus.tuples();
  size_t cursor = 0;
  size_t changed = 0;
  for (ImageTextTuple& tuple : tuples) {
    for (Caption& caption : tuple.captions) {
      caption.text = results[cursor].text;
      changed += results[cursor].changed ? 1 : 0;
      ++cursor;
    }
  }
  PerturbedCorpus perturbed{
      Corpus(corpus.dataset_name(), corpus.split(), std::move(tuples)),
      std::move(results), changed};
  return perturbed;
}

nlohmann::json PerturbationManifest(const PerturbedCorpus& perturbed,
                                    const PerturbationSpec& spec) {
  nlohmann::json applied = nlohmann::json::object();
  for (const PerturbedCaption& caption : perturbed.captions) {
    if (caption.applied_kind != caption.kind) {
      auto& count = applied[std::string(KindName(caption.applied_kind))];
      count = count.is_null() ? 1 : count.get<size_t>() + 1;
    }
  }
  nlohmann::json manifest = {
      {"kind", KindName(spec.kind)},
      {"label", KindLabel(spec.kind)},
      {"seed", spec.seed},
      {"k", spec.k},
      {"rate", spec.rate ? nlohmann::json(*spec.rate) : nlohmann::json()},
      {"pool", spec.distraction_pool},
      {"dataset", perturbed.corpus.dataset_name()},
      {"split", SplitName(perturbed.corpus.split())},
      {"caption_count", perturbed.captions.size()},
      {"changed_count", perturbed.changed_count},
      {"seed_derivation", "splitmix64(fnv1a64(le64(seed)|caption_id|0x00|kind_tag))"},
  };
  if (!applied.empty()) manifest["applied_kinds"] = std::move(applied);
  return manifest;
}

nlohmann::json PerturbedAnnotations(const PerturbedCorpus& perturbed,
                                    const PerturbationSpec& spec) {
  nlohmann::json document = AnnotationsToJson(perturbed.corpus);
  document["perturbation"] = {
      {"kind", KindName(spec.kind)},
      {"label", KindLabel(spec.kind)},
      {"seed", spec.seed},
      {"k", spec.k},
      {"rate", spec.rate ? nlohmann::json(*spec.rate) : nlohmann::json()},
  };
  return document;
}

}  // namespace itrbench
