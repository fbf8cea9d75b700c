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

// Reader for the Princeton WordNet 3.0 database files (data.*, index.* and
// optionally cntlist.rev).
//
// data.<pos> record layout:
//   offset lex_filenum ss_type w_cnt(hex) [word lex_id(hex)]... p_cnt
//   [pointer_symbol offset pos source_target]... [frames] | gloss
// index.<pos> record layout:
//   lemma pos synset_cnt p_cnt [pointer_symbol]... sense_cnt tagged_sense_cnt
//   [synset_offset]...
// Lines starting with two spaces are the license header.

#ifndef ITRBENCH_WORDNET_H_
#define ITRBENCH_WORDNET_H_

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace itrbench {

enum class PosClass : uint8_t { kNoun = 0, kVerb = 1, kAdj = 2, kAdv = 3 };

inline constexpr std::array<PosClass, 4> kAllPosClasses = {
    PosClass::kNoun, PosClass::kVerb, PosClass::kAdj, PosClass::kAdv};

std::string_view PosClassName(PosClass pos);  // "noun", "verb", ...

struct Synset {
  uint32_t offset = 0;
  PosClass pos_class = PosClass::kNoun;
  std::vector<std::string> lemmas;  // as written in data.*, '_' for spaces
  std::vector<uint32_t> hypernym_offsets;  // '@' and '@i' pointers
  int min_depth = 0;  // shortest hypernym path to a root
};

class WordNetDb {
 public:
  // data.noun and index.noun are required; the verb, adj and adv pairs and
  // cntlist.rev are loaded when present. Throws kIo, kParse or kIntegrity.
  static WordNetDb Load(const std::filesystem::path& dir);

  bool has_class(PosClass pos) const { return Table(pos).loaded; }
  std::span<const Synset> synsets(PosClass pos) const {
    return Table(pos).synsets;
  }
  const Synset* Find(PosClass pos, uint32_t offset) const;

  // Sense-ordered synsets for a word; lookup folds ASCII case and maps
  // spaces to underscores. Empty when the word is absent.
  std::vector<const Synset*> SynsetsOf(std::string_view word,
                                       PosClass pos) const;
  bool Contains(std::string_view word, PosClass pos) const;

  // Lemmas sharing a synset with `word`, excluding the word itself, with
  // underscores rendered as spaces, de-duplicated, in sense then lemma order.
  std::vector<std::string> SynonymsOf(std::string_view word,
                                      PosClass pos) const;

  // Sum of semantic-concordance tag counts for the word in this class, from
  // cntlist.rev. Zero when the file is absent or the word was never tagged.
  uint64_t TagFrequency(std::string_view word, PosClass pos) const;
  bool has_tag_frequencies() const { return has_tag_frequencies_; }

  // Canonical lookup key: ASCII lower case, spaces as underscores.
  static std::string LemmaKey(std::string_view word);

 private:
  struct PosTable {
    bool loaded = false;
    std::vector<Synset> synsets;
    std::unordered_map<uint32_t, uint32_t> by_offset;
    std::unordered_map<std::string, std::vector<uint32_t>> lemma_index;
    std::unordered_map<std::string, uint64_t> tag_frequency;
  };

  const PosTable& Table(PosClass pos) const {
    return tables_[static_cast<size_t>(pos)];
  }
  PosTable& Table(PosClass pos) { return tables_[static_cast<size_t>(pos)]; }

  void LoadData(PosClass pos, const std::filesystem::path& path);
  void LoadIndex(PosClass pos, const std::filesystem::path& path);
  void LoadTagCounts(const std::filesystem::path& path);
  void ResolveHypernyms(PosClass pos);

  std::array<PosTable, 4> tables_;
  bool has_tag_frequencies_ = false;
};

}  // namespace itrbench

#endif  // ITRBENCH_WORDNET_H_
