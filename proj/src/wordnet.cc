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

#include "itrbench/wordnet.h"

#include <charconv>
#include <deque>
#include <fstream>
#include <sstream>
#include <string>
#include <unordered_set>
#include <vector>

#include "itrbench/error.h"

namespace itrbench {
namespace {

namespace fs = std::filesystem;

std::string ReadWholeFile(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::kIo,
                "cannot open WordNet file '" + path.string() + "'");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

// Calls fn(line, line_number) for each record line, skipping the license
// header (lines beginning with two spaces) and blank lines.
template <typename Fn>
void ForEachRecord(std::string_view contents, Fn&& fn) {
  size_t line_number = 0;
  size_t start = 0;
  while (start < contents.size()) {
    size_t end = contents.find('\n', start);
    if (end == std::string_view::npos) end = contents.size();
    std::string_view line = contents.substr(start, end - start);
    ++line_number;
    start = end + 1;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || line.starts_with("  ")) continue;
    fn(line, line_number);
  }
}

std::vector<std::string_view> SplitFields(std::string_view line) {
  std::vector<std::string_view> fields;
  size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && line[i] == ' ') ++i;
    size_t j = i;
    while (j < line.size() && line[j] != ' ') ++j;
    if (j > i) fields.push_back(line.substr(i, j - i));
    i = j;
  }
  return fields;
}

[[noreturn]] void Malformed(const fs::path& path, size_t line_number,
                            const std::string& what) {
  throw Error(ErrorCode::kParse, path.filename().string() + ":" +
                                     std::to_string(line_number) +
                                     ": malformed record: " + what);
}

uint64_t ParseNumber(std::string_view field, int base, const fs::path& path,
                     size_t line_number, const char* what) {
  uint64_t value = 0;
  const char* first = field.data();
  const char* last = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(first, last, value, base);
  if (ec != std::errc() || ptr != last || field.empty()) {
    Malformed(path, line_number,
              std::string("bad ") + what + " '" + std::string(field) + "'");
  }
  return value;
}

uint32_t ParseOffset(std::string_view field, const fs::path& path,
                     size_t line_number) {
  if (field.size() != 8) {
    Malformed(path, line_number,
              "synset offset '" + std::string(field) + "' is not 8 digits");
  }
  return static_cast<uint32_t>(ParseNumber(field, 10, path, line_number,
                                           "synset offset"));
}

std::optional<PosClass> PosFromChar(std::string_view c) {
  if (c == "n") return PosClass::kNoun;
  if (c == "v") return PosClass::kVerb;
  if (c == "a" || c == "s") return PosClass::kAdj;
  if (c == "r") return PosClass::kAdv;
  return std::nullopt;
}

std::string_view FileSuffix(PosClass pos) {
  switch (pos) {
    case PosClass::kNoun:
      return "noun";
    case PosClass::kVerb:
      return "verb";
    case PosClass::kAdj:
      return "adj";
    case PosClass::kAdv:
      return "adv";
  }
  return "noun";
}

// Adjective lemmas may carry a syntactic marker: (a), (p) or (ip).
std::string_view StripAdjectiveMarker(std::string_view lemma) {
  for (std::string_view marker : {"(a)", "(p)", "(ip)"}) {
    if (lemma.size() > marker.size() && lemma.ends_with(marker)) {
      return lemma.substr(0, lemma.size() - marker.size());
    }
  }
  return lemma;
}

}  // namespace

std::string_view PosClassName(PosClass pos) { return FileSuffix(pos); }

std::string WordNetDb::LemmaKey(std::string_view word) {
  std::string key(word);
  for (char& c : key) {
    if (c >= 'A' && c <= 'Z') {
      c = static_cast<char>(c - 'A' + 'a');
    } else if (c == ' ') {
      c = '_';
    }
  }
  return key;
}

WordNetDb WordNetDb::Load(const fs::path& dir) {
  if (!fs::is_directory(dir)) {
    throw Error(ErrorCode::kIo,
                "WordNet directory '" + dir.string() + "' does not exist");
  }
  WordNetDb db;
  for (PosClass pos : kAllPosClasses) {
    const fs::path data = dir / ("data." + std::string(FileSuffix(pos)));
    const fs::path index = dir / ("index." + std::string(FileSuffix(pos)));
    const bool required = pos == PosClass::kNoun;
    const bool has_data = fs::exists(data);
    const bool has_index = fs::exists(index);
    if (!has_data && !has_index && !required) continue;
    if (!has_data) {
      throw Error(ErrorCode::kIo, "missing WordNet file '" + data.string() + "'");
    }
    if (!has_index) {
      throw Error(ErrorCode::kIo,
                  "missing WordNet file '" + index.string() + "'");
    }
    db.LoadData(pos, data);
    db.LoadIndex(pos, index);
    db.ResolveHypernyms(pos);
    db.Table(pos).loaded = true;
  }
  const fs::path counts = dir / "cntlist.rev";
  if (fs::exists(counts)) db.LoadTagCounts(counts);
  return db;
}

void WordNetDb::LoadData(PosClass pos, const fs::path& path) {
  const std::string contents = ReadWholeFile(path);
  PosTable& table = Table(pos);
  ForEachRecord(contents, [&](std::string_view line, size_t line_number) {
    const size_t bar = line.find('|');
    const std::vector<std::string_view> f =
        SplitFields(bar == std::string_view::npos ? line : line.substr(0, bar));
    if (f.size() < 6) Malformed(path, line_number, "too few fields");

    Synset synset;
    synset.offset = ParseOffset(f[0], path, line_number);
    synset.pos_class = pos;
    const std::optional<PosClass> ss_type = PosFromChar(f[2]);
    if (!ss_type || *ss_type != pos) {
      Malformed(path, line_number,
                "synset type '" + std::string(f[2]) + "' does not match file");
    }
    const size_t word_count =
        ParseNumber(f[3], 16, path, line_number, "word count");
    size_t cursor = 4;
    if (word_count == 0 || cursor + 2 * word_count + 1 > f.size()) {
      Malformed(path, line_number, "word count exceeds record");
    }
    for (size_t w = 0; w < word_count; ++w) {
      std::string_view lemma = f[cursor];
      if (pos == PosClass::kAdj) lemma = StripAdjectiveMarker(lemma);
      synset.lemmas.emplace_back(lemma);
      cursor += 2;
    }
    const size_t pointer_count =
        ParseNumber(f[cursor], 10, path, line_number, "pointer count");
    ++cursor;
    if (cursor + 4 * pointer_count > f.size()) {
      Malformed(path, line_number, "pointer count exceeds record");
    }
    for (size_t p = 0; p < pointer_count; ++p, cursor += 4) {
      const std::string_view symbol = f[cursor];
      if (symbol != "@" && symbol != "@i") continue;
      const uint32_t target = ParseOffset(f[cursor + 1], path, line_number);
      const std::optional<PosClass> target_pos = PosFromChar(f[cursor + 2]);
      if (!target_pos) {
        Malformed(path, line_number,
                  "bad pointer part of speech '" + std::string(f[cursor + 2]) +
                      "'");
      }
      if (*target_pos != pos) {
        throw Error(ErrorCode::kIntegrity,
                    path.filename().string() + ":" +
                        std::to_string(line_number) +
                        ": hypernym pointer crosses part of speech");
      }
      synset.hypernym_offsets.push_back(target);
    }
    if (!table.by_offset
             .emplace(synset.offset, static_cast<uint32_t>(table.synsets.size()))
             .second) {
      Malformed(path, line_number, "duplicate synset offset");
    }
    table.synsets.push_back(std::move(synset));
  });
}

void WordNetDb::LoadIndex(PosClass pos, const fs::path& path) {
  const std::string contents = ReadWholeFile(path);
  PosTable& table = Table(pos);
  ForEachRecord(contents, [&](std::string_view line, size_t line_number) {
    const std::vector<std::string_view> f = SplitFields(line);
    if (f.size() < 4) Malformed(path, line_number, "too few fields");
    const std::optional<PosClass> record_pos = PosFromChar(f[1]);
    if (!record_pos || *record_pos != pos) {
      Malformed(path, line_number, "part of speech does not match file");
    }
    const size_t synset_count =
        ParseNumber(f[2], 10, path, line_number, "synset count");
    const size_t pointer_count =
        ParseNumber(f[3], 10, path, line_number, "pointer count");
    const size_t first_offset = 4 + pointer_count + 2;
    if (synset_count == 0 || first_offset + synset_count != f.size()) {
      Malformed(path, line_number, "field count does not match counts");
    }
    std::vector<uint32_t> offsets;
    offsets.reserve(synset_count);
    for (size_t i = 0; i < synset_count; ++i) {
      const uint32_t offset =
          ParseOffset(f[first_offset + i], path, line_number);
      if (!table.by_offset.contains(offset)) {
        throw Error(ErrorCode::kIntegrity,
                    path.filename().string() + ":" +
                        std::to_string(line_number) + ": offset " +
                        std::string(f[first_offset + i]) +
                        " has no synset in the data file");
      }
      offsets.push_back(offset);
    }
    table.lemma_index[LemmaKey(f[0])] = std::move(offsets);
  });
}

void WordNetDb::ResolveHypernyms(PosClass pos) {
  PosTable& table = Table(pos);
  const size_t n = table.synsets.size();
  std::vector<std::vector<uint32_t>> parents(n);
  std::vector<std::vector<uint32_t>> children(n);
  for (size_t i = 0; i < n; ++i) {
    for (uint32_t offset : table.synsets[i].hypernym_offsets) {
      auto it = table.by_offset.find(offset);
      if (it == table.by_offset.end()) {
        throw Error(ErrorCode::kIntegrity,
                    "hypernym " + std::to_string(offset) + " of " +
                        std::string(PosClassName(pos)) + " synset " +
                        std::to_string(table.synsets[i].offset) +
                        " is unresolved");
      }
      parents[i].push_back(it->second);
      children[it->second].push_back(static_cast<uint32_t>(i));
    }
  }

  // Iterative three-colour DFS over hypernym edges.
  enum : uint8_t { kWhite, kGrey, kBlack };
  std::vector<uint8_t> colour(n, kWhite);
  std::vector<std::pair<uint32_t, size_t>> stack;
  for (size_t root = 0; root < n; ++root) {
    if (colour[root] != kWhite) continue;
    stack.emplace_back(static_cast<uint32_t>(root), 0);
    colour[root] = kGrey;
    while (!stack.empty()) {
      auto& [node, next] = stack.back();
      if (next < parents[node].size()) {
        const uint32_t parent = parents[node][next++];
        if (colour[parent] == kGrey) {
          throw Error(ErrorCode::kIntegrity,
                      "hypernym cycle through " +
                          std::string(PosClassName(pos)) + " synset " +
                          std::to_string(table.synsets[parent].offset));
        }
        if (colour[parent] == kWhite) {
          colour[parent] = kGrey;
          stack.emplace_back(parent, 0);
        }
      } else {
        colour[node] = kBlack;
        stack.pop_back();
      }
    }
  }

  // Multi-source BFS from the roots gives the shortest path to any root.
  std::vector<int> depth(n, -1);
  std::deque<uint32_t> queue;
  for (size_t i = 0; i < n; ++i) {
    if (parents[i].empty()) {
      depth[i] = 0;
      queue.push_back(static_cast<uint32_t>(i));
    }
  }
  while (!queue.empty()) {
    const uint32_t node = queue.front();
    queue.pop_front();
    for (uint32_t child : children[node]) {
      if (depth[child] < 0) {
        depth[child] = depth[node] + 1;
        queue.push_back(child);
      }
    }
  }
  for (size_t i = 0; i < n; ++i) table.synsets[i].min_depth = depth[i];
}

void WordNetDb::LoadTagCounts(const fs::path& path) {
  const std::string contents = ReadWholeFile(path);
  ForEachRecord(contents, [&](std::string_view line, size_t line_number) {
    const std::vector<std::string_view> f = SplitFields(line);
    if (f.size() != 3) Malformed(path, line_number, "expected 3 fields");
    const std::string_view key = f[0];
    const size_t percent = key.find('%');
    if (percent == std::string_view::npos || percent + 1 >= key.size()) {
      Malformed(path, line_number, "bad sense key");
    }
    PosClass pos;
    switch (key[percent + 1]) {
      case '1':
        pos = PosClass::kNoun;
        break;
      case '2':
        pos = PosClass::kVerb;
        break;
      case '3':
      case '5':
        pos = PosClass::kAdj;
        break;
      case '4':
        pos = PosClass::kAdv;
        break;
      default:
        Malformed(path, line_number, "bad synset type in sense key");
    }
    const uint64_t count =
        ParseNumber(f[2], 10, path, line_number, "tag count");
    Table(pos).tag_frequency[LemmaKey(key.substr(0, percent))] += count;
  });
  has_tag_frequencies_ = true;
}

const Synset* WordNetDb::Find(PosClass pos, uint32_t offset) const {
  const PosTable& table = Table(pos);
  auto it = table.by_offset.find(offset);
  return it == table.by_offset.end() ? nullptr : &table.synsets[it->second];
}

std::vector<const Synset*> WordNetDb::SynsetsOf(std::string_view word,
                                                PosClass pos) const {
  const PosTable& table = Table(pos);
  std::vector<const Synset*> result;
  auto it = table.lemma_index.find(LemmaKey(word));
  if (it == table.lemma_index.end()) return result;
  result.reserve(it->second.size());
  for (uint32_t offset : it->second) {
    result.push_back(&table.synsets[table.by_offset.at(offset)]);
  }
  return result;
}

bool WordNetDb::Contains(std::string_view word, PosClass pos) const {
  return Table(pos).lemma_index.contains(LemmaKey(word));
}

std::vector<std::string> WordNetDb::SynonymsOf(std::string_view word,
                                               PosClass pos) const {
  const std::string self = LemmaKey(word);
  std::vector<std::string> result;
  std::unordered_set<std::string> seen;
  for (const Synset* synset : SynsetsOf(word, pos)) {
    for (const std::string& lemma : synset->lemmas) {
      if (LemmaKey(lemma) == self) continue;
      std::string rendered = lemma;
      for (char& c : rendered) {
        if (c == '_') c = ' ';
      }
      if (seen.insert(rendered).second) result.push_back(std::move(rendered));
    }
  }
  return result;
}

uint64_t WordNetDb::TagFrequency(std::string_view word, PosClass pos) const {
  const PosTable& table = Table(pos);
  auto it = table.tag_frequency.find(LemmaKey(word));
  return it == table.tag_frequency.end() ? 0 : it->second;
}

}  // namespace itrbench
