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

// Acceptance run: one PASS/FAIL line per criterion, each under its own
// wall-clock limit. Exit status is the number of failed criteria.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "e2e_pipeline.h"
#include "itrbench/embedstore.h"
#include "itrbench/granularity.h"
#include "itrbench/harness/commands.h"
#include "itrbench/metrics.h"
#include "itrbench/perturb.h"
#include "itrbench/wordnet.h"
#include "oracle/naive_eval.h"
#include "perturb_invariants.h"
#include "test_util.h"

namespace itrbench {
namespace {

namespace fs = std::filesystem;

// Returns "" when the criterion holds, else the reason it does not.
using Check = std::function<std::string()>;

std::string Fmt(const char* format, double a, double b = 0, double c = 0) {
  char buffer[256];
  std::snprintf(buffer, sizeof(buffer), format, a, b, c);
  return buffer;
}

// ---------------------------------------------------------------- 1

struct RecallRow {
  const char* name;
  double r1, r5, r10, rsum;
};

constexpr RecallRow kModelTable[] = {
    {"ALIGN MS-COCO i2t", 42.22, 54.42, 60.48, 157.12},
    {"ALIGN MS-COCO t2i", 22.93, 42.15, 51.01, 116.09},
    {"AltCLIP MS-COCO i2t", 40.95, 53.44, 58.64, 153.03},
    {"AltCLIP MS-COCO t2i", 22.47, 41.85, 50.90, 115.22},
    {"CLIP MS-COCO i2t", 33.66, 45.29, 50.08, 129.03},
    {"CLIP MS-COCO t2i", 16.15, 33.11, 42.06, 91.32},
    {"GroupViT MS-COCO i2t", 24.88, 34.38, 35.72, 94.98},
    {"GroupViT MS-COCO t2i", 8.29, 18.90, 25.59, 52.78},
    {"ALIGN MS-COCO-FG i2t", 44.59, 56.55, 64.20, 165.34},
    {"ALIGN MS-COCO-FG t2i", 25.60, 45.64, 54.65, 125.89},
    {"AltCLIP MS-COCO-FG i2t", 43.97, 57.23, 61.83, 163.03},
    {"AltCLIP MS-COCO-FG t2i", 25.45, 45.86, 54.75, 126.06},
    {"CLIP MS-COCO-FG i2t", 38.16, 50.38, 55.20, 143.74},
    {"CLIP MS-COCO-FG t2i", 16.15, 33.11, 42.01, 91.27},
    {"GroupViT MS-COCO-FG i2t", 24.88, 34.38, 35.72, 94.98},
    {"GroupViT MS-COCO-FG t2i", 9.58, 21.38, 28.68, 59.64},
    {"ALIGN Flickr30k i2t", 70.52, 83.58, 88.90, 243.00},
    {"ALIGN Flickr30k t2i", 35.56, 58.78, 67.64, 161.98},
    {"AltCLIP Flickr30k i2t", 67.98, 82.46, 86.40, 236.84},
    {"AltCLIP Flickr30k t2i", 33.06, 56.42, 65.74, 155.22},
    {"CLIP Flickr30k i2t", 58.06, 72.54, 79.30, 209.90},
    {"CLIP Flickr30k t2i", 19.30, 39.74, 49.22, 108.26},
    {"GroupViT Flickr30k i2t", 35.34, 49.24, 50.80, 135.38},
    {"GroupViT Flickr30k t2i", 8.36, 19.26, 26.02, 53.64},
    {"ALIGN Flickr30k-FG i2t", 75.28, 87.38, 90.80, 253.46},
    {"ALIGN Flickr30k-FG t2i", 39.80, 64.76, 73.44, 178.00},
    {"AltCLIP Flickr30k-FG i2t", 71.66, 85.96, 87.40, 245.02},
    {"AltCLIP Flickr30k-FG t2i", 37.10, 61.02, 70.60, 168.72},
    {"CLIP Flickr30k-FG i2t", 63.70, 77.72, 82.60, 224.02},
    {"CLIP Flickr30k-FG t2i", 24.92, 46.00, 55.60, 126.52},
    {"GroupViT Flickr30k-FG i2t", 38.50, 53.88, 52.30, 144.68},
    {"GroupViT Flickr30k-FG t2i", 8.92, 20.98, 28.54, 58.44},
};

std::string CheckRsumIdentity() {
  size_t consistent = 0;
  for (const RecallRow& row : kModelTable) {
    // A row whose recalls fall with k cannot come from one ranking.
    if (row.r1 > row.r5 || row.r5 > row.r10) {
      std::printf("  flagged: %s has non-monotone recalls %.2f/%.2f/%.2f\n",
                  row.name, row.r1, row.r5, row.r10);
    }
    const double rsum = RoundTo(RSum(row.r1, row.r5, row.r10), 2);
    if (std::abs(rsum - row.rsum) > 1e-9) {
      std::printf("  flagged: %s rsum %.2f printed %.2f\n", row.name, rsum,
                  row.rsum);
      continue;
    }
    ++consistent;
  }
  std::printf("  %zu of %zu printed rsums reproduced\n", consistent,
              std::size(kModelTable));
  return consistent == std::size(kModelTable) ? "" : "rsum mismatches";
}

// ---------------------------------------------------------------- 2

std::string CheckDcgClosedForms() {
  const std::vector<double> three(3, 1.0);
  if (std::abs(DcgCm(three, 10) - 2.130930) > 1e-6) return "p=3 perfect";
  if (std::abs(DcgCm(three, 3) - 2.130930) > 1e-6) return "p=3 depth";
  double bound = 0;
  for (int i = 1; i <= 10; ++i) bound += 1.0 / std::log2(i + 1.0);
  if (std::abs(bound - 4.543559) > 1e-6) return "bound constant";
  const std::vector<double> ten(10, 1.0);
  if (DcgCm(ten, 10) != IdealDcg(10) || std::abs(IdealDcg(10) - bound) > 1e-12) {
    return "all-perfect list does not attain the bound";
  }
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<size_t> pos(0, 9);
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<double> rels(10);
    for (double& r : rels) r = unit(rng) < 0.2 ? 1.0 : unit(rng);
    if (DcgCm(rels, 10) > bound + 1e-12) return "bound exceeded";
    size_t i = pos(rng), j = pos(rng);
    if (i > j) std::swap(i, j);
    if (i == j || rels[i] >= rels[j]) continue;
    // Moving the larger relevance earlier never lowers DCG.
    std::vector<double> swapped = rels;
    std::swap(swapped[i], swapped[j]);
    if (DcgCm(swapped, 10) < DcgCm(rels, 10)) return "rank-swap monotonicity";
    if (rels[i] < rels[j] && !(DcgCm(swapped, 10) > DcgCm(rels, 10))) {
      return "strict rank-swap improvement";
    }
  }
  return "";
}

// ---------------------------------------------------------------- 3

std::string CheckRetrievalOracle() {
  std::mt19937_64 rng(314);
  std::uniform_int_distribution<size_t> images(1, 50);
  std::uniform_int_distribution<size_t> per(1, 5);
  std::uniform_int_distribution<uint32_t> dims(1, 64);
  std::uniform_int_distribution<size_t> depth(1, 12);
  for (int trial = 0; trial < 200; ++trial) {
    const Corpus corpus = testing::SyntheticCorpus(images(rng), per(rng));
    const uint32_t dim = dims(rng);
    EmbeddingMatrix text =
        testing::RandomEmbeddings(testing::CaptionIds(corpus), dim, rng);
    const EmbeddingMatrix image =
        testing::RandomEmbeddings(testing::ImageIds(corpus), dim, rng);
    if (trial % 10 == 0) {
      // Duplicate rows force exact score ties.
      std::vector<float> data = text.data();
      for (size_t r = 1; r < text.rows(); r += 2) {
        std::copy_n(data.begin() + (r - 1) * dim, dim, data.begin() + r * dim);
      }
      text = EmbeddingMatrix(text.ids(), dim, data, false);
    }
    EvalConfig config;
    config.ks = {1, 5, 10, 2};
    config.dcg_depth = depth(rng);
    config.threads = 1 + trial % 4;
    const Evaluation eval = Evaluate(corpus, text, image, config);
    const oracle::NaiveResult naive =
        oracle::NaiveEvaluate(corpus, text, image, config.ks, config.dcg_depth);
    for (Direction d : {Direction::kImageToText, Direction::kTextToImage}) {
      const DirectionReport& got = eval.report.direction(d);
      const oracle::NaiveDirection& want =
          d == Direction::kImageToText ? naive.i2t : naive.t2i;
      for (size_t k : {1, 2, 5, 10}) {
        if (got.RecallAt(k) != want.recall.at(k)) {
          return "trial " + std::to_string(trial) + " recall@" + std::to_string(k);
        }
      }
      if (std::abs(got.dcg_cm - want.dcg) > 1e-6) {
        return "trial " + std::to_string(trial) + Fmt(" dcg %.9f vs %.9f",
                                                      got.dcg_cm, want.dcg);
      }
    }
  }
  return "";
}

// ---------------------------------------------------------------- 4

std::string CheckPerturbationInvariants() {
  const WordNetDb db = WordNetDb::Load(testing::WordNetDir());
  const LexiconTagger tagger(&db);
  constexpr size_t kCaptions = 10000;
  std::mt19937_64 rng(4242);
  std::vector<ImageTextTuple> tuples;
  for (size_t i = 0; i < kCaptions / 5; ++i) {
    ImageTextTuple t;
    t.image_id = "img" + std::to_string(i);
    for (size_t j = 0; j < 5; ++j) {
      t.captions.push_back({t.image_id + "#" + std::to_string(j), t.image_id,
                            testing::RandomCaption(rng)});
    }
    tuples.push_back(std::move(t));
  }
  const Corpus corpus("invariants", Split::kTest, std::move(tuples));
  std::vector<size_t> reversed(corpus.caption_count());
  std::iota(reversed.rbegin(), reversed.rend(), 0);

  for (PerturbationKind kind : kAllPerturbationKinds) {
    PerturbationSpec spec;
    spec.kind = kind;
    spec.seed = 77;
    spec.k = 2;
    if (kind == PerturbationKind::kTypoInsertion) spec.rate = 0.5;
    const Perturber perturber(spec, &db);
    const PerturbedCorpus forward = PerturbCorpus(corpus, perturber, 1);
    const PerturbedCorpus backward = PerturbCorpus(corpus, perturber, 3, reversed);
    for (size_t i = 0; i < corpus.caption_count(); ++i) {
      const Caption& caption = corpus.caption(i);
      const PerturbedCaption& out = forward.captions[i];
      const std::string problem =
          testing::CheckPerturbation(caption.text, out, spec, &db, tagger);
      if (!problem.empty()) {
        return std::string(KindName(kind)) + ": " + problem + " on '" +
               caption.text + "' -> '" + out.text + "'";
      }
      if (backward.captions[i].text != out.text) {
        return std::string(KindName(kind)) + ": depends on processing order";
      }
      if (perturber.Apply(caption).text != out.text) {
        return std::string(KindName(kind)) + ": not deterministic";
      }
    }
    std::printf("  %-32s %5zu/%zu changed\n", std::string(KindName(kind)).c_str(),
                forward.changed_count, kCaptions);
  }
  return "";
}

// ---------------------------------------------------------------- 5

std::string CheckTranspositionExamples() {
  const auto reachable = [](const char* word, const char* target) {
    const std::vector<std::string> all = AllTranspositions(word);
    return std::find(all.begin(), all.end(), target) != all.end();
  };
  if (!reachable("couple", "coupel")) return "couple -> coupel unreachable";
  if (!reachable("motorcycles", "omtorcycles")) {
    return "motorcycles -> omtorcycles unreachable";
  }
  // The seeded path reaches them too.
  bool coupel = false, omtorcycles = false;
  for (uint64_t seed = 0; seed < 2000 && !(coupel && omtorcycles); ++seed) {
    SplitMix64 a(seed), b(seed);
    coupel |= ApplyTypo("couple", PerturbationKind::kTypoTransposition, a) == "coupel";
    omtorcycles |= ApplyTypo("motorcycles", PerturbationKind::kTypoTransposition,
                             b) == "omtorcycles";
  }
  return coupel && omtorcycles ? "" : "seeded transposition never produced them";
}

// ---------------------------------------------------------------- 6

std::string CheckWordNet() {
  const fs::path dir = testing::WordNetDir();
  std::ifstream in(dir / "data.noun");
  std::string line;
  size_t records = 0;
  while (std::getline(in, line)) {
    if (!line.empty() && line[0] != ' ') ++records;
  }
  const WordNetDb db = WordNetDb::Load(dir);
  const auto nouns = db.synsets(PosClass::kNoun);
  if (nouns.size() != records) {
    return "noun synsets " + std::to_string(nouns.size()) + " vs records " +
           std::to_string(records);
  }
  const auto entity = db.SynsetsOf("entity", PosClass::kNoun);
  if (entity.empty() || entity[0]->min_depth != 0) return "entity is not a root";

  // Kahn's algorithm: every synset is removed iff the graph is acyclic.
  std::map<uint32_t, size_t> index;
  for (size_t i = 0; i < nouns.size(); ++i) index[nouns[i].offset] = i;
  std::vector<size_t> pending(nouns.size(), 0);
  std::vector<std::vector<size_t>> children(nouns.size());
  for (size_t i = 0; i < nouns.size(); ++i) {
    for (uint32_t p : nouns[i].hypernym_offsets) {
      children[index.at(p)].push_back(i);
      ++pending[i];
    }
  }
  std::vector<size_t> queue;
  for (size_t i = 0; i < nouns.size(); ++i) {
    if (pending[i] == 0) queue.push_back(i);
  }
  size_t removed = 0;
  while (!queue.empty()) {
    const size_t node = queue.back();
    queue.pop_back();
    ++removed;
    for (size_t child : children[node]) {
      if (--pending[child] == 0) queue.push_back(child);
    }
  }
  if (removed != nouns.size()) return "hypernym graph has a cycle";

  std::mt19937_64 rng(6);
  size_t sampled = 0;
  for (PosClass pos : kAllPosClasses) {
    const auto synsets = db.synsets(pos);
    std::uniform_int_distribution<size_t> pick(0, synsets.size() - 1);
    for (int i = 0; i < 250; ++i, ++sampled) {
      const Synset& s = synsets[pick(rng)];
      for (const std::string& a : s.lemmas) {
        std::string shown = a;
        std::replace(shown.begin(), shown.end(), '_', ' ');
        const std::vector<std::string> synonyms = db.SynonymsOf(shown, pos);
        for (const std::string& b : s.lemmas) {
          if (WordNetDb::LemmaKey(a) == WordNetDb::LemmaKey(b)) continue;
          std::string other = b;
          std::replace(other.begin(), other.end(), '_', ' ');
          if (std::find(synonyms.begin(), synonyms.end(), other) == synonyms.end()) {
            return "synonym asymmetry: " + shown + " / " + other;
          }
        }
      }
    }
  }
  std::printf("  %zu noun synsets, %zu sampled synsets symmetric\n", records,
              sampled);
  return sampled == 1000 ? "" : "sample size";
}

// ---------------------------------------------------------------- 7

std::string CheckGranularity() {
  const WordNetDb db = WordNetDb::Load(testing::MiniWordNetDir());
  const LexiconTagger tagger(&db);
  const Corpus corpus = LoadAnnotations(
      (testing::FixtureDir() / "granularity_three.json").string(), Split::kTest);
  // Hand-computed: adj, cp, art, quant, depth, length, words, concepts.
  const double expected[3][8] = {{2, 1, 2, 0, 3.5, 30, 7, 2},
                                 {1, 2, 2, 1, 3.5, 42, 10, 2},
                                 {0, 0, 0, 2, 0, 15, 4, 0}};
  for (size_t i = 0; i < 3; ++i) {
    const GranularityProfile p = ProfileCaption(corpus.caption(i).text, db, tagger);
    const double got[8] = {p.adjectives,    p.complement_phrases,
                           p.articles,      p.quantifiers,
                           p.concept_depth, p.caption_length_chars,
                           p.word_count,    p.concept_diversity};
    for (size_t f = 0; f < 8; ++f) {
      if (got[f] != expected[i][f]) {
        return "caption " + std::to_string(i) + " feature " + std::to_string(f);
      }
    }
  }

  // Adjective enrichment raises adjectives and length.
  auto make = [](const std::vector<std::string>& texts) {
    ImageTextTuple t;
    t.image_id = "i";
    for (size_t j = 0; j < texts.size(); ++j) {
      t.captions.push_back({"c" + std::to_string(j), "i", texts[j]});
    }
    return Corpus("probe", Split::kTest, {t});
  };
  const GranularityProfile coarse = ProfileCorpus(
      make({"a dog near a vase", "a man in a park", "a rose"}), db, tagger);
  const GranularityProfile fine = ProfileCorpus(
      make({"a small red dog near a big vase", "a big man in a small park",
            "a red rose"}),
      db, tagger);
  if (!(fine.adjectives > coarse.adjectives) ||
      !(fine.caption_length_chars > coarse.caption_length_chars)) {
    return "enrichment monotonicity";
  }

  // Corpus profile is the mean of caption profiles on every small corpus.
  const std::vector<std::string> pool = {"a red dog", "the small vase near a man",
                                         "3 cats", "", "big glass with a rose"};
  size_t corpora = 0;
  for (size_t n = 1; n <= 3; ++n) {
    std::vector<size_t> pick(n, 0);
    while (true) {
      std::vector<std::string> texts;
      for (size_t p : pick) texts.push_back(pool[p]);
      const GranularityProfile mean = ProfileCorpus(make(texts), db, tagger, 2);
      double sums[9] = {};
      for (const std::string& text : texts) {
        const GranularityProfile p = ProfileCaption(text, db, tagger);
        const double v[9] = {p.adjectives,    p.complement_phrases,
                             p.articles,      p.quantifiers,
                             p.concept_depth, p.caption_length_chars,
                             p.word_count,    p.concept_diversity,
                             p.diversity_ratio};
        for (size_t f = 0; f < 9; ++f) sums[f] += v[f];
      }
      const double got[9] = {mean.adjectives,    mean.complement_phrases,
                             mean.articles,      mean.quantifiers,
                             mean.concept_depth, mean.caption_length_chars,
                             mean.word_count,    mean.concept_diversity,
                             mean.diversity_ratio};
      for (size_t f = 0; f < 9; ++f) {
        if (std::abs(got[f] - sums[f] / double(n)) > 1e-12) return "mean identity";
      }
      ++corpora;
      size_t d = 0;
      while (d < n && ++pick[d] == pool.size()) pick[d++] = 0;
      if (d == n) break;
    }
  }
  std::printf("  mean identity on %zu corpora\n", corpora);
  return "";
}

// ---------------------------------------------------------------- 8

std::string CheckEmbd() {
  std::mt19937_64 rng(88);
  std::uniform_int_distribution<size_t> rows(0, 40);
  std::uniform_int_distribution<uint32_t> dims(1, 33);
  for (int trial = 0; trial < 200; ++trial) {
    const size_t n = trial == 0 ? 0 : rows(rng);
    std::vector<std::string> ids;
    for (size_t i = 0; i < n; ++i) ids.push_back("r" + std::to_string(trial) + "_" + std::to_string(i));
    const EmbeddingMatrix m = testing::RandomEmbeddings(ids, dims(rng), rng);
    const std::string bytes = SerializeEmbeddings(m);
    if (!(ParseEmbeddings(bytes) == m)) return "round trip";
    if (SerializeEmbeddings(ParseEmbeddings(bytes)) != bytes) return "re-serialize";
    if (n > 0) {
      const EmbeddingMatrix once = L2Normalize(m);
      const EmbeddingMatrix twice = L2Normalize(once);
      for (size_t i = 0; i < once.data().size(); ++i) {
        if (std::abs(once.data()[i] - twice.data()[i]) > 1e-7) return "idempotence";
      }
    }
  }

  const EmbeddingMatrix m({"a", "b"}, 2, {3, 4, 1, 0}, false);
  const std::string good = SerializeEmbeddings(m);
  auto reseal = [](std::string b) {
    uint64_t sum = 0;
    for (size_t i = kEmbdHeaderSize; i + 8 < b.size(); ++i) sum += static_cast<unsigned char>(b[i]);
    for (int k = 0; k < 8; ++k) b[b.size() - 8 + k] = static_cast<char>(sum >> (8 * k));
    return b;
  };
  auto at = [&](size_t offset, char value) {
    std::string b = good;
    b[offset] = value;
    return b;
  };
  std::string nan = good;
  const float q = std::nanf("");
  std::memcpy(&nan[kEmbdHeaderSize + 6], &q, 4);
  // First id shortened to zero bytes; the rest of the file shifts left.
  const std::string empty_id = good.substr(0, kEmbdHeaderSize) +
                               std::string(2, '\0') +
                               good.substr(kEmbdHeaderSize + 3);
  std::string dup = good;
  dup[kEmbdHeaderSize + 5] = 'a';
  const std::pair<std::string, FormatErrorKind> cases[] = {
      {at(0, 'X'), FormatErrorKind::kBadMagic},
      {at(4, 9), FormatErrorKind::kUnsupportedVersion},
      {at(8, 2), FormatErrorKind::kUnsupportedDtype},
      {at(11, 1), FormatErrorKind::kBadReserved},
      {at(9, 7), FormatErrorKind::kBadNormalizedFlag},
      {good.substr(0, good.size() - 3), FormatErrorKind::kTruncated},
      {good + '\0', FormatErrorKind::kTrailingBytes},
      {at(kEmbdHeaderSize + 8, 1), FormatErrorKind::kChecksumMismatch},
      {reseal(nan), FormatErrorKind::kNonFinite},
      {reseal(dup), FormatErrorKind::kDuplicateId},
      {at(20, 0), FormatErrorKind::kZeroDim},
      {at(9, 1), FormatErrorKind::kNotNormalized},
      {reseal(empty_id), FormatErrorKind::kBadId},
  };
  for (const auto& [bytes, kind] : cases) {
    try {
      ParseEmbeddings(bytes);
      return "accepted corrupt input for " + std::string(FormatErrorKindName(kind));
    } catch (const FormatError& e) {
      if (e.kind() != kind) {
        return "expected " + std::string(FormatErrorKindName(kind)) + ", got " +
               std::string(FormatErrorKindName(e.kind()));
      }
    }
  }
  return "";
}

// ---------------------------------------------------------------- 9

std::string CheckEndToEnd() {
  testing::ScratchDir one, again, four;
  const auto first = testing::RunE2ePipeline(one.path(), 1);
  const std::string golden = testing::CheckAgainstGoldens(first);
  if (!golden.empty()) return golden;
  if (testing::RunE2ePipeline(again.path(), 1) != first) return "rerun differs";
  if (testing::RunE2ePipeline(four.path(), 4) != first) return "threads differ";
  std::printf("  %zu output files byte-identical\n", first.size());
  return "";
}

// ---------------------------------------------------------------- 11

struct ShuffleColumn {
  const char* name;
  double baseline;
  double shuffles[5];  // N&A, all words, all but N&A, within trigrams, trigrams
};

constexpr const char* kShuffleLabels[] = {
    "Shuffle N&A", "Shuffle all words", "Shuffle all but N&A",
    "Shuffle within trigrams", "Shuffle trigrams"};

constexpr ShuffleColumn kShuffleTable[] = {
    {"ALIGN MS-COCO", 116.09, {100.00, 85.78, 98.03, 101.70, 104.23}},
    {"ALIGN MS-COCO-FG", 125.89, {109.58, 97.58, 116.59, 116.12, 117.86}},
    {"ALIGN Flickr-30k", 161.98, {139.33, 120.39, 133.67, 144.65, 145.06}},
    {"ALIGN Flickr-30k-FG", 168.72, {145.39, 130.77, 154.19, 154.16, 156.83}},
    {"AltCLIP MS-COCO", 115.22, {96.84, 88.41, 100.08, 101.60, 103.81}},
    {"AltCLIP MS-COCO-FG", 126.06, {107.54, 98.91, 113.69, 113.66, 115.35}},
    {"AltCLIP Flickr-30k", 155.22, {133.63, 121.62, 135.68, 138.82, 143.14}},
    {"AltCLIP Flickr-30k-FG", 178.00, {154.82, 132.39, 159.44, 160.87, 163.60}},
    {"CLIP MS-COCO", 91.32, {31.23, 41.24, 28.93, 26.11, 30.60}},
    {"CLIP MS-COCO-FG", 91.27, {72.24, 60.87, 75.40, 74.12, 76.41}},
    {"CLIP Flickr-30k", 108.26, {86.06, 69.19, 82.52, 84.57, 91.08}},
    {"CLIP Flickr-30k-FG", 126.52, {99.74, 77.82, 99.31, 100.26, 103.33}},
    {"GroupViT MS-COCO", 52.78, {43.62, 41.94, 49.08, 48.18, 48.56}},
    {"GroupViT MS-COCO-FG", 59.64, {49.00, 46.82, 54.58, 54.52, 53.98}},
    {"GroupViT Flickr-30k", 53.64, {46.82, 47.83, 51.82, 51.72, 52.84}},
    {"GroupViT Flickr-30k-FG", 58.44, {49.87, 46.89, 48.32, 54.36, 47.52}},
};

EvalReport RsumOnlyReport(double t2i_rsum) {
  EvalReport report;
  report.dataset = "published";
  report.image_count = 1000;
  report.caption_count = 5000;
  report.t2i.rsum = t2i_rsum;
  return report;
}

std::string CheckShuffleFinding() {
  const std::vector<std::string> among(std::begin(kShuffleLabels),
                                       std::end(kShuffleLabels));
  size_t agree = 0;
  double total[5] = {};
  std::string first_table;
  for (const ShuffleColumn& column : kShuffleTable) {
    std::vector<std::pair<std::string, EvalReport>> perturbed;
    for (size_t s = 0; s < 5; ++s) {
      perturbed.emplace_back(kShuffleLabels[s], RsumOnlyReport(column.shuffles[s]));
    }
    const std::vector<CompareRow> rows =
        BuildComparison(RsumOnlyReport(column.baseline), perturbed);
    if (first_table.empty()) first_table = RenderComparison(rows, CompareFormat::kTable);
    for (size_t s = 0; s < 5; ++s) total[s] += rows[s + 1].t2i_delta;
    const std::string largest = LargestDrop(rows, Direction::kTextToImage, among);
    if (largest == "Shuffle all words") {
      ++agree;
    } else {
      std::printf("  %s: largest shuffle drop is %s\n", column.name, largest.c_str());
    }
  }
  const size_t overall = static_cast<size_t>(std::min_element(total, total + 5) - total);
  std::printf("  Shuffle all words largest in %zu of %zu columns; summed drop "
              "largest for %s (%.2f)\n",
              agree, std::size(kShuffleTable), kShuffleLabels[overall],
              total[overall]);
  if (first_table.find("No perturbation") == std::string::npos) return "table shape";
  if (std::string(kShuffleLabels[overall]) != "Shuffle all words") {
    return "summed drop not led by Shuffle all words";
  }
  return agree * 2 > std::size(kShuffleTable) ? "" : "finding holds in a minority";
}

struct Criterion {
  const char* id;
  const char* title;
  double limit_seconds;
  Check check;
};

}  // namespace
}  // namespace itrbench

int main() {
  using namespace itrbench;
  const Criterion criteria[] = {
      {"1", "rsum identity on published triples", 1, CheckRsumIdentity},
      {"2", "DCG closed forms and rank-swap monotonicity", 5, CheckDcgClosedForms},
      {"3", "retrieval equals naive oracle on 200 instances", 60,
       CheckRetrievalOracle},
      {"4", "perturbation invariants on 10,000 captions per kind", 120,
       CheckPerturbationInvariants},
      {"5", "transposition reaches coupel and omtorcycles", 1,
       CheckTranspositionExamples},
      {"6", "WordNet counts, root, acyclicity, synonym symmetry", 30,
       CheckWordNet},
      {"7", "granularity hand fixture, monotonicity, mean identity", 5,
       CheckGranularity},
      {"8", "EMBD round trip, corruption classes, idempotence", 10, CheckEmbd},
      {"9", "end-to-end golden run across reruns and threads", 60, CheckEndToEnd},
      {"11", "Shuffle all words leads the shuffle drops", 1, CheckShuffleFinding},
  };
  int failures = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    std::string problem;
    try {
      problem = c.check();
    } catch (const std::exception& e) {
      problem = std::string("exception: ") + e.what();
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    if (problem.empty() && seconds > c.limit_seconds) {
      problem = Fmt("took %.2f s, limit %.0f s", seconds, c.limit_seconds);
    }
    std::printf("%s criterion %-2s %-55s %7.2f s%s%s\n",
                problem.empty() ? "PASS" : "FAIL", c.id, c.title, seconds,
                problem.empty() ? "" : "  ", problem.c_str());
    std::fflush(stdout);
    if (!problem.empty()) ++failures;
  }
  std::printf("%d of %zu criteria failed\n", failures, std::size(criteria));
  return failures == 0 ? 0 : 1;
}
