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

#include "test_util.h"

#include <stdlib.h>

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "itrbench/seeding.h"
#include "itrbench/tokenizer.h"

namespace itrbench::testing {

namespace fs = std::filesystem;

fs::path FixtureDir() { return fs::path(ITRBENCH_TEST_DATA_DIR) / "fixtures"; }
fs::path GoldenDir() { return fs::path(ITRBENCH_TEST_DATA_DIR) / "golden"; }
fs::path WordNetDir() { return fs::path(ITRBENCH_WORDNET_DIR); }
fs::path MiniWordNetDir() { return FixtureDir() / "wordnet_mini"; }

std::string ReadBytes(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void WriteBytes(const fs::path& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << bytes;
  if (!out) throw std::runtime_error("cannot write " + path.string());
}

ScratchDir::ScratchDir() {
  std::string pattern = (fs::temp_directory_path() / "itrbench-XXXXXX").string();
  if (mkdtemp(pattern.data()) == nullptr) {
    throw std::runtime_error("mkdtemp failed");
  }
  path_ = pattern;
}

ScratchDir::~ScratchDir() {
  std::error_code ec;
  fs::remove_all(path_, ec);
}

namespace {

void AddFeature(std::vector<float>& v, std::string_view feature, float weight) {
  Fnv1a64 h;
  h.Update(feature);
  const uint64_t d = h.digest();
  const float sign = (d >> 63) ? -1.0f : 1.0f;
  v[d % kToyDim] += sign * weight;
  v[(d >> 20) % kToyDim] += 0.5f * sign * weight;
}

}  // namespace

std::vector<float> ToyEncode(const std::string& text) {
  std::vector<float> v(kToyDim, 0.0f);
  std::vector<std::string> words;
  for (const Token& token : Tokenize(text)) {
    if (token.pos == PosTag::kPunct) continue;
    words.push_back(token.lower);
  }
  for (const std::string& w : words) AddFeature(v, w, 1.0f);
  for (size_t i = 0; i + 1 < words.size(); ++i) {
    AddFeature(v, words[i] + " " + words[i + 1], 0.7f);
  }
  v[0] += 0.05f;  // keeps empty captions off the origin
  return v;
}

EmbeddingMatrix ToyTextEmbeddings(const Corpus& corpus) {
  std::vector<std::string> ids;
  std::vector<float> data;
  for (size_t i = 0; i < corpus.caption_count(); ++i) {
    ids.push_back(corpus.caption(i).caption_id);
    const std::vector<float> v = ToyEncode(corpus.caption(i).text);
    data.insert(data.end(), v.begin(), v.end());
  }
  return EmbeddingMatrix(std::move(ids), kToyDim, std::move(data), false);
}

EmbeddingMatrix ToyImageEmbeddings(const Corpus& corpus) {
  std::vector<std::string> ids;
  std::vector<float> data;
  for (const ImageTextTuple& tuple : corpus.tuples()) {
    ids.push_back(tuple.image_id);
    std::vector<float> sum(kToyDim, 0.0f);
    for (const Caption& caption : tuple.captions) {
      const std::vector<float> v = ToyEncode(caption.text);
      for (uint32_t j = 0; j < kToyDim; ++j) sum[j] += v[j];
    }
    data.insert(data.end(), sum.begin(), sum.end());
  }
  return EmbeddingMatrix(std::move(ids), kToyDim, std::move(data), false);
}

Corpus SyntheticCorpus(size_t images, size_t captions_per_image) {
  std::vector<ImageTextTuple> tuples;
  for (size_t i = 0; i < images; ++i) {
    ImageTextTuple tuple;
    tuple.image_id = "img" + std::to_string(i);
    tuple.image_uri = tuple.image_id + ".jpg";
    for (size_t j = 0; j < captions_per_image; ++j) {
      tuple.captions.push_back({tuple.image_id + "_c" + std::to_string(j),
                                tuple.image_id, "caption"});
    }
    tuples.push_back(std::move(tuple));
  }
  return Corpus("synthetic", Split::kTest, std::move(tuples));
}

EmbeddingMatrix RandomEmbeddings(const std::vector<std::string>& ids,
                                 uint32_t dim, std::mt19937_64& rng) {
  std::normal_distribution<float> gauss(0.0f, 1.0f);
  std::vector<float> data(ids.size() * dim);
  for (float& x : data) x = gauss(rng);
  return EmbeddingMatrix(ids, dim, std::move(data), false);
}

std::vector<std::string> CaptionIds(const Corpus& corpus) {
  std::vector<std::string> ids;
  for (size_t i = 0; i < corpus.caption_count(); ++i) {
    ids.push_back(corpus.caption(i).caption_id);
  }
  return ids;
}

std::vector<std::string> ImageIds(const Corpus& corpus) {
  std::vector<std::string> ids;
  for (const ImageTextTuple& tuple : corpus.tuples()) ids.push_back(tuple.image_id);
  return ids;
}

}  // namespace itrbench::testing
