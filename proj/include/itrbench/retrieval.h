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

// Exact cosine retrieval over id-addressed embeddings.
//
// Scores are computed in double on rows normalized in double, so every
// result is reproducible by a naive per-pair loop. Ties are broken by
// ascending candidate index.

#ifndef ITRBENCH_RETRIEVAL_H_
#define ITRBENCH_RETRIEVAL_H_

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "itrbench/corpus.h"
#include "itrbench/embedstore.h"

namespace itrbench {

// u.v / (|u| |v|). Throws kInvalid on a dimension mismatch or a zero vector.
double Cosine(std::span<const float> u, std::span<const float> v);
double Cosine(std::span<const double> u, std::span<const double> v);

// Row-major matrix of unit-norm rows held in double.
class UnitRows {
 public:
  UnitRows() = default;
  // Gathers `ids` from `matrix` in the given order and normalizes each row.
  // Throws kCoverage listing every id missing from the matrix, or kInvalid
  // naming a zero row.
  UnitRows(const EmbeddingMatrix& matrix, std::span<const std::string> ids,
           std::string_view modality);

  size_t rows() const { return rows_; }
  size_t dim() const { return dim_; }
  std::span<const double> row(size_t i) const {
    return std::span<const double>(data_).subspan(i * dim_, dim_);
  }

 private:
  size_t rows_ = 0;
  size_t dim_ = 0;
  std::vector<double> data_;
};

// Dot products of `query` with every row of `candidates`, written to `out`.
// Candidate rows are visited in fixed-size blocks; each score is a plain
// left-to-right sum, so blocking never changes a result.
void ScoreAll(std::span<const double> query, const UnitRows& candidates,
              std::span<double> out);

// Float convenience form: both sides are normalized in double first.
std::vector<double> ScoreAll(std::span<const float> query,
                             const EmbeddingMatrix& candidates);

struct RankedEntry {
  size_t index = 0;  // candidate position in corpus order
  std::string candidate_id;
  double score = 0;
};

struct RankedList {
  std::string query_id;
  Direction direction = Direction::kTextToImage;
  std::vector<RankedEntry> entries;
};

// Indices of the min(k, n) largest scores, by score descending then index
// ascending. Uses partial selection. Throws kInvalid when k < 1.
std::vector<size_t> TopKIndices(std::span<const double> scores, size_t k);

RankedList TopK(std::span<const double> scores, size_t k,
                std::span<const std::string> candidate_ids);

// Bidirectional retriever over one corpus. Text rows follow corpus caption
// order and image rows corpus image order.
class Retriever {
 public:
  // Throws kCoverage when either matrix misses corpus ids and kInvalid when
  // the two matrices disagree on dimension.
  Retriever(const Corpus& corpus, const EmbeddingMatrix& text,
            const EmbeddingMatrix& image);

  const Corpus& corpus() const { return *corpus_; }
  const UnitRows& text() const { return text_; }
  const UnitRows& image() const { return image_; }

  size_t QueryCount(Direction direction) const;
  size_t CandidateCount(Direction direction) const;
  const std::string& QueryId(Direction direction, size_t index) const;
  const std::string& CandidateId(Direction direction, size_t index) const;
  std::span<const double> QueryVector(Direction direction, size_t index) const;
  std::span<const double> CandidateVector(Direction direction,
                                          size_t index) const;

  // Scores of one query against every candidate.
  void Scores(Direction direction, size_t query_index,
              std::span<double> out) const;

  RankedList Retrieve(Direction direction, size_t query_index, size_t k) const;
  // Throws kLookup for an id the corpus does not hold.
  RankedList Retrieve(std::string_view query_id, Direction direction,
                      size_t k) const;

 private:
  const Corpus* corpus_;
  std::vector<std::string> caption_ids_;
  std::vector<std::string> image_ids_;
  UnitRows text_;
  UnitRows image_;
};

// One "query_id<TAB>rank<TAB>candidate_id<TAB>score" line per entry, ranks
// from 1, scores with 9 decimals.
std::string FormatResults(std::span<const RankedList> lists);

}  // namespace itrbench

#endif  // ITRBENCH_RETRIEVAL_H_
