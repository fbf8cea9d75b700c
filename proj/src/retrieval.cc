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

#include "itrbench/retrieval.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <string>
#include <vector>

#include "itrbench/error.h"

namespace itrbench {
namespace {

constexpr size_t kBlockRows = 64;
constexpr double kZeroNorm = 1e-12;

template <typename T>
double CosineImpl(std::span<const T> u, std::span<const T> v) {
  if (u.size() != v.size()) {
    throw Error(ErrorCode::kInvalid,
                "cosine of vectors with dimensions " + std::to_string(u.size()) +
                    " and " + std::to_string(v.size()));
  }
  double dot = 0, uu = 0, vv = 0;
  for (size_t i = 0; i < u.size(); ++i) {
    dot += static_cast<double>(u[i]) * v[i];
    uu += static_cast<double>(u[i]) * u[i];
    vv += static_cast<double>(v[i]) * v[i];
  }
  if (std::sqrt(uu) < kZeroNorm || std::sqrt(vv) < kZeroNorm) {
    throw Error(ErrorCode::kInvalid, "cosine of a zero vector");
  }
  return dot / (std::sqrt(uu) * std::sqrt(vv));
}

double Dot(const double* a, const double* b, size_t n) {
  double sum = 0;
  for (size_t i = 0; i < n; ++i) sum += a[i] * b[i];
  return sum;
}

std::vector<double> UnitRow(std::span<const float> row, std::string_view id) {
  double sum = 0;
  for (float v : row) sum += static_cast<double>(v) * v;
  const double norm = std::sqrt(sum);
  if (norm < kZeroNorm) {
    throw Error(ErrorCode::kInvalid,
                "embedding row '" + std::string(id) + "' has zero norm");
  }
  std::vector<double> out(row.size());
  for (size_t j = 0; j < row.size(); ++j) out[j] = row[j] / norm;
  return out;
}

}  // namespace

double Cosine(std::span<const float> u, std::span<const float> v) {
  return CosineImpl(u, v);
}

double Cosine(std::span<const double> u, std::span<const double> v) {
  return CosineImpl(u, v);
}

UnitRows::UnitRows(const EmbeddingMatrix& matrix,
                   std::span<const std::string> ids, std::string_view modality)
    : rows_(ids.size()), dim_(matrix.dim()) {
  std::vector<std::string> missing;
  for (const std::string& id : ids) {
    if (!matrix.Contains(id)) missing.push_back(id);
  }
  if (!missing.empty()) {
    std::string message = std::string(modality) + " embeddings miss " +
                          std::to_string(missing.size()) + " of " +
                          std::to_string(ids.size()) + " corpus ids:";
    const size_t shown = std::min<size_t>(missing.size(), 20);
    for (size_t i = 0; i < shown; ++i) message += " " + missing[i];
    if (shown < missing.size()) message += " ...";
    throw Error(ErrorCode::kCoverage, message);
  }
  data_.resize(rows_ * dim_);
  for (size_t i = 0; i < rows_; ++i) {
    const std::vector<double> unit =
        UnitRow(matrix.row(matrix.RowOf(ids[i])), ids[i]);
    std::copy(unit.begin(), unit.end(), data_.begin() + i * dim_);
  }
}

void ScoreAll(std::span<const double> query, const UnitRows& candidates,
              std::span<double> out) {
  if (query.size() != candidates.dim() && candidates.rows() > 0) {
    throw Error(ErrorCode::kInvalid, "query dimension " +
                                         std::to_string(query.size()) +
                                         " does not match candidate dimension " +
                                         std::to_string(candidates.dim()));
  }
  if (out.size() != candidates.rows()) {
    throw Error(ErrorCode::kInvalid, "score buffer size mismatch");
  }
  const size_t d = candidates.dim();
  for (size_t block = 0; block < candidates.rows(); block += kBlockRows) {
    const size_t end = std::min(candidates.rows(), block + kBlockRows);
    for (size_t i = block; i < end; ++i) {
      out[i] = Dot(query.data(), candidates.row(i).data(), d);
    }
  }
}

std::vector<double> ScoreAll(std::span<const float> query,
                             const EmbeddingMatrix& candidates) {
  if (query.size() != candidates.dim()) {
    throw Error(ErrorCode::kInvalid, "query dimension " +
                                         std::to_string(query.size()) +
                                         " does not match candidate dimension " +
                                         std::to_string(candidates.dim()));
  }
  const UnitRows rows(candidates, candidates.ids(), "candidate");
  const std::vector<double> unit = UnitRow(query, "query");
  std::vector<double> out(rows.rows());
  ScoreAll(unit, rows, out);
  return out;
}

std::vector<size_t> TopKIndices(std::span<const double> scores, size_t k) {
  if (k < 1) throw Error(ErrorCode::kInvalid, "k must be at least 1");
  std::vector<size_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  const size_t take = std::min(k, scores.size());
  auto better = [&](size_t a, size_t b) {
    if (scores[a] != scores[b]) return scores[a] > scores[b];
    return a < b;
  };
  std::partial_sort(order.begin(), order.begin() + take, order.end(), better);
  order.resize(take);
  return order;
}

RankedList TopK(std::span<const double> scores, size_t k,
                std::span<const std::string> candidate_ids) {
  if (candidate_ids.size() != scores.size()) {
    throw Error(ErrorCode::kInvalid, "candidate id count mismatch");
  }
  RankedList list;
  for (size_t index : TopKIndices(scores, k)) {
    list.entries.push_back({index, candidate_ids[index], scores[index]});
  }
  return list;
}

Retriever::Retriever(const Corpus& corpus, const EmbeddingMatrix& text,
                     const EmbeddingMatrix& image)
    : corpus_(&corpus) {
  caption_ids_.reserve(corpus.caption_count());
  for (size_t i = 0; i < corpus.caption_count(); ++i) {
    caption_ids_.push_back(corpus.caption(i).caption_id);
  }
  image_ids_.reserve(corpus.image_count());
  for (const ImageTextTuple& tuple : corpus.tuples()) {
    image_ids_.push_back(tuple.image_id);
  }
  text_ = UnitRows(text, caption_ids_, "text");
  image_ = UnitRows(image, image_ids_, "image");
  if (text_.dim() != image_.dim()) {
    throw Error(ErrorCode::kInvalid,
                "text dimension " + std::to_string(text_.dim()) +
                    " differs from image dimension " +
                    std::to_string(image_.dim()));
  }
}

size_t Retriever::QueryCount(Direction direction) const {
  return direction == Direction::kImageToText ? image_ids_.size()
                                              : caption_ids_.size();
}

size_t Retriever::CandidateCount(Direction direction) const {
  return direction == Direction::kImageToText ? caption_ids_.size()
                                              : image_ids_.size();
}

const std::string& Retriever::QueryId(Direction direction, size_t index) const {
  return direction == Direction::kImageToText ? image_ids_[index]
                                              : caption_ids_[index];
}

const std::string& Retriever::CandidateId(Direction direction,
                                          size_t index) const {
  return direction == Direction::kImageToText ? caption_ids_[index]
                                              : image_ids_[index];
}

std::span<const double> Retriever::QueryVector(Direction direction,
                                               size_t index) const {
  return direction == Direction::kImageToText ? image_.row(index)
                                              : text_.row(index);
}

std::span<const double> Retriever::CandidateVector(Direction direction,
                                                   size_t index) const {
  return direction == Direction::kImageToText ? text_.row(index)
                                              : image_.row(index);
}

void Retriever::Scores(Direction direction, size_t query_index,
                       std::span<double> out) const {
  ScoreAll(QueryVector(direction, query_index),
           direction == Direction::kImageToText ? text_ : image_, out);
}

RankedList Retriever::Retrieve(Direction direction, size_t query_index,
                               size_t k) const {
  std::vector<double> scores(CandidateCount(direction));
  Scores(direction, query_index, scores);
  RankedList list = TopK(scores, k,
                         direction == Direction::kImageToText
                             ? std::span<const std::string>(caption_ids_)
                             : std::span<const std::string>(image_ids_));
  list.query_id = QueryId(direction, query_index);
  list.direction = direction;
  return list;
}

RankedList Retriever::Retrieve(std::string_view query_id, Direction direction,
                               size_t k) const {
  const size_t index = direction == Direction::kImageToText
                           ? corpus_->ImageIndex(query_id)
                           : corpus_->CaptionIndex(query_id);
  return Retrieve(direction, index, k);
}

std::string FormatResults(std::span<const RankedList> lists) {
  std::string out;
  char score[64];
  for (const RankedList& list : lists) {
    for (size_t r = 0; r < list.entries.size(); ++r) {
      const RankedEntry& entry = list.entries[r];
      // Avoid printing "-0.000000000".
      double value = entry.score;
      if (value > -5e-10 && value < 5e-10) value = 0;
      std::snprintf(score, sizeof(score), "%.9f", value);
      out += list.query_id;
      out += '\t';
      out += std::to_string(r + 1);
      out += '\t';
      out += entry.candidate_id;
      out += '\t';
      out += score;
      out += '\n';
    }
  }
  return out;
}

}  // namespace itrbench
