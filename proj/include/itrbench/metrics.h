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

// Recall@k, rsum and cross-modal DCG, plus the bidirectional evaluator.
//
// Relevance of a retrieved candidate: 1 when it is a ground-truth match for
// the query, otherwise max(0, cosine(query, candidate)). DCG over the first p
// ranks is sum(rel_i / log2(i + 1)), averaged over queries.

#ifndef ITRBENCH_METRICS_H_
#define ITRBENCH_METRICS_H_

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "itrbench/corpus.h"
#include "itrbench/retrieval.h"
#include "json.hpp"

namespace itrbench {

inline constexpr int kDefaultDcgDepth = 10;

// Percentage of queries with at least one ground-truth id among the first k
// entries of their list. `truth` maps every query id to its relevant ids;
// throws kLookup when a query in `truth` has no ranked list.
double RecallAtK(std::span<const RankedList> ranked,
                 const std::map<std::string, std::vector<std::string>>& truth,
                 size_t k);

double RSum(double r1, double r5, double r10);

// Graded relevance of `candidate_id` for `query_id`. Throws kLookup for ids
// the corpus does not hold.
double Relevance(std::string_view query_id, std::string_view candidate_id,
                 Direction direction, const Retriever& retriever);
// Same, for an unclamped-cosine value already known to the caller.
double RelevanceFromScore(bool perfect_match, double cosine);

// sum over i = 1..min(p, |rels|) of rels[i-1] / log2(i + 1).
double DcgCm(std::span<const double> rels, size_t p);
// DCG of p perfect matches.
double IdealDcg(size_t p);

struct EvalConfig {
  std::vector<size_t> ks = {1, 5, 10};  // must contain 1, 5 and 10
  size_t dcg_depth = kDefaultDcgDepth;
  int threads = 1;

  // Sorts and de-duplicates ks; throws kUsage on bad values.
  void Normalize();
};

struct DirectionReport {
  std::vector<std::pair<size_t, double>> recall;  // (k, percentage), k asc
  double rsum = 0;                                // r1 + r5 + r10
  double dcg_cm = 0;                              // mean over queries
  size_t query_count = 0;

  double RecallAt(size_t k) const;
};

struct EvalReport {
  std::string dataset;
  Split split = Split::kTest;
  size_t image_count = 0;
  size_t caption_count = 0;
  EvalConfig config;
  DirectionReport i2t;
  DirectionReport t2i;
  // Free-form provenance: embedding digests, perturbation block.
  nlohmann::json metadata = nlohmann::json::object();

  const DirectionReport& direction(Direction d) const {
    return d == Direction::kImageToText ? i2t : t2i;
  }
};

struct Evaluation {
  EvalReport report;
  // Ranked lists at depth max(max k, p), in corpus query order.
  std::vector<RankedList> i2t_lists;
  std::vector<RankedList> t2i_lists;
};

// Retrieves every query in both directions and aggregates. Queries are
// spread over config.threads workers; per-query results are reduced in
// query order, so the output does not depend on the thread count.
Evaluation Evaluate(const Corpus& corpus, const EmbeddingMatrix& text,
                    const EmbeddingMatrix& image, EvalConfig config);

// Report document. Percentages are rounded to 2 decimals and rsum is the
// sum of the rounded recalls; DCG keeps 6 decimals.
nlohmann::json ReportToJson(const EvalReport& report);
// Reads the fields ReportToJson writes. Throws kParse.
EvalReport ReportFromJson(const nlohmann::json& document);

// Table with R@k and DCG per direction followed by the two rsums.
std::string RenderReportTable(
    const std::vector<std::pair<std::string, EvalReport>>& rows);

// Rounds half away from zero at `digits` decimals.
double RoundTo(double value, int digits);

}  // namespace itrbench

#endif  // ITRBENCH_METRICS_H_
