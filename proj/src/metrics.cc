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

#include "itrbench/metrics.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>
#include <thread>
#include <unordered_set>
#include <vector>

#include "itrbench/error.h"

namespace itrbench {
namespace {

using nlohmann::json;

constexpr size_t kNoHit = std::numeric_limits<size_t>::max();

// Per-query outcome of one direction.
struct QueryResult {
  size_t first_hit = kNoHit;  // 0-based rank of the first ground-truth entry
  double dcg = 0;
  RankedList list;
};

bool IsMatch(const Corpus& corpus, Direction direction, size_t query,
             size_t candidate) {
  if (direction == Direction::kImageToText) {
    return corpus.OwnerImageIndex(candidate) == query;
  }
  return corpus.OwnerImageIndex(query) == candidate;
}

template <typename Fn>
void ParallelFor(size_t n, int threads, Fn fn) {
  const size_t workers = std::clamp<size_t>(
      static_cast<size_t>(std::max(threads, 1)), 1, std::max<size_t>(n, 1));
  if (workers == 1) {
    for (size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  const size_t block = (n + workers - 1) / workers;
  for (size_t first = 0; first < n; first += block) {
    const size_t last = std::min(n, first + block);
    pool.emplace_back([first, last, &fn] {
      for (size_t i = first; i < last; ++i) fn(i);
    });
  }
  for (std::thread& t : pool) t.join();
}

DirectionReport EvaluateDirection(const Retriever& retriever,
                                  Direction direction, const EvalConfig& config,
                                  std::vector<RankedList>& lists) {
  const Corpus& corpus = retriever.corpus();
  const size_t nq = retriever.QueryCount(direction);
  const size_t depth = std::max(config.ks.back(), config.dcg_depth);
  std::vector<QueryResult> results(nq);
  ParallelFor(nq, config.threads, [&](size_t q) {
    QueryResult& result = results[q];
    result.list = retriever.Retrieve(direction, q, depth);
    std::vector<double> rels;
    rels.reserve(result.list.entries.size());
    for (size_t r = 0; r < result.list.entries.size(); ++r) {
      const RankedEntry& entry = result.list.entries[r];
      const bool match = IsMatch(corpus, direction, q, entry.index);
      if (match && result.first_hit == kNoHit) result.first_hit = r;
      rels.push_back(RelevanceFromScore(match, entry.score));
    }
    result.dcg = DcgCm(rels, config.dcg_depth);
  });

  DirectionReport report;
  report.query_count = nq;
  double dcg_sum = 0;
  for (const QueryResult& result : results) dcg_sum += result.dcg;
  report.dcg_cm = nq == 0 ? 0 : dcg_sum / static_cast<double>(nq);
  for (size_t k : config.ks) {
    size_t hits = 0;
    for (const QueryResult& result : results) {
      if (result.first_hit < k) ++hits;
    }
    report.recall.emplace_back(
        k, nq == 0 ? 0 : 100.0 * static_cast<double>(hits) /
                             static_cast<double>(nq));
  }
  report.rsum = RSum(report.RecallAt(1), report.RecallAt(5), report.RecallAt(10));
  lists.clear();
  lists.reserve(nq);
  for (QueryResult& result : results) lists.push_back(std::move(result.list));
  return report;
}

json DirectionToJson(const DirectionReport& report) {
  json out = json::object();
  double rsum = 0;
  for (const auto& [k, value] : report.recall) {
    out["R@" + std::to_string(k)] = RoundTo(value, 2);
    if (k == 1 || k == 5 || k == 10) rsum += RoundTo(value, 2);
  }
  out["rsum"] = RoundTo(rsum, 2);
  out["dcg_cm"] = RoundTo(report.dcg_cm, 6);
  out["queries"] = report.query_count;
  return out;
}

DirectionReport DirectionFromJson(const json& node, const char* name) {
  if (!node.is_object()) {
    throw Error(ErrorCode::kParse,
                std::string("report has no '") + name + "' object");
  }
  DirectionReport report;
  try {
    for (const auto& [key, value] : node.items()) {
      if (key.rfind("R@", 0) == 0) {
        report.recall.emplace_back(std::stoul(key.substr(2)),
                                   value.get<double>());
      }
    }
    std::sort(report.recall.begin(), report.recall.end());
    report.rsum = node.at("rsum").get<double>();
    report.dcg_cm = node.at("dcg_cm").get<double>();
    report.query_count = node.value("queries", size_t{0});
  } catch (const std::exception& e) {
    throw Error(ErrorCode::kParse,
                std::string("bad '") + name + "' block: " + e.what());
  }
  return report;
}

std::string Fixed(double value, int digits) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.*f", digits, RoundTo(value, digits));
  return buffer;
}

}  // namespace

double RoundTo(double value, int digits) {
  const double scale = std::pow(10.0, digits);
  const double rounded = std::round(value * scale) / scale;
  return rounded == 0 ? 0.0 : rounded;
}

double RecallAtK(std::span<const RankedList> ranked,
                 const std::map<std::string, std::vector<std::string>>& truth,
                 size_t k) {
  if (truth.empty()) return 0;
  std::map<std::string_view, const RankedList*> by_query;
  for (const RankedList& list : ranked) by_query[list.query_id] = &list;
  size_t hits = 0;
  for (const auto& [query, relevant] : truth) {
    auto it = by_query.find(query);
    if (it == by_query.end()) {
      throw Error(ErrorCode::kLookup,
                  "query '" + query + "' has no ranked list");
    }
    const std::unordered_set<std::string> wanted(relevant.begin(),
                                                 relevant.end());
    const auto& entries = it->second->entries;
    const size_t depth = std::min(k, entries.size());
    for (size_t r = 0; r < depth; ++r) {
      if (wanted.contains(entries[r].candidate_id)) {
        ++hits;
        break;
      }
    }
  }
  return 100.0 * static_cast<double>(hits) / static_cast<double>(truth.size());
}

double RSum(double r1, double r5, double r10) { return r1 + r5 + r10; }

double RelevanceFromScore(bool perfect_match, double cosine) {
  if (perfect_match) return 1.0;
  return std::clamp(cosine, 0.0, 1.0);
}

double Relevance(std::string_view query_id, std::string_view candidate_id,
                 Direction direction, const Retriever& retriever) {
  const Corpus& corpus = retriever.corpus();
  size_t query, candidate;
  if (direction == Direction::kImageToText) {
    query = corpus.ImageIndex(query_id);
    candidate = corpus.CaptionIndex(candidate_id);
  } else {
    query = corpus.CaptionIndex(query_id);
    candidate = corpus.ImageIndex(candidate_id);
  }
  const bool match = IsMatch(corpus, direction, query, candidate);
  return RelevanceFromScore(
      match, Cosine(retriever.QueryVector(direction, query),
                    retriever.CandidateVector(direction, candidate)));
}

double DcgCm(std::span<const double> rels, size_t p) {
  const size_t depth = std::min(p, rels.size());
  double sum = 0;
  for (size_t i = 0; i < depth; ++i) {
    sum += rels[i] / std::log2(static_cast<double>(i) + 2.0);
  }
  return sum;
}

double IdealDcg(size_t p) {
  const std::vector<double> ones(p, 1.0);
  return DcgCm(ones, p);
}

void EvalConfig::Normalize() {
  std::sort(ks.begin(), ks.end());
  ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
  if (ks.empty() || ks.front() < 1) {
    throw Error(ErrorCode::kUsage, "k values must be positive");
  }
  for (size_t required : {1, 5, 10}) {
    if (!std::binary_search(ks.begin(), ks.end(), required)) {
      throw Error(ErrorCode::kUsage,
                  "k list must include 1, 5 and 10 (rsum needs them)");
    }
  }
  if (dcg_depth < 1) throw Error(ErrorCode::kUsage, "DCG depth must be >= 1");
  if (threads < 1) throw Error(ErrorCode::kUsage, "threads must be >= 1");
}

double DirectionReport::RecallAt(size_t k) const {
  for (const auto& [key, value] : recall) {
    if (key == k) return value;
  }
  throw Error(ErrorCode::kLookup, "no recall at k=" + std::to_string(k));
}

Evaluation Evaluate(const Corpus& corpus, const EmbeddingMatrix& text,
                    const EmbeddingMatrix& image, EvalConfig config) {
  config.Normalize();
  const Retriever retriever(corpus, text, image);
  Evaluation evaluation;
  EvalReport& report = evaluation.report;
  report.dataset = corpus.dataset_name();
  report.split = corpus.split();
  report.image_count = corpus.image_count();
  report.caption_count = corpus.caption_count();
  report.config = config;
  report.i2t = EvaluateDirection(retriever, Direction::kImageToText, config,
                                 evaluation.i2t_lists);
  report.t2i = EvaluateDirection(retriever, Direction::kTextToImage, config,
                                 evaluation.t2i_lists);
  return evaluation;
}

json ReportToJson(const EvalReport& report) {
  json ks = json::array();
  for (size_t k : report.config.ks) ks.push_back(k);
  return json{
      {"dataset", report.dataset},
      {"split", SplitName(report.split)},
      {"images", report.image_count},
      {"captions", report.caption_count},
      {"ks", std::move(ks)},
      {"dcg_depth", report.config.dcg_depth},
      {"i2t", DirectionToJson(report.i2t)},
      {"t2i", DirectionToJson(report.t2i)},
      {"metadata", report.metadata},
  };
}

EvalReport ReportFromJson(const json& document) {
  if (!document.is_object()) {
    throw Error(ErrorCode::kParse, "report must be a JSON object");
  }
  EvalReport report;
  try {
    report.dataset = document.at("dataset").get<std::string>();
    report.split = ParseSplit(document.at("split").get<std::string>());
    report.image_count = document.value("images", size_t{0});
    report.caption_count = document.value("captions", size_t{0});
    report.config.ks = document.at("ks").get<std::vector<size_t>>();
    report.config.dcg_depth = document.at("dcg_depth").get<size_t>();
    report.metadata = document.value("metadata", json::object());
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    throw Error(ErrorCode::kParse, std::string("bad report: ") + e.what());
  }
  report.i2t = DirectionFromJson(document.value("i2t", json()), "i2t");
  report.t2i = DirectionFromJson(document.value("t2i", json()), "t2i");
  return report;
}

std::string RenderReportTable(
    const std::vector<std::pair<std::string, EvalReport>>& rows) {
  size_t label_width = 5;
  for (const auto& [label, report] : rows) {
    label_width = std::max(label_width, label.size());
  }
  auto cell = [](const std::string& text, size_t width) {
    std::string out = text;
    if (out.size() < width) out.append(width - out.size(), ' ');
    return out;
  };
  const size_t w = 9;
  std::string out = cell("", label_width + 2) + cell("i2t", 4 * w) +
                    cell("t2i", 4 * w) + "rsum\n";
  out += cell("Run", label_width + 2);
  for (int d = 0; d < 2; ++d) {
    out += cell("R@1", w) + cell("R@5", w) + cell("R@10", w) + cell("DCG", w);
  }
  out += cell("i2t", w) + "t2i\n";
  for (const auto& [label, report] : rows) {
    out += cell(label, label_width + 2);
    for (const DirectionReport* d : {&report.i2t, &report.t2i}) {
      out += cell(Fixed(d->RecallAt(1), 2), w) + cell(Fixed(d->RecallAt(5), 2), w) +
             cell(Fixed(d->RecallAt(10), 2), w) + cell(Fixed(d->dcg_cm, 2), w);
    }
    out += cell(Fixed(report.i2t.rsum, 2), w) + Fixed(report.t2i.rsum, 2) + "\n";
  }
  return out;
}

}  // namespace itrbench
