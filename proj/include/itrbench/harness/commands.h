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

// Experiment commands behind the itrbench CLI. Each command reads its
// inputs, writes its outputs under `out_dir` and throws itrbench::Error on
// failure. Outputs depend only on the input bytes and options; provenance
// timestamps appear only when requested.

#ifndef ITRBENCH_HARNESS_COMMANDS_H_
#define ITRBENCH_HARNESS_COMMANDS_H_

#include <optional>
#include <string>
#include <vector>

#include "itrbench/corpus.h"
#include "itrbench/error.h"
#include "itrbench/metrics.h"
#include "itrbench/perturb.h"

namespace itrbench {

// Process exit status for each error class; 0 is success and 1 any error
// outside these classes.
int ExitCodeFor(ErrorCode code);

struct GranularityOptions {
  std::string annotations;
  std::optional<std::string> compare;
  Split split = Split::kTest;
  std::string wordnet_dir;
  std::string out_dir;
  int threads = 1;
};

// Writes granularity.json and granularity.txt (one column per corpus).
void RunGranularity(const GranularityOptions& options);

struct PerturbOptions {
  std::string annotations;
  Split split = Split::kTest;
  PerturbationSpec spec;
  std::optional<std::string> wordnet_dir;
  std::optional<std::string> pool_file;
  std::string out_dir;
  int threads = 1;
};

// Writes annotations.json (same schema plus a "perturbation" block) and
// manifest.json. Lexical kinds and the noun/adjective shuffles need WordNet.
void RunPerturb(const PerturbOptions& options);

// Reads a distraction pool: one clause per line, blank lines ignored.
std::vector<std::string> LoadPool(const std::string& path);

struct EvalOptions {
  std::string annotations;
  Split split = Split::kTest;
  std::string text_emb;
  std::string image_emb;
  // Text embeddings of the perturbed captions. Required exactly when the
  // annotations carry a "perturbation" block, and must differ from text_emb.
  std::optional<std::string> perturbed_text_emb;
  EvalConfig config;
  std::string out_dir;
  bool timestamp = false;
};

// Writes report.json, report.txt, results_i2t.tsv and results_t2i.tsv.
EvalReport RunEval(const EvalOptions& options);

enum class CompareFormat { kTable, kCsv };

struct CompareRow {
  std::string label;
  double t2i_rsum = 0;
  double i2t_rsum = 0;
  double t2i_delta = 0;  // versus the baseline row
  double i2t_delta = 0;
};

// First row is the baseline ("No perturbation"), then one row per perturbed
// report in the given order. Throws kMismatch when reports disagree on
// dataset, split or corpus size.
std::vector<CompareRow> BuildComparison(
    const EvalReport& baseline,
    const std::vector<std::pair<std::string, EvalReport>>& perturbed);

std::string RenderComparison(const std::vector<CompareRow>& rows,
                             CompareFormat format);

// Label of the row with the largest rsum drop in `direction` among rows
// whose label is in `among`; empty when none match.
std::string LargestDrop(const std::vector<CompareRow>& rows,
                        Direction direction,
                        const std::vector<std::string>& among);

// Row label of a report: its perturbation label, else `fallback`.
std::string ReportLabel(const EvalReport& report, const std::string& fallback);

struct CompareOptions {
  std::string baseline;
  std::vector<std::string> perturbed;
  CompareFormat format = CompareFormat::kTable;
  std::string out_dir;
};

// Writes compare.txt or compare.csv.
void RunCompare(const CompareOptions& options);

}  // namespace itrbench

#endif  // ITRBENCH_HARNESS_COMMANDS_H_
