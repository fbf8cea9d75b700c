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

#include "itrbench/harness/cli.h"

#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "itrbench/corpus.h"
#include "itrbench/error.h"
#include "itrbench/harness/commands.h"
#include "itrbench/perturb.h"

namespace itrbench {

int RunCli(int argc, const char* const* argv, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"Image-text retrieval robustness workbench", "itrbench"};
  app.require_subcommand(1);
  app.set_config("--config", "", "INI/TOML file of option values; flags win");

  std::string split = "test";
  int threads = 1;

  GranularityOptions granularity;
  std::string compare_annotations;
  CLI::App* granularity_cmd = app.add_subcommand(
      "granularity", "Profile caption granularity of one or two corpora");
  granularity_cmd->add_option("--annotations", granularity.annotations)
      ->required();
  granularity_cmd->add_option("--compare", compare_annotations,
                              "Second annotation file for a side-by-side table");
  granularity_cmd->add_option("--split", split)->required();
  granularity_cmd->add_option("--wordnet", granularity.wordnet_dir)->required();
  granularity_cmd->add_option("--out", granularity.out_dir)->required();
  granularity_cmd->add_option("--threads", threads)->check(CLI::PositiveNumber);

  PerturbOptions perturb;
  std::string kind;
  std::optional<double> rate;
  std::string wordnet, pool;
  CLI::App* perturb_cmd =
      app.add_subcommand("perturb", "Apply a seeded caption perturbation");
  perturb_cmd->add_option("--annotations", perturb.annotations)->required();
  perturb_cmd->add_option("--split", split)->required();
  perturb_cmd->add_option("--kind", kind)->required();
  perturb_cmd->add_option("--seed", perturb.spec.seed)->required();
  perturb_cmd->add_option("--k", perturb.spec.k,
                          "Lexical replacements per caption");
  perturb_cmd->add_option("--rate", rate, "Fraction of words per caption for typos");
  perturb_cmd->add_option("--wordnet", wordnet);
  perturb_cmd->add_option("--pool", pool, "Distraction clauses, one per line");
  perturb_cmd->add_option("--out", perturb.out_dir)->required();
  perturb_cmd->add_option("--threads", threads)->check(CLI::PositiveNumber);

  EvalOptions eval;
  std::string perturbed_text_emb;
  CLI::App* eval_cmd =
      app.add_subcommand("eval", "Bidirectional retrieval evaluation");
  eval_cmd->add_option("--annotations", eval.annotations)->required();
  eval_cmd->add_option("--split", split)->required();
  eval_cmd->add_option("--text-emb", eval.text_emb)->required();
  eval_cmd->add_option("--image-emb", eval.image_emb)->required();
  eval_cmd->add_option("--perturbed-text-emb", perturbed_text_emb,
                       "Text embeddings of perturbed captions");
  eval_cmd->add_option("--k", eval.config.ks, "Recall cut-offs")
      ->delimiter(',');
  eval_cmd->add_option("--dcg-p", eval.config.dcg_depth, "DCG depth");
  eval_cmd->add_option("--out", eval.out_dir)->required();
  eval_cmd->add_option("--threads", threads)->check(CLI::PositiveNumber);
  eval_cmd->add_flag("--timestamp", eval.timestamp,
                     "Record the generation time in the report");

  CompareOptions compare;
  std::string format = "table";
  CLI::App* compare_cmd = app.add_subcommand(
      "compare", "Tabulate rsum changes of perturbed runs against a baseline");
  compare_cmd->add_option("--baseline", compare.baseline)->required();
  compare_cmd->add_option("--perturbed", compare.perturbed)->required();
  compare_cmd->add_option("--format", format)
      ->check(CLI::IsMember({"table", "csv"}));
  compare_cmd->add_option("--out", compare.out_dir)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int status = app.exit(e, out, err);
    return status == 0 ? 0 : ExitCodeFor(ErrorCode::kUsage);
  }

  try {
    if (granularity_cmd->parsed()) {
      granularity.split = ParseSplit(split);
      granularity.threads = threads;
      if (!compare_annotations.empty()) granularity.compare = compare_annotations;
      RunGranularity(granularity);
      out << "wrote " << granularity.out_dir << "/granularity.json\n";
    } else if (perturb_cmd->parsed()) {
      perturb.split = ParseSplit(split);
      perturb.spec.kind = ParseKind(kind);
      perturb.spec.rate = rate;
      perturb.threads = threads;
      if (!wordnet.empty()) perturb.wordnet_dir = wordnet;
      if (!pool.empty()) perturb.pool_file = pool;
      RunPerturb(perturb);
      out << "wrote " << perturb.out_dir << "/annotations.json\n";
    } else if (eval_cmd->parsed()) {
      eval.split = ParseSplit(split);
      eval.config.threads = threads;
      if (!perturbed_text_emb.empty()) eval.perturbed_text_emb = perturbed_text_emb;
      const EvalReport report = RunEval(eval);
      out << "i2t rsum " << RoundTo(report.i2t.rsum, 2) << ", t2i rsum "
          << RoundTo(report.t2i.rsum, 2) << "\n";
    } else if (compare_cmd->parsed()) {
      compare.format = format == "csv" ? CompareFormat::kCsv : CompareFormat::kTable;
      RunCompare(compare);
      out << "wrote comparison to " << compare.out_dir << "\n";
    }
  } catch (const Error& e) {
    err << "error (" << ErrorCodeName(e.code()) << "): " << e.what() << "\n";
    return ExitCodeFor(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace itrbench
