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

#include "itrbench/harness/commands.h"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "itrbench/embedstore.h"
#include "itrbench/granularity.h"
#include "itrbench/retrieval.h"
#include "itrbench/seeding.h"
#include "itrbench/tagger.h"
#include "itrbench/wordnet.h"
#include "json.hpp"

namespace itrbench {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void WriteFile(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw Error(ErrorCode::kIo, "cannot write '" + path.string() + "'");
  }
  out << content;
  out.close();
  if (!out) throw Error(ErrorCode::kIo, "write to '" + path.string() + "' failed");
}

fs::path PrepareOutDir(const std::string& dir) {
  if (dir.empty()) throw Error(ErrorCode::kUsage, "--out is required");
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) {
    throw Error(ErrorCode::kIo, "cannot create output directory '" + dir +
                                    "': " + ec.message());
  }
  return fs::path(dir);
}

void RequireFile(const std::string& path, const char* what) {
  if (!fs::is_regular_file(path)) {
    throw Error(ErrorCode::kIo,
                std::string(what) + " '" + path + "' does not exist");
  }
}

std::string Dump(const json& document) { return document.dump(2) + "\n"; }

json ParseJsonFile(const std::string& path) {
  const std::string text = ReadFile(path);
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kParse, path + ": malformed JSON at byte " +
                                       std::to_string(e.byte));
  }
}

std::string UtcTimestamp() {
  const std::time_t now =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buffer[32];
  std::strftime(buffer, sizeof(buffer), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buffer;
}

bool NeedsWordNet(PerturbationKind kind) {
  return IsLexical(kind) || kind == PerturbationKind::kShuffleNounsAdjectives ||
         kind == PerturbationKind::kShuffleAllButNounsAdjectives;
}

std::string Signed(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%+.2f", RoundTo(value, 2));
  if (std::string(buffer) == "+0.00" || std::string(buffer) == "-0.00") {
    return "0.00";
  }
  return buffer;
}

std::string Fixed2(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.2f", RoundTo(value, 2));
  return buffer;
}

std::string CsvField(const std::string& text) {
  if (text.find_first_of(",\"\n") == std::string::npos) return text;
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

int ExitCodeFor(ErrorCode code) {
  switch (code) {
    case ErrorCode::kUsage:
      return 2;
    case ErrorCode::kParse:
      return 3;
    case ErrorCode::kCoverage:
      return 4;
    case ErrorCode::kFormat:
      return 5;
    case ErrorCode::kIo:
      return 6;
    case ErrorCode::kIntegrity:
      return 7;
    case ErrorCode::kMismatch:
      return 8;
    case ErrorCode::kLookup:
      return 9;
    case ErrorCode::kInvalid:
      return 10;
  }
  return 1;
}

void RunGranularity(const GranularityOptions& options) {
  RequireFile(options.annotations, "annotation file");
  if (options.compare) RequireFile(*options.compare, "annotation file");
  const fs::path out = PrepareOutDir(options.out_dir);
  const WordNetDb db = WordNetDb::Load(options.wordnet_dir);
  const LexiconTagger tagger(&db);

  std::vector<std::string> paths = {options.annotations};
  if (options.compare) paths.push_back(*options.compare);
  std::vector<std::pair<std::string, GranularityProfile>> columns;
  json entries = json::array();
  for (const std::string& path : paths) {
    const Corpus corpus = LoadAnnotations(path, options.split);
    std::string label = corpus.dataset_name();
    for (const auto& [existing, profile] : columns) {
      if (existing == label) label += " (2)";
    }
    GranularityProfile profile =
        ProfileCorpus(corpus, db, tagger, options.threads);
    entries.push_back({{"label", label},
                       {"annotations_digest", FileDigest(path)},
                       {"profile", ProfileToJson(profile)}});
    columns.emplace_back(std::move(label), std::move(profile));
  }
  const json document = {{"split", SplitName(options.split)},
                         {"corpora", std::move(entries)}};
  WriteFile(out / "granularity.json", Dump(document));
  WriteFile(out / "granularity.txt", RenderProfileTable(columns));
}

std::vector<std::string> LoadPool(const std::string& path) {
  std::istringstream in(ReadFile(path));
  std::vector<std::string> pool;
  for (std::string line; std::getline(in, line);) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    pool.push_back(line);
  }
  if (pool.empty()) {
    throw Error(ErrorCode::kUsage, "distraction pool '" + path + "' is empty");
  }
  return pool;
}

void RunPerturb(const PerturbOptions& options) {
  RequireFile(options.annotations, "annotation file");
  PerturbationSpec spec = options.spec;
  if (options.pool_file) spec.distraction_pool = LoadPool(*options.pool_file);
  spec.Validate();
  if (NeedsWordNet(spec.kind) && !options.wordnet_dir) {
    throw Error(ErrorCode::kUsage, std::string(KindName(spec.kind)) +
                                       " needs --wordnet");
  }
  const fs::path out = PrepareOutDir(options.out_dir);
  std::optional<WordNetDb> db;
  if (options.wordnet_dir) db = WordNetDb::Load(*options.wordnet_dir);

  const Corpus corpus = LoadAnnotations(options.annotations, options.split);
  const Perturber perturber(spec, db ? &*db : nullptr);
  const PerturbedCorpus perturbed =
      PerturbCorpus(corpus, perturber, options.threads);

  json manifest = PerturbationManifest(perturbed, spec);
  manifest["annotations_digest"] = FileDigest(options.annotations);
  WriteFile(out / "annotations.json", Dump(PerturbedAnnotations(perturbed, spec)));
  WriteFile(out / "manifest.json", Dump(manifest));
}

EvalReport RunEval(const EvalOptions& options) {
  RequireFile(options.annotations, "annotation file");
  RequireFile(options.text_emb, "text embedding file");
  RequireFile(options.image_emb, "image embedding file");
  EvalConfig config = options.config;
  config.Normalize();

  const std::string annotation_text = ReadFile(options.annotations);
  const Corpus corpus = ParseAnnotations(
      annotation_text, options.split,
      fs::path(options.annotations).stem().string());
  json perturbation;
  {
    const json document = json::parse(annotation_text);
    if (auto it = document.find("perturbation"); it != document.end()) {
      perturbation = *it;
    }
  }

  std::string text_path = options.text_emb;
  if (!perturbation.is_null()) {
    if (!options.perturbed_text_emb) {
      throw Error(ErrorCode::kUsage,
                  "annotations are perturbed; pass the re-encoded captions "
                  "with --perturbed-text-emb");
    }
    RequireFile(*options.perturbed_text_emb, "perturbed text embedding file");
    if (FileDigest(*options.perturbed_text_emb) ==
        FileDigest(options.text_emb)) {
      throw Error(ErrorCode::kUsage,
                  "--perturbed-text-emb is identical to --text-emb; perturbed "
                  "captions must be re-encoded");
    }
    text_path = *options.perturbed_text_emb;
  } else if (options.perturbed_text_emb) {
    throw Error(ErrorCode::kUsage,
                "--perturbed-text-emb given but the annotations carry no "
                "perturbation block");
  }

  const fs::path out = PrepareOutDir(options.out_dir);
  const EmbeddingMatrix text = ReadEmbeddings(text_path);
  const EmbeddingMatrix image = ReadEmbeddings(options.image_emb);
  Evaluation evaluation = Evaluate(corpus, text, image, config);
  EvalReport& report = evaluation.report;
  report.metadata = {
      {"annotations_digest", FileDigest(options.annotations)},
      {"text_emb_digest", FileDigest(text_path)},
      {"image_emb_digest", FileDigest(options.image_emb)},
      {"perturbation", perturbation},
  };
  if (options.timestamp) report.metadata["generated_at"] = UtcTimestamp();

  WriteFile(out / "report.json", Dump(ReportToJson(report)));
  WriteFile(out / "report.txt",
            RenderReportTable({{ReportLabel(report, report.dataset), report}}));
  WriteFile(out / "results_i2t.tsv", FormatResults(evaluation.i2t_lists));
  WriteFile(out / "results_t2i.tsv", FormatResults(evaluation.t2i_lists));
  return report;
}

std::string ReportLabel(const EvalReport& report, const std::string& fallback) {
  auto it = report.metadata.find("perturbation");
  if (it != report.metadata.end() && it->is_object()) {
    if (auto label = it->find("label");
        label != it->end() && label->is_string()) {
      return label->get<std::string>();
    }
  }
  return fallback;
}

std::vector<CompareRow> BuildComparison(
    const EvalReport& baseline,
    const std::vector<std::pair<std::string, EvalReport>>& perturbed) {
  std::vector<CompareRow> rows;
  rows.push_back({"No perturbation", baseline.t2i.rsum, baseline.i2t.rsum, 0, 0});
  for (const auto& [label, report] : perturbed) {
    auto mismatch = [&](const std::string& what) {
      return Error(ErrorCode::kMismatch,
                   "report '" + label + "' differs from the baseline in " + what);
    };
    if (report.dataset != baseline.dataset) throw mismatch("dataset");
    if (report.split != baseline.split) throw mismatch("split");
    if (report.image_count != baseline.image_count ||
        report.caption_count != baseline.caption_count) {
      throw mismatch("corpus size");
    }
    if (report.config.ks != baseline.config.ks ||
        report.config.dcg_depth != baseline.config.dcg_depth) {
      throw mismatch("metric settings");
    }
    rows.push_back({label, report.t2i.rsum, report.i2t.rsum,
                    RoundTo(report.t2i.rsum - baseline.t2i.rsum, 2),
                    RoundTo(report.i2t.rsum - baseline.i2t.rsum, 2)});
  }
  return rows;
}

std::string RenderComparison(const std::vector<CompareRow>& rows,
                             CompareFormat format) {
  std::string out;
  if (format == CompareFormat::kCsv) {
    out = "perturbation,rsum_t2i,delta_t2i,rsum_i2t,delta_i2t\n";
    for (const CompareRow& row : rows) {
      out += CsvField(row.label) + "," + Fixed2(row.t2i_rsum) + "," +
             Signed(row.t2i_delta) + "," + Fixed2(row.i2t_rsum) + "," +
             Signed(row.i2t_delta) + "\n";
    }
    return out;
  }
  size_t width = std::string("Perturbation").size();
  for (const CompareRow& row : rows) width = std::max(width, row.label.size());
  char line[512];
  std::snprintf(line, sizeof(line), "%-*s  %10s  %10s  %10s  %10s\n",
                static_cast<int>(width), "Perturbation", "rsum t2i",
                "delta t2i", "rsum i2t", "delta i2t");
  out += line;
  for (const CompareRow& row : rows) {
    std::snprintf(line, sizeof(line), "%-*s  %10s  %10s  %10s  %10s\n",
                  static_cast<int>(width), row.label.c_str(),
                  Fixed2(row.t2i_rsum).c_str(), Signed(row.t2i_delta).c_str(),
                  Fixed2(row.i2t_rsum).c_str(), Signed(row.i2t_delta).c_str());
    out += line;
  }
  return out;
}

std::string LargestDrop(const std::vector<CompareRow>& rows,
                        Direction direction,
                        const std::vector<std::string>& among) {
  std::string best;
  double best_delta = 0;
  for (const CompareRow& row : rows) {
    if (std::find(among.begin(), among.end(), row.label) == among.end()) {
      continue;
    }
    const double delta =
        direction == Direction::kTextToImage ? row.t2i_delta : row.i2t_delta;
    if (best.empty() || delta < best_delta) {
      best = row.label;
      best_delta = delta;
    }
  }
  return best;
}

void RunCompare(const CompareOptions& options) {
  if (options.perturbed.empty()) {
    throw Error(ErrorCode::kUsage, "compare needs at least one --perturbed report");
  }
  RequireFile(options.baseline, "report");
  for (const std::string& path : options.perturbed) RequireFile(path, "report");
  const fs::path out = PrepareOutDir(options.out_dir);

  const EvalReport baseline = ReportFromJson(ParseJsonFile(options.baseline));
  std::vector<std::pair<std::string, EvalReport>> perturbed;
  for (const std::string& path : options.perturbed) {
    EvalReport report = ReportFromJson(ParseJsonFile(path));
    const fs::path p(path);
    const std::string fallback = p.stem() == "report" && p.has_parent_path()
                                     ? p.parent_path().filename().string()
                                     : p.stem().string();
    std::string label = ReportLabel(report, fallback);
    perturbed.emplace_back(std::move(label), std::move(report));
  }
  const std::vector<CompareRow> rows = BuildComparison(baseline, perturbed);
  if (options.format == CompareFormat::kCsv) {
    WriteFile(out / "compare.csv", RenderComparison(rows, CompareFormat::kCsv));
  } else {
    WriteFile(out / "compare.txt", RenderComparison(rows, CompareFormat::kTable));
  }
}

}  // namespace itrbench
