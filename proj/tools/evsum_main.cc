// Copyright 2026 The evsum Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// evsum command line: message grids and summary content selection.
//
//   evsum validate --config manifest.json|domain.json
//   evsum simulate --config scenario.json --out DIR [--seed N]
//   evsum pipeline --config manifest.json [--out DIR] [--compression-rate C]
//                  [--normalization global|per-timeframe] [--seed N]
//   evsum evaluate --gold gold_grid.json --predicted grid.json --out DIR
//   evsum export   --grid grid.json --format dot|json --out FILE
//
// Exit codes: 0 success, 1 validation failure, 2 I/O failure, 3 internal
// invariant breach.

#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "evsum/error.h"
#include "evsum/pipeline.h"

namespace fs = std::filesystem;

namespace {

enum ExitCode { kOk = 0, kValidation = 1, kIo = 2, kInternal = 3 };

int ExitFor(const evsum::Error &e) {
  switch (e.code()) {
    case evsum::ErrorCode::kParse:
    case evsum::ErrorCode::kValidation:
      return kValidation;
    case evsum::ErrorCode::kIo:
      return kIo;
    case evsum::ErrorCode::kInvariant:
      return kInternal;
  }
  return kInternal;
}

int Validate(const fs::path &config) {
  evsum::Json doc = evsum::ParseJson(evsum::ReadFile(config), config.string());
  if (doc.is_object() && doc.contains("domain")) {
    evsum::RunManifest manifest =
        evsum::RunManifest::FromJson(doc, config.parent_path());
    manifest.Validate();
    evsum::DomainSpec domain = evsum::LoadDomain(manifest.domain);
    auto corpus = evsum::LoadCorpus(manifest.corpus);
    std::cerr << "ok: " << domain.schema.ontology().concepts().size()
              << " concepts, " << domain.schema.types().size()
              << " message types, " << domain.relations.size()
              << " relations, " << corpus.size() << " documents\n";
    return kOk;
  }
  evsum::DomainSpec domain = evsum::DomainSpec::FromJson(doc);
  std::cerr << "ok: " << domain.schema.ontology().concepts().size()
            << " concepts, " << domain.schema.types().size()
            << " message types, " << domain.relations.size()
            << " relations\n";
  return kOk;
}

int Simulate(const fs::path &config, const fs::path &out,
             std::optional<uint64_t> seed) {
  evsum::ScenarioConfig cfg = evsum::ScenarioConfig::FromJson(
      evsum::ParseJson(evsum::ReadFile(config), config.string()));
  if (seed) cfg.rng_seed = *seed;
  evsum::Scenario scenario = evsum::Generate(cfg);
  evsum::WriteScenario(scenario, cfg, out);
  std::cerr << "wrote " << scenario.corpus.size() << " documents, "
            << scenario.truth.clusters.size() << " planted clusters to "
            << out.string() << "\n";
  return kOk;
}

struct PipelineFlags {
  std::optional<std::string> out;
  std::optional<double> compression_rate;
  std::optional<std::string> normalization;
  std::optional<uint64_t> seed;
};

int Pipeline(const fs::path &config, const PipelineFlags &flags) {
  evsum::RunManifest manifest = evsum::RunManifest::Load(config);
  if (flags.out) manifest.output = *flags.out;
  if (flags.compression_rate) {
    manifest.selection.compression_rate = *flags.compression_rate;
  }
  if (flags.normalization) {
    manifest.selection.normalization =
        evsum::ParseNormalization(*flags.normalization);
  }
  if (flags.seed) manifest.seed = *flags.seed;
  manifest.Validate();

  evsum::DomainSpec domain = evsum::LoadDomain(manifest.domain);
  auto corpus = evsum::LoadCorpus(manifest.corpus);
  evsum::PipelineResult result =
      evsum::RunPipeline(domain, std::move(corpus), manifest.selection);
  evsum::WritePipelineOutputs(result, manifest.selection, manifest.output);
  std::cerr << "grid: " << result.grid.nodes().size() << " messages, "
            << result.grid.edges().size() << " relations; "
            << result.clusters.size() << " clusters; selected "
            << result.selection.entries.size() << " (" << result.selection.spent
            << "/" << result.selection.budget << " tokens); sub-grid "
            << result.subgrid.nodes().size() << " messages, "
            << result.subgrid.edges().size() << " relations\n";
  if (!result.extraction.diagnostics.empty()) {
    std::cerr << result.extraction.diagnostics.size()
              << " extraction diagnostics (see diagnostics.json)\n";
  }
  return kOk;
}

evsum::Grid LoadGrid(const fs::path &path) {
  return evsum::GridFromJson(
      evsum::ParseJson(evsum::ReadFile(path), path.string()));
}

int Evaluate(const fs::path &gold, const fs::path &predicted,
             const fs::path &out) {
  evsum::EvalReport report =
      evsum::EvaluateRun(LoadGrid(gold), LoadGrid(predicted));
  evsum::WriteEvalReport(report, out);
  std::cerr << report.ToTable();
  return kOk;
}

int Export(const fs::path &grid, const std::string &format,
           const fs::path &out) {
  evsum::Grid g = LoadGrid(grid);
  if (format == "dot") {
    evsum::WriteFile(out, evsum::ExportDot(g));
  } else {
    evsum::WriteFile(out, evsum::DumpJson(evsum::GridToJson(g)));
  }
  return kOk;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Message grid construction and summary content selection"};
  app.require_subcommand(1);

  std::string config;
  std::string out;

  auto *validate = app.add_subcommand("validate", "Check domain and corpus files");
  validate->add_option("--config", config, "Manifest or domain JSON")->required();

  std::optional<uint64_t> sim_seed;
  auto *simulate = app.add_subcommand("simulate", "Generate a synthetic corpus");
  simulate->add_option("--config", config, "Scenario JSON")->required();
  simulate->add_option("--out", out, "Output directory")->required();
  simulate->add_option("--seed", sim_seed, "Override rng_seed");

  PipelineFlags flags;
  auto *pipeline = app.add_subcommand("pipeline", "Run the full pipeline");
  pipeline->add_option("--config", config, "Run manifest JSON")->required();
  pipeline->add_option("--out", flags.out, "Output directory");
  pipeline->add_option("--compression-rate", flags.compression_rate,
                       "Compression rate c in (0, 1]");
  pipeline->add_option("--normalization", flags.normalization,
                       "global or per-timeframe")
      ->check(CLI::IsMember({"global", "per-timeframe"}));
  pipeline->add_option("--seed", flags.seed, "Seed recorded with the run");

  std::string gold;
  std::string predicted;
  auto *evaluate = app.add_subcommand("evaluate", "Score a grid against gold");
  evaluate->add_option("--gold", gold, "Gold grid JSON")->required();
  evaluate->add_option("--predicted", predicted, "Predicted grid JSON")->required();
  evaluate->add_option("--out", out, "Output directory")->required();

  std::string grid;
  std::string format = "dot";
  auto *exporter = app.add_subcommand("export", "Convert a grid dump");
  exporter->add_option("--grid", grid, "Grid JSON")->required();
  exporter->add_option("--format", format, "dot or json")
      ->check(CLI::IsMember({"dot", "json"}));
  exporter->add_option("--out", out, "Output file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kValidation;
  }

  try {
    if (*validate) return Validate(config);
    if (*simulate) return Simulate(config, out, sim_seed);
    if (*pipeline) return Pipeline(config, flags);
    if (*evaluate) return Evaluate(gold, predicted, out);
    if (*exporter) return Export(grid, format, out);
  } catch (const evsum::Error &e) {
    std::cerr << "error: " << e.what() << "\n";
    return ExitFor(e);
  } catch (const evsum::Json::exception &e) {
    // Wrongly typed optional fields surface from the JSON library.
    std::cerr << "error: " << e.what() << "\n";
    return kValidation;
  } catch (const fs::filesystem_error &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIo;
  } catch (const std::exception &e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  }
  return kInternal;
}
