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

#include "evsum/pipeline.h"

#include <algorithm>

#include "evsum/error.h"

namespace evsum {

namespace fs = std::filesystem;

namespace {

template <typename Fn>
auto Stage(const char *name, Fn &&fn) {
  try {
    return fn();
  } catch (const ParseError &e) {
    throw ParseError(std::string(name) + ": " + e.what(), e.line(), e.column());
  } catch (const Error &e) {
    throw Error(e.code(), std::string(name) + ": " + e.what());
  }
}

fs::path Resolve(const fs::path &base, const std::string &p) {
  fs::path path(p);
  return path.is_absolute() ? path : base / path;
}

}  // namespace

RunManifest RunManifest::FromJson(const Json &j, const fs::path &base) {
  constexpr std::string_view kWhat = "manifest";
  RunManifest m;
  m.domain = Resolve(base, RequireString(j, "domain", kWhat));
  m.corpus = Resolve(base, RequireString(j, "corpus", kWhat));
  m.output = Resolve(base, j.value("output", std::string("out")));
  m.selection.compression_rate = j.value("compression_rate", 1.0);
  m.selection.normalization =
      ParseNormalization(j.value("normalization", std::string("global")));
  m.seed = j.value("seed", uint64_t{0});
  return m;
}

RunManifest RunManifest::Load(const fs::path &path) {
  std::string text = ReadFile(path);
  return FromJson(ParseJson(text, path.string()), path.parent_path());
}

Json RunManifest::ToJson() const {
  return {{"domain", domain.string()},
          {"corpus", corpus.string()},
          {"output", output.string()},
          {"compression_rate", selection.compression_rate},
          {"normalization", NormalizationName(selection.normalization)},
          {"seed", seed}};
}

void RunManifest::Validate() const {
  if (!fs::is_regular_file(domain)) {
    throw Error(ErrorCode::kIo, "domain file not found: " + domain.string());
  }
  if (!fs::is_directory(corpus)) {
    throw Error(ErrorCode::kIo, "corpus directory not found: " + corpus.string());
  }
  ValidateConfig(selection);
}

std::vector<Document> LoadCorpus(const fs::path &dir) {
  if (!fs::is_directory(dir)) {
    throw Error(ErrorCode::kIo, "corpus directory not found: " + dir.string());
  }
  std::vector<fs::path> files;
  for (const auto &entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  std::vector<Document> docs;
  for (const fs::path &f : files) {
    docs.push_back(DocumentFromJson(ParseJson(ReadFile(f), f.string())));
  }
  return docs;
}

DomainSpec LoadDomain(const fs::path &path) {
  return DomainSpec::FromJson(ParseJson(ReadFile(path), path.string()));
}

PipelineResult RunPipeline(const DomainSpec &domain, std::vector<Document> corpus,
                           const SelectionConfig &cfg) {
  ValidateConfig(cfg);
  PipelineResult r;
  r.extraction = Stage("extract", [&] { return ExtractCorpus(corpus, domain); });
  r.stats = CorpusStats::FromDocuments(corpus);
  auto relations = Stage("relations", [&] {
    return ApplyRelations(r.extraction.messages, domain.relations,
                          domain.schema);
  });
  r.grid = Stage("grid", [&] {
    return BuildGrid(r.extraction.messages, std::move(relations));
  });
  r.clusters = Stage("cluster", [&] {
    return ClusterInformation(r.extraction.messages, r.stats, cfg.normalization);
  });
  r.selection = Stage("select", [&] {
    return Select(r.clusters, IndexMessages(r.extraction.messages),
                  ComputeBudget(r.stats, cfg));
  });
  r.subgrid = Stage("subgrid", [&] {
    Grid sub = Subgrid(r.grid, r.selection);
    auto violations = CheckGrid(sub);
    if (!violations.empty()) {
      throw InvariantError("sub-grid violates " + violations.front().rule);
    }
    return sub;
  });
  return r;
}

void WritePipelineOutputs(const PipelineResult &result,
                          const SelectionConfig &cfg, const fs::path &dir) {
  WriteFile(dir / "grid.json", DumpJson(GridToJson(result.grid)));
  WriteFile(dir / "grid.dot", ExportDot(result.grid));
  WriteFile(dir / "selection.json",
            DumpJson(SelectionReport(result.clusters, result.selection, cfg,
                                     result.stats)));
  WriteFile(dir / "subgrid.json", DumpJson(GridToJson(result.subgrid)));
  WriteFile(dir / "subgrid.dot", ExportDot(result.subgrid));
  Json diagnostics = Json::array();
  for (const Diagnostic &d : result.extraction.diagnostics) {
    diagnostics.push_back({{"doc_id", d.doc_id},
                           {"sentence", d.sentence},
                           {"message_type", d.message_type},
                           {"reason", d.reason}});
  }
  WriteFile(dir / "diagnostics.json", DumpJson(diagnostics));
}

Grid GoldGrid(const Scenario &scenario, const DomainSpec &domain) {
  const auto &gold = scenario.truth.gold;
  return BuildGrid(gold, ApplyRelations(gold, domain.relations, domain.schema));
}

void WriteScenario(const Scenario &scenario, const ScenarioConfig &cfg,
                   const fs::path &dir) {
  const DomainSpec domain = SimulationDomain();
  WriteFile(dir / "domain.json", DumpJson(domain.ToJson()));
  WriteFile(dir / "scenario.json", DumpJson(cfg.ToJson()));
  fs::create_directories(dir / "corpus");
  for (const Document &d : scenario.corpus) {
    WriteFile(dir / "corpus" / (d.doc_id + ".json"), DumpJson(DocumentToJson(d)));
  }
  WriteFile(dir / "ground_truth.json", DumpJson(scenario.truth.ToJson()));
  WriteFile(dir / "gold_grid.json",
            DumpJson(GridToJson(GoldGrid(scenario, domain))));
  Json manifest = {{"domain", "domain.json"},
                   {"corpus", "corpus"},
                   {"output", "pipeline"},
                   {"compression_rate", 1.0},
                   {"normalization", "global"},
                   {"seed", cfg.rng_seed}};
  WriteFile(dir / "manifest.json", DumpJson(manifest));
}

void WriteEvalReport(const EvalReport &report, const fs::path &dir) {
  WriteFile(dir / "eval_report.json", DumpJson(report.ToJson()));
  WriteFile(dir / "eval_report.txt", report.ToTable());
}

}  // namespace evsum
