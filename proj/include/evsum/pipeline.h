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

// End-to-end stages used by the evsum command-line tool:
//
//   preprocess -> extract -> relations -> grid -> cluster -> select -> subgrid

#ifndef EVSUM_PIPELINE_H_
#define EVSUM_PIPELINE_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "evsum/content.h"
#include "evsum/domain.h"
#include "evsum/evaluation.h"
#include "evsum/grid.h"
#include "evsum/json_io.h"
#include "evsum/simulator.h"
#include "evsum/text.h"

namespace evsum {

// {"domain","corpus","output","compression_rate","normalization","seed"}.
// Relative paths resolve against the manifest's directory.
struct RunManifest {
  std::filesystem::path domain;
  std::filesystem::path corpus;  // directory of *.json documents
  std::filesystem::path output;
  SelectionConfig selection;
  uint64_t seed = 0;

  static RunManifest FromJson(const Json &j, const std::filesystem::path &base);
  static RunManifest Load(const std::filesystem::path &path);
  Json ToJson() const;

  // Throws Error(kIo) for missing domain/corpus paths and Error(kValidation)
  // for a bad compression rate.
  void Validate() const;
};

// Every *.json file in `dir`, in file-name order. Empty directory gives an
// empty corpus.
std::vector<Document> LoadCorpus(const std::filesystem::path &dir);

DomainSpec LoadDomain(const std::filesystem::path &path);

struct PipelineResult {
  CorpusStats stats;
  ExtractionResult extraction;
  Grid grid;
  std::vector<InformationCluster> clusters;
  Selection selection;
  Grid subgrid;
};

// Errors are rethrown prefixed with the failing stage name.
PipelineResult RunPipeline(const DomainSpec &domain, std::vector<Document> corpus,
                           const SelectionConfig &cfg);

// grid.json, grid.dot, selection.json, subgrid.json, subgrid.dot and
// diagnostics.json under `dir`.
void WritePipelineOutputs(const PipelineResult &result,
                          const SelectionConfig &cfg,
                          const std::filesystem::path &dir);

// Gold grid of a scenario: its planted messages joined by the domain
// relations.
Grid GoldGrid(const Scenario &scenario, const DomainSpec &domain);

// domain.json, corpus/<doc_id>.json, ground_truth.json, gold_grid.json,
// scenario.json and manifest.json (pipeline output goes to "pipeline/").
void WriteScenario(const Scenario &scenario, const ScenarioConfig &cfg,
                   const std::filesystem::path &dir);

// eval_report.json and eval_report.txt under `dir`.
void WriteEvalReport(const EvalReport &report, const std::filesystem::path &dir);

}  // namespace evsum

#endif  // EVSUM_PIPELINE_H_
