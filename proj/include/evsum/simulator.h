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

// Synthetic multi-source corpora of an evolving football match.
//
// Pieces of information are planted as identical template sentences in a
// chosen number of sources, so the overlap structure (black, grey and white
// areas) is known exactly. An optional diffusion process starts a piece of
// information in one source and lets the others adopt it over time.

#ifndef EVSUM_SIMULATOR_H_
#define EVSUM_SIMULATOR_H_

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "evsum/content.h"
#include "evsum/domain.h"
#include "evsum/json_io.h"
#include "evsum/message.h"
#include "evsum/text.h"

namespace evsum {

// mt19937_64 with distribution code of our own, so that outputs are
// identical across standard library implementations.
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  double Uniform();                // [0, 1)
  bool Bernoulli(double p);        // p <= 0 never, p >= 1 always
  uint64_t Index(uint64_t bound);  // uniform in [0, bound), bound > 0

  template <typename T>
  void Shuffle(std::vector<T> &v) {
    for (size_t i = v.size(); i > 1; --i) {
      std::swap(v[i - 1], v[Index(i)]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

enum class Emission { kSynchronous, kAsynchronous };
enum class Evolution { kLinear, kNonlinear };

struct InfoTemplate {
  std::string type;
  std::vector<std::string> args;

  friend bool operator==(const InfoTemplate &, const InfoTemplate &) = default;
};

struct PlantedCluster {
  int timeframe = 0;
  int support = 1;
  InfoTemplate info;
};

struct DiffusionConfig {
  int seed_source = 0;
  double q = 0.0;  // per-step adoption probability of each non-adopter
  InfoTemplate info;
};

struct ScenarioConfig {
  int n_sources = 1;
  int timeframes = 1;
  Emission emission = Emission::kSynchronous;
  Evolution evolution = Evolution::kLinear;
  std::vector<PlantedCluster> planted_clusters;
  std::optional<DiffusionConfig> diffusion;
  uint64_t rng_seed = 0;
  int filler_sentences = 2;       // per document
  double drop_probability = 0.0;  // per planted sentence, extraction noise

  static ScenarioConfig FromJson(const Json &j);
  Json ToJson() const;
};

// Throws Error(kValidation) for out-of-range fields. Feasibility against the
// emitted documents is checked by Generate.
void ValidateScenario(const ScenarioConfig &cfg);

struct ExpectedCluster {
  InfoTemplate info;
  int timeframe = 0;
  TimePoint ref_time = 0;
  std::vector<std::string> support;  // doc ids, sorted
  int64_t n_global = 1;
  int64_t n_timeframe = 1;
  ShadeKind shade = ShadeKind::kWhite;  // under global normalization

  double p() const { return double(support.size()) / double(n_global); }
  double p_timeframe() const {
    return double(support.size()) / double(n_timeframe);
  }
};

struct GroundTruth {
  int64_t n_documents = 0;
  std::vector<ExpectedCluster> clusters;   // planted first, then diffusion
  std::vector<int64_t> diffusion_support;  // per timeframe, if configured
  std::vector<Message> gold;               // every planted sentence

  Json ToJson() const;
};

struct Scenario {
  std::vector<Document> corpus;  // doc_id order, not yet preprocessed
  GroundTruth truth;
};

// The fixed football domain all synthetic corpora are written in.
DomainSpec SimulationDomain();

// Source name for index i: "source01", "source02", ...
std::string SourceName(int index);

// Adoption sets per timeframe: adopters[t][s] is true iff source s reports
// the diffused information at timeframe t. Support never decreases.
std::vector<std::vector<bool>> DiffusionTrajectory(int n_sources,
                                                   int timeframes,
                                                   int seed_source, double q,
                                                   Rng &rng);

// Throws Error(kValidation) when a planted support exceeds the documents
// emitted at its timeframe, or when diffusion is combined with asynchronous
// emission.
Scenario Generate(const ScenarioConfig &cfg);

// Generate() for a configuration that must carry a diffusion block.
Scenario Diffuse(const ScenarioConfig &cfg);

}  // namespace evsum

#endif  // EVSUM_SIMULATOR_H_
