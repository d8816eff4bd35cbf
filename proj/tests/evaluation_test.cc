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

#include "evsum/evaluation.h"

#include <cmath>
#include <random>

#include "doctest.h"
#include "evsum/pipeline.h"
#include "test_fixtures.h"

using namespace evsum;
using evsum::testing::MakeMessage;

namespace {

// Naive scorer: quadratic one-to-one matching with a used flag per gold item.
template <typename T>
MatchCounts NaiveMatch(const std::vector<T> &gold, const std::vector<T> &pred) {
  std::vector<bool> used(gold.size(), false);
  MatchCounts m;
  for (const T &p : pred) {
    bool hit = false;
    for (size_t i = 0; i < gold.size(); ++i) {
      if (!used[i] && gold[i] == p) {
        used[i] = true;
        hit = true;
        break;
      }
    }
    if (hit) {
      ++m.tp;
    } else {
      ++m.fp;
    }
  }
  m.fn = static_cast<int64_t>(gold.size()) - m.tp;
  return m;
}

using NaiveMsg = std::string;
using NaiveEdge = std::string;

NaiveMsg Flatten(const Message &m) {
  std::string s = m.doc_id + "|" + m.type + "|";
  for (const auto &a : m.args) s += a + ",";
  return s + "|" + std::to_string(m.ref_time);
}

std::vector<NaiveMsg> FlatNodes(const Grid &g) {
  std::vector<NaiveMsg> out;
  for (const auto &[id, m] : g.nodes()) out.push_back(Flatten(m));
  return out;
}

std::vector<NaiveEdge> FlatEdges(const Grid &g) {
  std::vector<NaiveEdge> out;
  for (const RelationInstance &e : g.edges()) {
    out.push_back(e.spec + "#" + Flatten(*g.FindNode(e.from)) + "#" +
                  Flatten(*g.FindNode(e.to)));
  }
  return out;
}

}  // namespace

TEST_CASE("match examples") {
  std::vector<Message> gold = {
      MakeMessage("g1", "score", {"rooney", "united"}, "bbc", 1),
      MakeMessage("g2", "score", {"ronaldo", "united"}, "bbc", 1)};
  CHECK(MatchMessages(gold, gold) == MatchCounts{2, 0, 0});
  CHECK(MatchMessages(gold, {}) == MatchCounts{0, 0, 2});
  std::vector<Message> dup = {gold[0], gold[0]};
  dup[1].id = "other";
  CHECK(MatchMessages({gold[0]}, dup) == MatchCounts{1, 1, 0});
}

TEST_CASE("precision and recall") {
  CHECK(Precision({2, 2, 0}) == doctest::Approx(50.0));
  CHECK(Precision({0, 0, 5}) == 0.0);
  CHECK(Recall({3, 0, 1}) == doctest::Approx(75.0));
  CHECK(Recall({0, 3, 0}) == 0.0);
}

TEST_CASE("published F-measures") {
  CHECK(std::abs(FMeasure(91.12, 67.79) - 77.74) <= 0.01);
  CHECK(std::abs(FMeasure(42.96, 35.91) - 39.12) <= 0.01);
  CHECK(std::abs(FMeasure(89.06, 39.18) - 54.42) <= 0.01);
  CHECK(std::abs(FMeasure(30.66, 49.12) - 37.76) <= 0.01);
  CHECK(FMeasure(0.0, 0.0) == 0.0);
}

TEST_CASE("f-measure properties") {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> u(0.0, 100.0);
  for (int i = 0; i < 1000; ++i) {
    double p = u(rng), r = u(rng);
    CHECK(FMeasure(p, r) == doctest::Approx(FMeasure(r, p)));
    CHECK(FMeasure(p, r) <= std::max(p, r) + 1e-9);
    CHECK(FMeasure(p, p) == doctest::Approx(p));
    if (p > 0 && r > 0) {
      CHECK(FMeasure(p, r) == doctest::Approx(1.0 / ((1.0 / p + 1.0 / r) / 2.0)));
    }
  }
}

TEST_CASE("self evaluation and empty prediction") {
  ScenarioConfig cfg;
  cfg.n_sources = 4;
  cfg.timeframes = 3;
  cfg.rng_seed = 5;
  cfg.planted_clusters = {{0, 4, {"score", {"rooney", "united"}}},
                          {1, 2, {"win", {"chelsea", "arsenal"}}}};
  cfg.diffusion = DiffusionConfig{0, 0.5, {"score", {"henry", "arsenal"}}};
  Scenario s = Generate(cfg);
  Grid gold = GoldGrid(s, SimulationDomain());
  REQUIRE_FALSE(gold.edges().empty());
  EvalReport self = EvaluateRun(gold, gold);
  for (const EvalRow *row : {&self.messages, &self.sdrs}) {
    CHECK(row->precision == 100.0);
    CHECK(row->recall == 100.0);
    CHECK(row->f_measure == 100.0);
  }
  EvalReport empty = EvaluateRun(gold, Grid());
  CHECK(empty.messages.precision == 0.0);
  CHECK(empty.messages.recall == 0.0);
  CHECK(empty.sdrs.recall == 0.0);
  CHECK(empty.messages.counts.fn ==
        static_cast<int64_t>(gold.nodes().size()));
}

TEST_CASE("noise scenario equals naive rescoring") {
  ScenarioConfig cfg;
  cfg.n_sources = 5;
  cfg.timeframes = 4;
  cfg.rng_seed = 17;
  cfg.drop_probability = 0.3;
  cfg.planted_clusters = {{0, 5, {"score", {"rooney", "united"}}},
                          {1, 3, {"win", {"chelsea", "arsenal"}}},
                          {2, 4, {"injury", {"gerrard"}}},
                          {3, 2, {"substitution", {"kaka", "gerrard"}}}};
  cfg.diffusion = DiffusionConfig{2, 0.5, {"score", {"henry", "arsenal"}}};
  Scenario s = Generate(cfg);
  const DomainSpec &domain = SimulationDomain();
  Grid gold = GoldGrid(s, domain);
  PipelineResult r = RunPipeline(domain, s.corpus, {});
  EvalReport report = EvaluateRun(gold, r.grid);

  MatchCounts m = NaiveMatch(FlatNodes(gold), FlatNodes(r.grid));
  MatchCounts e = NaiveMatch(FlatEdges(gold), FlatEdges(r.grid));
  CHECK(report.messages.counts == m);
  CHECK(report.sdrs.counts == e);
  CHECK(report.messages.precision == doctest::Approx(Precision(m)));
  CHECK(report.messages.recall < 100.0);  // noise removed some sentences
  CHECK(report.messages.precision == 100.0);
}

TEST_CASE("report table layout") {
  EvalReport r;
  r.messages = MakeRow({1, 1, 0});
  std::string t = r.ToTable();
  CHECK(t.find("| Messages | Pr :  50.00% |") != std::string::npos);
  CHECK(t.find("FM :   0.00%") != std::string::npos);
}
