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

// Acceptance suite. Prints one [PASS]/[FAIL] line per criterion and exits
// nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "evsum/content.h"
#include "evsum/evaluation.h"
#include "evsum/grid.h"
#include "evsum/pipeline.h"
#include "evsum/relation.h"
#include "evsum/simulator.h"
#include "test_fixtures.h"

namespace fs = std::filesystem;
using namespace evsum;

namespace {

// Tolerances.
constexpr double kFMeasureTolerance = 0.01;  // percentage points
constexpr double kExactP = 1e-12;
constexpr double kMarkovTolerance = 0.05;

constexpr int kBudgetScenarios = 1000;
constexpr int kGridCorpora = 1000;
constexpr int kSubgridTrials = 500;
constexpr int kDiffusionSeeds = 1000;
constexpr int kConstraintTrees = 400;

struct Outcome {
  bool pass = true;
  std::string detail;
};

class Check {
 public:
  void Expect(bool ok, const std::string &what) {
    if (!ok && outcome_.pass) {
      outcome_.pass = false;
      outcome_.detail = what;
    }
  }
  void Note(const std::string &s) {
    if (outcome_.pass) outcome_.detail = s;
  }
  Outcome result() const { return outcome_; }

 private:
  Outcome outcome_;
};

std::string Fmt(const char *format, double a, double b = 0, double c = 0) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), format, a, b, c);
  return buf;
}

// AC1
Outcome FMeasureArithmetic() {
  struct Cell {
    const char *name;
    double pr, rc, fm;
  };
  const Cell cells[] = {{"messages/I", 91.12, 67.79, 77.74},
                        {"messages/II", 42.96, 35.91, 39.12},
                        {"sdrs/I", 89.06, 39.18, 54.42},
                        {"sdrs/II", 30.66, 49.12, 37.76}};
  Check c;
  double worst = 0;
  for (const Cell &cell : cells) {
    double fm = FMeasure(cell.pr, cell.rc);
    double err = std::abs(fm - cell.fm);
    worst = std::max(worst, err);
    c.Expect(err <= kFMeasureTolerance,
             std::string(cell.name) + Fmt(": got %.4f want %.2f", fm, cell.fm));
  }
  c.Note(Fmt("4 pairs, max |error| %.4f pp", worst));
  return c.result();
}

ScenarioConfig PlantedScenario(uint64_t seed) {
  ScenarioConfig cfg;
  cfg.n_sources = 5;
  cfg.timeframes = 1;
  cfg.rng_seed = seed;
  cfg.planted_clusters = {
      {0, 5, {"score", {"rooney", "united"}}},
      {0, 4, {"win", {"united", "chelsea"}}},
      {0, 3, {"injury", {"lampard"}}},
      {0, 2, {"sent_off", {"webb", "drogba"}}},
      {0, 1, {"substitution", {"kaka", "lampard"}}},
  };
  return cfg;
}

// AC2
Outcome PlantedOverlap() {
  Check c;
  const std::vector<double> want_p = {1.0, 0.8, 0.6, 0.4, 0.2};
  const std::vector<std::string> want_shade = {"black", "grey", "grey", "grey",
                                               "white"};
  for (uint64_t seed : {1u, 2u, 3u, 2024u}) {
    Scenario s = Generate(PlantedScenario(seed));
    PipelineResult r = RunPipeline(SimulationDomain(), s.corpus, {1.0, {}});
    c.Expect(r.clusters.size() == 5, "expected 5 clusters");
    if (r.clusters.size() != 5) break;
    for (size_t i = 0; i < 5; ++i) {
      c.Expect(std::abs(r.clusters[i].p() - want_p[i]) < kExactP,
               Fmt("cluster %g has p %g", double(i), r.clusters[i].p()));
      c.Expect(ShadeName(ShadeOf(r.clusters[i]).kind) == want_shade[i],
               "shade mismatch at " + r.clusters[i].id);
    }
    c.Expect(r.selection.entries.size() == 5, "not all clusters selected");
    std::map<std::string, double> p_of;
    for (const auto &cl : r.clusters) p_of[cl.id] = cl.p();
    for (size_t i = 1; i < r.selection.entries.size(); ++i) {
      c.Expect(p_of[r.selection.entries[i - 1].cluster] >
                   p_of[r.selection.entries[i].cluster],
               "selection order is not strictly descending in p");
    }
  }
  c.Note("p {1.0,0.8,0.6,0.4,0.2}, shades B/G/G/G/W, 4 seeds");
  return c.result();
}

// AC3
Outcome BudgetSafety() {
  Check c;
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < kBudgetScenarios; ++trial) {
    int n = 1 + static_cast<int>(rng() % 10);
    std::vector<Document> docs(n);
    std::vector<Message> ms;
    int64_t total = 0;
    for (int d = 0; d < n; ++d) {
      docs[d].doc_id = "d" + std::to_string(d);
      docs[d].pub_time = 0;
      int len = 1 + static_cast<int>(rng() % 40);
      docs[d].sentences = {Tokens(len, "w")};
      total += len;
      int k = static_cast<int>(rng() % 6);
      for (int i = 0; i < k; ++i) {
        ms.push_back(testing::MakeMessage(
            docs[d].doc_id + ".m" + std::to_string(i), "t",
            {std::to_string(rng() % 4)}, "s" + std::to_string(d), rng() % 2,
            docs[d].doc_id, 1 + static_cast<int64_t>(rng() % 30)));
      }
    }
    CorpusStats stats = CorpusStats::FromDocuments(docs);
    SelectionConfig cfg{(1 + rng() % 1000) / 1000.0, Normalization::kGlobal};
    int64_t budget = ComputeBudget(stats, cfg);
    int64_t floor_budget =
        static_cast<int64_t>(std::floor(cfg.compression_rate * total + 1e-9));
    auto clusters = ClusterInformation(ms, stats);
    Selection sel = Select(clusters, IndexMessages(ms), budget);

    c.Expect(budget == floor_budget, "budget is not floor(c * total)");
    c.Expect(sel.spent <= budget, "spent exceeds budget");

    std::vector<testing::NaiveCluster> naive;
    for (const auto &cl : clusters) {
      naive.push_back({cl.id, cl.support_size(), cl.normalizer, cl.ref_time,
                       cl.cost});
    }
    int64_t naive_spent = 0;
    std::vector<std::string> taken;
    for (const auto &e : sel.entries) taken.push_back(e.cluster);
    c.Expect(testing::NaiveGreedy(naive, budget, &naive_spent) == taken,
             "greedy trace differs from naive reimplementation");
    c.Expect(naive_spent == sel.spent, "spent differs from naive");
  }
  c.Note(std::to_string(kBudgetScenarios) + " scenarios");
  return c.result();
}

ScenarioConfig RandomScenario(std::mt19937_64 &rng) {
  static const std::vector<InfoTemplate> infos = {
      {"score", {"rooney", "united"}},   {"score", {"ronaldo", "united"}},
      {"score", {"henry", "arsenal"}},   {"win", {"united", "chelsea"}},
      {"win", {"chelsea", "united"}},    {"injury", {"gerrard"}},
      {"injury", {"lampard"}},           {"sent_off", {"webb", "gerrard"}},
      {"substitution", {"kaka", "gerrard"}},
      {"substitution", {"messi", "lampard"}},
  };
  ScenarioConfig cfg;
  cfg.n_sources = 1 + static_cast<int>(rng() % 5);
  cfg.timeframes = 1 + static_cast<int>(rng() % 4);
  cfg.evolution = rng() % 2 ? Evolution::kLinear : Evolution::kNonlinear;
  cfg.rng_seed = rng();
  cfg.filler_sentences = static_cast<int>(rng() % 3);
  int planted = static_cast<int>(rng() % 6);
  std::set<std::pair<int, size_t>> used;
  for (int i = 0; i < planted; ++i) {
    int t = static_cast<int>(rng() % cfg.timeframes);
    size_t info = rng() % infos.size();
    if (!used.emplace(t, info).second) continue;
    int support = 1 + static_cast<int>(rng() % cfg.n_sources);
    cfg.planted_clusters.push_back({t, support, infos[info]});
  }
  return cfg;
}

// AC4
Outcome GridInvariants() {
  Check c;
  std::mt19937_64 rng(4);
  const DomainSpec &domain = SimulationDomain();
  size_t edges_seen = 0;
  for (int trial = 0; trial < kGridCorpora; ++trial) {
    Scenario s = Generate(RandomScenario(rng));
    PipelineResult r = RunPipeline(domain, s.corpus, {1.0, {}});
    const Grid &g = r.grid;
    c.Expect(testing::NaiveIsAcyclic(g), "cycle found by naive DFS");
    for (const RelationInstance &e : g.edges()) {
      const Message *f = g.FindNode(e.from);
      const Message *t = g.FindNode(e.to);
      c.Expect(f && t, "dangling edge");
      if (!f || !t) continue;
      if (e.type == RelationType::kSynchronic) {
        c.Expect(f->source != t->source && f->ref_time == t->ref_time,
                 "bad synchronic edge " + e.from + "->" + e.to);
      } else {
        c.Expect(f->source == t->source && f->ref_time < t->ref_time,
                 "bad diachronic edge " + e.from + "->" + e.to);
      }
    }
    edges_seen += g.edges().size();
  }
  c.Expect(edges_seen > 0, "no edges generated");
  c.Note(std::to_string(kGridCorpora) + " corpora, " +
         std::to_string(edges_seen) + " edges");
  return c.result();
}

// AC5
Outcome SubgridClosure() {
  Check c;
  std::mt19937_64 rng(5);
  const DomainSpec &domain = SimulationDomain();
  for (int trial = 0; trial < kSubgridTrials; ++trial) {
    Scenario s = Generate(RandomScenario(rng));
    SelectionConfig cfg{(1 + rng() % 100) / 100.0, Normalization::kGlobal};
    PipelineResult r = RunPipeline(domain, s.corpus, cfg);

    // Also a random selection, not only the greedy one.
    Selection random_sel;
    MessageIndex index = IndexMessages(r.extraction.messages);
    for (const auto &cl : r.clusters) {
      if (rng() % 2) {
        random_sel.entries.push_back({cl.id, Representative(cl, index)});
      }
    }
    for (const Selection *sel : {&r.selection, &random_sel}) {
      Grid sub = Subgrid(r.grid, *sel);
      std::set<std::string> keep;
      for (const auto &e : sel->entries) keep.insert(e.representative);
      auto [nodes, edges] = testing::NaiveInduced(r.grid, keep);
      std::set<std::string> got_nodes;
      for (const auto &[id, m] : sub.nodes()) got_nodes.insert(id);
      std::set<RelationInstance> got_edges(sub.edges().begin(),
                                           sub.edges().end());
      c.Expect(got_nodes == nodes, "sub-grid nodes differ from induced");
      c.Expect(got_edges == edges, "sub-grid edges differ from induced");
      c.Expect(got_edges.size() == sub.edges().size(), "duplicate edges");
      c.Expect(sub.nodes().size() == sel->entries.size(),
               "a cluster contributed more or fewer than one node");
      c.Expect(CheckGrid(sub).empty(), "sub-grid violates grid invariants");
    }
  }
  c.Note(std::to_string(kSubgridTrials) + " corpora x 2 selections");
  return c.result();
}

// Expected final support under binomial adoption steps, by direct
// enumeration of the Markov chain over adopter counts.
double MarkovExpectedSupport(int n, int steps, double q) {
  std::vector<double> dist(n + 1, 0.0);
  dist[1] = 1.0;
  auto choose = [](int a, int b) {
    double r = 1;
    for (int i = 1; i <= b; ++i) r = r * (a - b + i) / i;
    return r;
  };
  for (int s = 0; s < steps; ++s) {
    std::vector<double> next(n + 1, 0.0);
    for (int k = 0; k <= n; ++k) {
      if (dist[k] == 0) continue;
      int m = n - k;
      for (int j = 0; j <= m; ++j) {
        next[k + j] += dist[k] * choose(m, j) * std::pow(q, j) *
                       std::pow(1 - q, m - j);
      }
    }
    dist = next;
  }
  double e = 0;
  for (int k = 0; k <= n; ++k) e += k * dist[k];
  return e;
}

ScenarioConfig DiffusionScenario(int n, int T, double q, uint64_t seed) {
  ScenarioConfig cfg;
  cfg.n_sources = n;
  cfg.timeframes = T;
  cfg.rng_seed = seed;
  cfg.filler_sentences = 1;
  cfg.diffusion = DiffusionConfig{static_cast<int>(seed % n), q,
                                  {"score", {"rooney", "united"}}};
  return cfg;
}

// AC6
Outcome DiffusionMonotonicity() {
  Check c;
  for (uint64_t seed = 0; seed < kDiffusionSeeds; ++seed) {
    Scenario s = Diffuse(DiffusionScenario(5, 8, 0.3, seed));
    const auto &sup = s.truth.diffusion_support;
    for (size_t t = 1; t < sup.size(); ++t) {
      c.Expect(sup[t] >= sup[t - 1],
               "support decreased for seed " + std::to_string(seed));
    }
  }
  for (uint64_t seed = 0; seed < 50; ++seed) {
    auto one = Diffuse(DiffusionScenario(4, 6, 1.0, seed)).truth.diffusion_support;
    c.Expect(one[0] == 1 && one[1] == 4 && one.back() == 4,
             "q=1 does not saturate at step 2");
    auto none = Diffuse(DiffusionScenario(4, 6, 0.0, seed)).truth.diffusion_support;
    for (int64_t v : none) c.Expect(v == 1, "q=0 support left 1");
  }

  // Monte Carlo through the full pipeline for the final timeframe.
  const int n = 4, T = 10;
  double sum = 0;
  const DomainSpec &domain = SimulationDomain();
  for (uint64_t seed = 0; seed < kDiffusionSeeds; ++seed) {
    Scenario s = Diffuse(DiffusionScenario(n, T, 0.5, 10000 + seed));
    sum += static_cast<double>(s.truth.diffusion_support.back());
    if (seed < 20) {
      PipelineResult r = RunPipeline(domain, s.corpus, {1.0, {}});
      std::string id = "score(rooney,united)@t=" + std::to_string(T - 1);
      bool found = false;
      for (const auto &cl : r.clusters) {
        if (cl.id == id) {
          found = true;
          c.Expect(cl.support_size() == s.truth.diffusion_support.back(),
                   "pipeline support differs from ground truth");
        }
      }
      c.Expect(found, "diffused cluster missing at final timeframe");
    }
  }
  double mean = sum / kDiffusionSeeds;
  double exact = MarkovExpectedSupport(n, T - 1, 0.5);
  c.Expect(std::abs(mean - exact) <= kMarkovTolerance,
           Fmt("MC mean %.4f vs chain %.4f", mean, exact));
  c.Expect(mean >= 3.9, Fmt("MC mean %.4f below 3.9", mean));
  c.Note(Fmt("MC mean %.4f, chain %.4f, |diff| %.4f", mean, exact,
             std::abs(mean - exact)));
  return c.result();
}

ConstraintExpr RandomExpr(std::mt19937_64 &rng, int depth) {
  const std::vector<std::string> slots = {"x", "y"};
  const std::vector<std::string> concepts = {"Person", "Offender", "Hostage"};
  auto ref = [&] {
    return SlotRef{rng() % 2 ? Side::kA : Side::kB, slots[rng() % 2]};
  };
  int pick = depth <= 1 ? static_cast<int>(rng() % 4)
                        : static_cast<int>(rng() % 7);
  switch (pick) {
    case 0:
      return ConstraintExpr::True();
    case 1:
      return ConstraintExpr::Eq(ref(), ref());
    case 2:
      return ConstraintExpr::Neq(ref(), ref());
    case 3:
      return ConstraintExpr::Isa(ref(), concepts[rng() % 3]);
    case 4:
      return ConstraintExpr::Not(RandomExpr(rng, depth - 1));
    default: {
      std::vector<ConstraintExpr> kids;
      int k = 1 + static_cast<int>(rng() % 3);
      for (int i = 0; i < k; ++i) kids.push_back(RandomExpr(rng, depth - 1));
      return pick == 5 ? ConstraintExpr::And(std::move(kids))
                       : ConstraintExpr::Or(std::move(kids));
    }
  }
}

// Truth-table evaluator over raw slot values and raw parent links.
bool Brute(const ConstraintExpr &c, const std::vector<std::string> &a,
           const std::vector<std::string> &b, const Ontology &o) {
  using Op = ConstraintExpr::Op;
  auto val = [&](const SlotRef &r) {
    const auto &side = r.side == Side::kA ? a : b;
    return side[r.slot == "x" ? 0 : 1];
  };
  switch (c.op) {
    case Op::kTrue:
      return true;
    case Op::kEq:
      return val(c.lhs) == val(c.rhs);
    case Op::kNeq:
      return val(c.lhs) != val(c.rhs);
    case Op::kIsa:
      return testing::NaiveSubsumes(o.concepts(), c.concept_name,
                                    o.instances().at(val(c.lhs)));
    case Op::kAnd:
      for (const auto &x : c.children) {
        if (!Brute(x, a, b, o)) return false;
      }
      return true;
    case Op::kOr:
      for (const auto &x : c.children) {
        if (Brute(x, a, b, o)) return true;
      }
      return false;
    case Op::kNot:
      return !Brute(c.children[0], a, b, o);
  }
  return false;
}

int Depth(const ConstraintExpr &c) {
  int d = 0;
  for (const auto &x : c.children) d = std::max(d, Depth(x));
  return d + 1;
}

// AC7
Outcome ConstraintSoundness() {
  Check c;
  Schema s = testing::HostageSchema();
  const std::vector<std::string> inst = {"person1", "offender1", "hostage1"};
  std::mt19937_64 rng(7);
  int max_depth = 0;
  int64_t evaluations = 0;
  using CE = ConstraintExpr;
  for (int trial = 0; trial < kConstraintTrees; ++trial) {
    CE p = RandomExpr(rng, 1 + static_cast<int>(rng() % 6));
    CE q = RandomExpr(rng, 1 + static_cast<int>(rng() % 6));
    max_depth = std::max({max_depth, Depth(p), Depth(q)});
    c.Expect(Depth(p) <= 6 && Depth(q) <= 6, "tree deeper than 6");
    const CE rewrites[][2] = {
        {CE::Not(CE::And({p, q})), CE::Or({CE::Not(p), CE::Not(q)})},
        {CE::Not(CE::Or({p, q})), CE::And({CE::Not(p), CE::Not(q)})},
        {CE::Not(CE::Not(p)), p},
    };
    for (int w = 0; w < 81; ++w) {
      std::vector<std::string> a = {inst[w % 3], inst[(w / 3) % 3]};
      std::vector<std::string> b = {inst[(w / 9) % 3], inst[(w / 27) % 3]};
      Message ma = testing::MakeMessage("a", "meet", a, "s1", 1);
      Message mb = testing::MakeMessage("b", "meet", b, "s2", 1);
      c.Expect(EvalConstraint(p, ma, mb, s) == Brute(p, a, b, s.ontology()),
               "evaluator disagrees with truth table: " + ConstraintToString(p));
      for (const auto &rw : rewrites) {
        c.Expect(EvalConstraint(rw[0], ma, mb, s) ==
                     EvalConstraint(rw[1], ma, mb, s),
                 "rewrite changed result: " + ConstraintToString(rw[0]));
      }
      evaluations += 7;
    }
  }
  c.Note(std::to_string(kConstraintTrees) + " tree pairs, max depth " +
         std::to_string(max_depth) + ", " + std::to_string(evaluations) +
         " evaluations");
  return c.result();
}

std::map<std::string, std::string> ReadTree(const fs::path &root) {
  std::map<std::string, std::string> files;
  for (const auto &e : fs::recursive_directory_iterator(root)) {
    if (e.is_regular_file()) {
      files[fs::relative(e.path(), root).string()] = ReadFile(e.path());
    }
  }
  return files;
}

// AC8
Outcome Determinism() {
  Check c;
  ScenarioConfig cfg = PlantedScenario(11);
  cfg.timeframes = 3;
  cfg.planted_clusters[1].timeframe = 1;
  cfg.planted_clusters[2].timeframe = 2;
  cfg.diffusion = DiffusionConfig{0, 0.5, {"score", {"henry", "arsenal"}}};
  fs::path base = fs::temp_directory_path() / "evsum_acceptance_determinism";
  fs::remove_all(base);
  std::vector<std::map<std::string, std::string>> runs;
  for (int run = 0; run < 2; ++run) {
    fs::path dir = base / ("run" + std::to_string(run));
    WriteScenario(Generate(cfg), cfg, dir);
    RunManifest m = RunManifest::Load(dir / "manifest.json");
    m.selection.compression_rate = 0.4;
    m.Validate();
    PipelineResult r =
        RunPipeline(LoadDomain(m.domain), LoadCorpus(m.corpus), m.selection);
    WritePipelineOutputs(r, m.selection, m.output);
    runs.push_back(ReadTree(dir));
  }
  c.Expect(!runs[0].empty(), "no output files");
  c.Expect(runs[0] == runs[1], "outputs differ between runs");
  fs::remove_all(base);
  c.Note(std::to_string(runs[0].size()) + " files byte-identical");
  return c.result();
}

// AC9
Outcome SelfEvaluation() {
  Check c;
  ScenarioConfig cfg = PlantedScenario(9);
  cfg.timeframes = 3;
  cfg.planted_clusters[3].timeframe = 2;
  cfg.planted_clusters[4].timeframe = 2;
  cfg.diffusion = DiffusionConfig{1, 0.5, {"score", {"ronaldo", "chelsea"}}};
  Scenario s = Generate(cfg);
  Grid gold = GoldGrid(s, SimulationDomain());
  c.Expect(!gold.edges().empty(), "gold grid has no relations");
  EvalReport self = EvaluateRun(gold, gold);
  for (const EvalRow *row : {&self.messages, &self.sdrs}) {
    c.Expect(row->precision == 100.0 && row->recall == 100.0 &&
                 row->f_measure == 100.0,
             "self-evaluation is not 100 everywhere");
  }
  EvalReport empty = EvaluateRun(gold, Grid());
  for (const EvalRow *row : {&empty.messages, &empty.sdrs}) {
    c.Expect(row->precision == 0.0 && row->recall == 0.0,
             "empty prediction is not 0");
  }
  c.Note(std::to_string(gold.nodes().size()) + " messages, " +
         std::to_string(gold.edges().size()) + " relations");
  return c.result();
}

}  // namespace

int main() {
  struct Criterion {
    const char *id;
    const char *name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {"AC1", "F-measure arithmetic", FMeasureArithmetic},
      {"AC2", "planted-overlap fidelity", PlantedOverlap},
      {"AC3", "budget safety", BudgetSafety},
      {"AC4", "grid invariants", GridInvariants},
      {"AC5", "sub-grid closure", SubgridClosure},
      {"AC6", "diffusion monotonicity", DiffusionMonotonicity},
      {"AC7", "constraint evaluator soundness", ConstraintSoundness},
      {"AC8", "determinism", Determinism},
      {"AC9", "self-evaluation identity", SelfEvaluation},
  };
  int failures = 0;
  for (const Criterion &cr : criteria) {
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = cr.run();
    } catch (const std::exception &e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    double ms = std::chrono::duration<double, std::milli>(
                    std::chrono::steady_clock::now() - start)
                    .count();
    std::printf("[%s] %s %s: %s (%.0f ms)\n", o.pass ? "PASS" : "FAIL", cr.id,
                cr.name, o.detail.c_str(), ms);
    failures += o.pass ? 0 : 1;
  }
  std::fflush(stdout);
  return failures == 0 ? 0 : 1;
}
