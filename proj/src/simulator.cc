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

#include "evsum/simulator.h"

#include <algorithm>
#include <cstdio>
#include <map>

#include "evsum/error.h"

namespace evsum {

namespace {

constexpr const char *kDomainJson = R"json({
  "concepts": [
    {"name": "Person"},
    {"name": "Player", "parent": "Person"},
    {"name": "Referee", "parent": "Person"},
    {"name": "Team"}
  ],
  "instances": {
    "rooney": "Player", "ronaldo": "Player", "gerrard": "Player",
    "henry": "Player", "lampard": "Player", "drogba": "Player",
    "messi": "Player", "kaka": "Player",
    "collina": "Referee", "webb": "Referee",
    "united": "Team", "liverpool": "Team", "arsenal": "Team",
    "chelsea": "Team", "milan": "Team", "barcelona": "Team"
  },
  "message_types": [
    {"name": "score", "slots": [{"slot": "scorer", "concept": "Player"},
                                {"slot": "team", "concept": "Team"}]},
    {"name": "win", "slots": [{"slot": "winner", "concept": "Team"},
                              {"slot": "loser", "concept": "Team"}]},
    {"name": "injury", "slots": [{"slot": "player", "concept": "Player"}]},
    {"name": "sent_off", "slots": [{"slot": "referee", "concept": "Referee"},
                                   {"slot": "player", "concept": "Player"}]},
    {"name": "substitution", "slots": [{"slot": "player_in", "concept": "Player"},
                                       {"slot": "player_out", "concept": "Player"}]}
  ],
  "abbreviations": ["Mr.", "Dr.", "St."],
  "gazetteer": {
    "Rooney": "rooney", "Ronaldo": "ronaldo", "Gerrard": "gerrard",
    "Henry": "henry", "Lampard": "lampard", "Drogba": "drogba",
    "Messi": "messi", "Kaka": "kaka",
    "Collina": "collina", "Webb": "webb",
    "Manchester United": "united", "United": "united",
    "Liverpool": "liverpool", "Arsenal": "arsenal", "Chelsea": "chelsea",
    "AC Milan": "milan", "Barcelona": "barcelona"
  },
  "patterns": [
    {"message_type": "score", "triggers": ["scored"],
     "bindings": [{"slot": "scorer", "concept": "Player", "rule": "first-left-of-trigger"},
                  {"slot": "team", "concept": "Team", "rule": "first-right-of-trigger"}]},
    {"message_type": "win", "triggers": ["defeated", "beat"],
     "bindings": [{"slot": "winner", "concept": "Team", "rule": "first-left-of-trigger"},
                  {"slot": "loser", "concept": "Team", "rule": "first-right-of-trigger"}]},
    {"message_type": "injury", "triggers": ["injured"],
     "bindings": [{"slot": "player", "concept": "Player", "rule": "first-left-of-trigger"}]},
    {"message_type": "sent_off", "triggers": ["dismissed"],
     "bindings": [{"slot": "referee", "concept": "Referee", "rule": "first-left-of-trigger"},
                  {"slot": "player", "concept": "Player", "rule": "first-right-of-trigger"}]},
    {"message_type": "substitution", "triggers": ["replaced"],
     "bindings": [{"slot": "player_in", "concept": "Player", "rule": "first-left-of-trigger"},
                  {"slot": "player_out", "concept": "Player", "rule": "first-right-of-trigger"}]}
  ],
  "relations": [
    {"name": "agreement", "type": "synchronic", "pairs": [["score", "score"]],
     "constraint": {"op": "and", "args": [{"op": "eq", "args": ["a.scorer", "b.scorer"]},
                                          {"op": "eq", "args": ["a.team", "b.team"]}]}},
    {"name": "disagreement", "type": "synchronic", "pairs": [["score", "score"]],
     "constraint": {"op": "and", "args": [{"op": "eq", "args": ["a.team", "b.team"]},
                                          {"op": "neq", "args": ["a.scorer", "b.scorer"]}]}},
    {"name": "result_agreement", "type": "synchronic", "pairs": [["win", "win"]],
     "constraint": {"op": "and", "args": [{"op": "eq", "args": ["a.winner", "b.winner"]},
                                          {"op": "eq", "args": ["a.loser", "b.loser"]}]}},
    {"name": "injury_agreement", "type": "synchronic", "pairs": [["injury", "injury"]],
     "constraint": {"op": "eq", "args": ["a.player", "b.player"]}},
    {"name": "stability", "type": "diachronic",
     "pairs": [["score", "score"]],
     "constraint": {"op": "and", "args": [{"op": "eq", "args": ["a.scorer", "b.scorer"]},
                                          {"op": "eq", "args": ["a.team", "b.team"]}]}},
    {"name": "replacement", "type": "diachronic",
     "pairs": [["injury", "substitution"], ["sent_off", "substitution"]],
     "constraint": {"op": "eq", "args": ["a.player", "b.player_out"]}},
    {"name": "antithesis", "type": "diachronic", "pairs": [["win", "win"]],
     "constraint": {"op": "and", "args": [{"op": "eq", "args": ["a.winner", "b.loser"]},
                                          {"op": "isa", "args": ["b.winner", "Team"]}]}}
  ]
})json";

// Surface realization per message type; {slot} is replaced by the
// instance's gazetteer surface form.
const std::map<std::string, std::string> &SentenceTemplates() {
  static const auto *templates = new std::map<std::string, std::string>{
      {"score", "{scorer} scored for {team}."},
      {"win", "{winner} defeated {loser}."},
      {"injury", "Reports said {player} was injured."},
      {"sent_off", "Referee {referee} dismissed {player}."},
      {"substitution", "{player_in} replaced {player_out}."},
  };
  return *templates;
}

// Contain no trigger words and no gazetteer surface forms.
const std::vector<std::string> &FillerSentences() {
  static const auto *fillers = new std::vector<std::string>{
      "The crowd cheered loudly.",
      "Weather conditions were mild.",
      "Fans sang throughout the evening.",
      "The stadium was nearly full.",
      "Both coaches discussed tactics before kickoff.",
      "Tickets sold out within hours.",
      "The pitch looked heavy after rain.",
      "Commentators praised the tempo of play.",
  };
  return *fillers;
}

const char *EmissionName(Emission e) {
  return e == Emission::kSynchronous ? "synchronous" : "asynchronous";
}

const char *EvolutionName(Evolution e) {
  return e == Evolution::kLinear ? "linear" : "nonlinear";
}

InfoTemplate InfoFromJson(const Json &j) {
  InfoTemplate info;
  info.type = RequireString(j, "type", "message template");
  for (const Json &a : RequireArray(j, "args", "message template")) {
    if (!a.is_string()) {
      throw ParseError("message template args must be strings", 0, 0);
    }
    info.args.push_back(a.get<std::string>());
  }
  return info;
}

Json InfoToJson(const InfoTemplate &info) {
  return {{"type", info.type}, {"args", info.args}};
}

std::string Realize(const InfoTemplate &info, const DomainSpec &domain) {
  const MessageTypeSpec *spec = domain.schema.FindType(info.type);
  std::string text = SentenceTemplates().at(info.type);
  for (size_t i = 0; i < spec->slots.size(); ++i) {
    const std::string key = "{" + spec->slots[i].name + "}";
    const std::string *surface = domain.gazetteer.SurfaceOf(info.args[i]);
    size_t pos = text.find(key);
    text.replace(pos, key.size(), *surface);
  }
  return text;
}

void CheckInfo(const InfoTemplate &info, const DomainSpec &domain) {
  Message probe;
  probe.id = "probe";
  probe.type = info.type;
  probe.args = info.args;
  auto violations = ValidateMessage(domain.schema, probe);
  if (!violations.empty()) {
    throw ValidationError("scenario message " + Predicate(probe) + ": " +
                          (violations.front().slot.empty()
                               ? ""
                               : "slot " + violations.front().slot + ": ") +
                          violations.front().reason);
  }
  for (const std::string &arg : info.args) {
    if (domain.gazetteer.SurfaceOf(arg) == nullptr) {
      throw ValidationError("instance '" + arg + "' has no surface form");
    }
  }
}

std::string DocId(int timeframe, int source) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "t%03d-%s", timeframe,
                SourceName(source).c_str());
  return buf;
}

struct PlannedSentence {
  std::string text;
  const InfoTemplate *info = nullptr;  // null for filler
  size_t expected = 0;                 // index into truth.clusters
};

}  // namespace

double Rng::Uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

bool Rng::Bernoulli(double p) {
  if (p <= 0.0) return false;
  if (p >= 1.0) return true;
  return Uniform() < p;
}

uint64_t Rng::Index(uint64_t bound) {
  // Rejection sampling keeps the draw unbiased.
  const uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return x % bound;
}

ScenarioConfig ScenarioConfig::FromJson(const Json &j) {
  constexpr std::string_view kWhat = "scenario";
  RequireObject(j, kWhat);
  ScenarioConfig cfg;
  cfg.n_sources = static_cast<int>(RequireInt(j, "n_sources", kWhat));
  cfg.timeframes = static_cast<int>(j.value("timeframes", 1));
  std::string emission = j.value("emission", "synchronous");
  if (emission == "synchronous") {
    cfg.emission = Emission::kSynchronous;
  } else if (emission == "asynchronous") {
    cfg.emission = Emission::kAsynchronous;
  } else {
    throw ParseError("scenario: unknown emission '" + emission + "'", 0, 0);
  }
  std::string evolution = j.value("evolution", "linear");
  if (evolution == "linear") {
    cfg.evolution = Evolution::kLinear;
  } else if (evolution == "nonlinear") {
    cfg.evolution = Evolution::kNonlinear;
  } else {
    throw ParseError("scenario: unknown evolution '" + evolution + "'", 0, 0);
  }
  if (auto it = j.find("planted_clusters"); it != j.end()) {
    for (const Json &p : *it) {
      PlantedCluster pc;
      pc.timeframe = static_cast<int>(RequireInt(p, "timeframe", "planted cluster"));
      pc.support = static_cast<int>(RequireInt(p, "support", "planted cluster"));
      pc.info = InfoFromJson(RequireField(p, "message", "planted cluster"));
      cfg.planted_clusters.push_back(std::move(pc));
    }
  }
  if (auto it = j.find("diffusion"); it != j.end() && !it->is_null()) {
    DiffusionConfig d;
    d.seed_source = static_cast<int>(RequireInt(*it, "seed_source", "diffusion"));
    d.q = RequireField(*it, "q", "diffusion").get<double>();
    d.info = InfoFromJson(RequireField(*it, "message", "diffusion"));
    cfg.diffusion = std::move(d);
  }
  cfg.rng_seed = j.value("rng_seed", uint64_t{0});
  cfg.filler_sentences = static_cast<int>(j.value("filler_sentences", 2));
  cfg.drop_probability = j.value("drop_probability", 0.0);
  ValidateScenario(cfg);
  return cfg;
}

Json ScenarioConfig::ToJson() const {
  Json planted = Json::array();
  for (const PlantedCluster &p : planted_clusters) {
    planted.push_back({{"timeframe", p.timeframe},
                       {"support", p.support},
                       {"message", InfoToJson(p.info)}});
  }
  Json j = {{"n_sources", n_sources},
            {"timeframes", timeframes},
            {"emission", EmissionName(emission)},
            {"evolution", EvolutionName(evolution)},
            {"planted_clusters", std::move(planted)},
            {"rng_seed", rng_seed},
            {"filler_sentences", filler_sentences},
            {"drop_probability", drop_probability}};
  if (diffusion) {
    j["diffusion"] = {{"seed_source", diffusion->seed_source},
                      {"q", diffusion->q},
                      {"message", InfoToJson(diffusion->info)}};
  }
  return j;
}

void ValidateScenario(const ScenarioConfig &cfg) {
  if (cfg.n_sources < 1) throw ValidationError("n_sources must be >= 1");
  if (cfg.timeframes < 1) throw ValidationError("timeframes must be >= 1");
  if (cfg.filler_sentences < 0) {
    throw ValidationError("filler_sentences must be >= 0");
  }
  if (!(cfg.drop_probability >= 0.0 && cfg.drop_probability <= 1.0)) {
    throw ValidationError("drop_probability must be in [0, 1]");
  }
  for (const PlantedCluster &p : cfg.planted_clusters) {
    if (p.timeframe < 0 || p.timeframe >= cfg.timeframes) {
      throw ValidationError("planted cluster timeframe out of range");
    }
    if (p.support < 1 || p.support > cfg.n_sources) {
      throw ValidationError("planted cluster support must be in [1, n_sources]");
    }
  }
  if (cfg.diffusion) {
    if (!(cfg.diffusion->q >= 0.0 && cfg.diffusion->q <= 1.0)) {
      throw ValidationError("diffusion q must be in [0, 1]");
    }
    if (cfg.diffusion->seed_source < 0 ||
        cfg.diffusion->seed_source >= cfg.n_sources) {
      throw ValidationError("diffusion seed_source out of range");
    }
  }
}

Json GroundTruth::ToJson() const {
  Json clusters_json = Json::array();
  for (const ExpectedCluster &c : clusters) {
    clusters_json.push_back({{"message", InfoToJson(c.info)},
                             {"timeframe", c.timeframe},
                             {"ref_time", c.ref_time},
                             {"support", c.support},
                             {"support_size", c.support.size()},
                             {"n_global", c.n_global},
                             {"n_timeframe", c.n_timeframe},
                             {"p", c.p()},
                             {"p_per_timeframe", c.p_timeframe()},
                             {"shade", ShadeName(c.shade)}});
  }
  Json gold_json = Json::array();
  for (const Message &m : gold) gold_json.push_back(MessageToJson(m));
  return {{"n_documents", n_documents},
          {"clusters", std::move(clusters_json)},
          {"diffusion_support", diffusion_support},
          {"gold", std::move(gold_json)}};
}

DomainSpec SimulationDomain() {
  static const DomainSpec *domain = new DomainSpec(DomainSpec::Parse(kDomainJson));
  return *domain;
}

std::string SourceName(int index) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "source%02d", index + 1);
  return buf;
}

std::vector<std::vector<bool>> DiffusionTrajectory(int n_sources,
                                                   int timeframes,
                                                   int seed_source, double q,
                                                   Rng &rng) {
  std::vector<std::vector<bool>> adopters;
  std::vector<bool> current(n_sources, false);
  current[seed_source] = true;
  adopters.push_back(current);
  for (int t = 1; t < timeframes; ++t) {
    for (int s = 0; s < n_sources; ++s) {
      if (!current[s] && rng.Bernoulli(q)) current[s] = true;
    }
    adopters.push_back(current);
  }
  return adopters;
}

Scenario Generate(const ScenarioConfig &cfg) {
  ValidateScenario(cfg);
  const DomainSpec domain = SimulationDomain();
  for (const PlantedCluster &p : cfg.planted_clusters) CheckInfo(p.info, domain);
  if (cfg.diffusion) {
    CheckInfo(cfg.diffusion->info, domain);
    if (cfg.emission == Emission::kAsynchronous) {
      throw ValidationError(
          "diffusion requires synchronous emission (adopters report at every "
          "later timeframe)");
    }
  }
  {
    for (size_t i = 0; i < cfg.planted_clusters.size(); ++i) {
      for (size_t j = 0; j < i; ++j) {
        const auto &a = cfg.planted_clusters[i];
        const auto &b = cfg.planted_clusters[j];
        if (a.timeframe == b.timeframe && a.info == b.info) {
          throw ValidationError("planted clusters " + std::to_string(j) +
                                " and " + std::to_string(i) +
                                " are the same information");
        }
      }
      if (cfg.diffusion && cfg.planted_clusters[i].info == cfg.diffusion->info) {
        throw ValidationError(
            "planted cluster repeats the diffused information");
      }
    }
  }

  Rng rng(cfg.rng_seed);
  const int n_sources = cfg.n_sources;
  const int n_frames = cfg.timeframes;

  std::vector<TimePoint> times(n_frames, 0);
  for (int k = 1; k < n_frames; ++k) {
    TimePoint gap = cfg.evolution == Evolution::kLinear
                        ? 1
                        : 1 + static_cast<TimePoint>(rng.Index(3));
    times[k] = times[k - 1] + gap;
  }

  // emits[k][s]
  std::vector<std::vector<bool>> emits(n_frames,
                                       std::vector<bool>(n_sources, true));
  if (cfg.emission == Emission::kAsynchronous) {
    for (int s = 0; s < n_sources; ++s) {
      bool any = false;
      for (int k = 0; k < n_frames; ++k) {
        emits[k][s] = rng.Bernoulli(0.5);
        any = any || emits[k][s];
      }
      if (!any) emits[rng.Index(n_frames)][s] = true;
    }
  }

  int64_t n_documents = 0;
  std::vector<int64_t> docs_at(n_frames, 0);
  for (int k = 0; k < n_frames; ++k) {
    for (int s = 0; s < n_sources; ++s) {
      if (emits[k][s]) {
        ++docs_at[k];
        ++n_documents;
      }
    }
  }

  Scenario out;
  GroundTruth &truth = out.truth;
  truth.n_documents = n_documents;

  // plan[k][s]: sentences of document (k, s).
  std::vector<std::vector<std::vector<PlannedSentence>>> plan(
      n_frames, std::vector<std::vector<PlannedSentence>>(n_sources));

  auto add_expected = [&](const InfoTemplate &info, int k) {
    ExpectedCluster ec;
    ec.info = info;
    ec.timeframe = k;
    ec.ref_time = times[k];
    ec.n_global = n_documents;
    ec.n_timeframe = docs_at[k];
    truth.clusters.push_back(std::move(ec));
    return truth.clusters.size() - 1;
  };

  for (size_t i = 0; i < cfg.planted_clusters.size(); ++i) {
    const PlantedCluster &pc = cfg.planted_clusters[i];
    std::vector<int> available;
    for (int s = 0; s < n_sources; ++s) {
      if (emits[pc.timeframe][s]) available.push_back(s);
    }
    if (pc.support > static_cast<int>(available.size())) {
      throw ValidationError(
          "infeasible scenario: planted cluster " + std::to_string(i) +
          " needs support " + std::to_string(pc.support) + " but timeframe " +
          std::to_string(pc.timeframe) + " has " +
          std::to_string(available.size()) + " documents");
    }
    // Partial Fisher-Yates: the first `support` entries are the chosen ones.
    for (int j = 0; j < pc.support; ++j) {
      size_t pick = j + rng.Index(available.size() - j);
      std::swap(available[j], available[pick]);
    }
    size_t expected = add_expected(pc.info, pc.timeframe);
    std::string text = Realize(pc.info, domain);
    for (int j = 0; j < pc.support; ++j) {
      plan[pc.timeframe][available[j]].push_back({text, &pc.info, expected});
    }
  }

  if (cfg.diffusion) {
    const DiffusionConfig &d = *cfg.diffusion;
    auto adopters =
        DiffusionTrajectory(n_sources, n_frames, d.seed_source, d.q, rng);
    std::string text = Realize(d.info, domain);
    for (int k = 0; k < n_frames; ++k) {
      size_t expected = add_expected(d.info, k);
      int64_t support = 0;
      for (int s = 0; s < n_sources; ++s) {
        if (!adopters[k][s]) continue;
        plan[k][s].push_back({text, &d.info, expected});
        ++support;
      }
      truth.diffusion_support.push_back(support);
    }
  }

  const AbbreviationList &abbreviations = domain.abbreviations;
  for (int k = 0; k < n_frames; ++k) {
    for (int s = 0; s < n_sources; ++s) {
      if (!emits[k][s]) continue;
      std::vector<PlannedSentence> sentences = plan[k][s];
      for (int f = 0; f < cfg.filler_sentences; ++f) {
        const auto &fillers = FillerSentences();
        sentences.push_back({fillers[rng.Index(fillers.size())], nullptr, 0});
      }
      rng.Shuffle(sentences);

      Document doc;
      doc.doc_id = DocId(k, s);
      doc.source = SourceName(s);
      doc.pub_time = times[k];
      for (size_t i = 0; i < sentences.size(); ++i) {
        const PlannedSentence &ps = sentences[i];
        if (ps.info != nullptr) {
          Message gold;
          gold.id = doc.doc_id + ".g" + std::to_string(truth.gold.size());
          gold.type = ps.info->type;
          gold.args = ps.info->args;
          gold.source = doc.source;
          gold.pub_time = doc.pub_time;
          gold.ref_time = times[k];
          gold.doc_id = doc.doc_id;
          gold.token_length =
              static_cast<int64_t>(Tokenize(ps.text, abbreviations).size());
          truth.gold.push_back(std::move(gold));
          truth.clusters[ps.expected].support.push_back(doc.doc_id);
          if (rng.Bernoulli(cfg.drop_probability)) continue;
        }
        if (!doc.raw.empty()) doc.raw += " ";
        doc.raw += ps.text;
      }
      out.corpus.push_back(std::move(doc));
    }
  }

  for (ExpectedCluster &ec : truth.clusters) {
    std::sort(ec.support.begin(), ec.support.end());
    InformationCluster probe;
    probe.support = ec.support;
    probe.normalizer = ec.n_global;
    ec.shade = ec.support.empty() ? ShadeKind::kWhite : ShadeOf(probe).kind;
  }
  std::sort(out.corpus.begin(), out.corpus.end(),
            [](const Document &a, const Document &b) {
              return a.doc_id < b.doc_id;
            });
  return out;
}

Scenario Diffuse(const ScenarioConfig &cfg) {
  if (!cfg.diffusion) {
    throw ValidationError("scenario has no diffusion block");
  }
  return Generate(cfg);
}

}  // namespace evsum
