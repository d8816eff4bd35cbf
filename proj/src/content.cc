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

#include "evsum/content.h"

#include <algorithm>
#include <cmath>
#include <set>
#include <tuple>

#include "evsum/error.h"

namespace evsum {

namespace {

// Equivalence key of a piece of information.
using InfoKey = std::tuple<std::string, std::vector<std::string>, TimePoint>;

std::string ClusterId(const InfoKey &key) {
  const auto &[type, args, ref_time] = key;
  std::string id = type + "(";
  for (size_t i = 0; i < args.size(); ++i) {
    if (i) id += ",";
    id += args[i];
  }
  return id + ")@t=" + std::to_string(ref_time);
}

int64_t CoveringDocuments(const CorpusStats &stats, TimePoint t,
                          const std::vector<std::string> &support) {
  std::set<std::string_view> docs(support.begin(), support.end());
  for (const DocumentWindow &w : stats.windows) {
    if (w.begin <= t && t <= w.end) docs.insert(w.doc_id);
  }
  return static_cast<int64_t>(docs.size());
}

}  // namespace

const char *NormalizationName(Normalization n) {
  return n == Normalization::kGlobal ? "global" : "per-timeframe";
}

Normalization ParseNormalization(std::string_view name) {
  if (name == "global") return Normalization::kGlobal;
  if (name == "per-timeframe") return Normalization::kPerTimeframe;
  throw ValidationError("unknown normalization '" + std::string(name) + "'");
}

void ValidateConfig(const SelectionConfig &cfg) {
  if (!(cfg.compression_rate > 0.0 && cfg.compression_rate <= 1.0)) {
    throw ValidationError("compression rate must be in (0, 1], got " +
                          std::to_string(cfg.compression_rate));
  }
}

CorpusStats CorpusStats::FromDocuments(std::span<const Document> docs) {
  CorpusStats stats;
  stats.n = static_cast<int64_t>(docs.size());
  for (const Document &d : docs) {
    stats.total_length += static_cast<int64_t>(d.TokenCount());
    TimePoint lo = d.ref_time.value_or(d.pub_time);
    TimePoint hi = lo;
    for (const auto &t : d.sentence_ref_times) {
      if (!t) continue;
      lo = std::min(lo, *t);
      hi = std::max(hi, *t);
    }
    stats.windows.push_back({d.doc_id, lo, hi});
  }
  return stats;
}

std::vector<InformationCluster> ClusterInformation(
    const std::vector<Message> &messages, const CorpusStats &stats,
    Normalization normalization) {
  std::map<InfoKey, std::vector<const Message *>> groups;
  for (const Message &m : messages) {
    groups[{m.type, m.args, m.ref_time}].push_back(&m);
  }

  std::vector<InformationCluster> clusters;
  clusters.reserve(groups.size());
  for (const auto &[key, members] : groups) {
    InformationCluster cl;
    cl.id = ClusterId(key);
    std::tie(cl.type, cl.args, cl.ref_time) = key;
    std::set<std::string> support;
    cl.cost = members.front()->token_length;
    for (const Message *m : members) {
      cl.members.push_back(m->id);
      support.insert(m->doc_id);
      cl.cost = std::min(cl.cost, m->token_length);
    }
    std::sort(cl.members.begin(), cl.members.end());
    cl.support.assign(support.begin(), support.end());

    if (normalization == Normalization::kGlobal) {
      cl.normalizer = stats.n;
    } else {
      if (stats.windows.empty() && stats.n > 0) {
        throw ValidationError(
            "per-timeframe normalization needs document windows");
      }
      cl.normalizer = CoveringDocuments(stats, cl.ref_time, cl.support);
    }
    if (cl.normalizer < cl.support_size() || cl.normalizer < 1) {
      throw InvariantError("cluster " + cl.id + " is supported by " +
                           std::to_string(cl.support_size()) +
                           " documents but the corpus has " +
                           std::to_string(cl.normalizer));
    }
    clusters.push_back(std::move(cl));
  }

  std::sort(clusters.begin(), clusters.end(),
            [](const InformationCluster &x, const InformationCluster &y) {
              // Compare k_x/n_x against k_y/n_y without rounding.
              int64_t lhs = x.support_size() * y.normalizer;
              int64_t rhs = y.support_size() * x.normalizer;
              if (lhs != rhs) return lhs > rhs;
              if (x.ref_time != y.ref_time) return x.ref_time < y.ref_time;
              return x.id < y.id;
            });
  return clusters;
}

Shade ShadeOf(const InformationCluster &cl) {
  if (cl.support_size() == cl.normalizer) return {ShadeKind::kBlack, 1.0};
  if (cl.support_size() == 1) return {ShadeKind::kWhite, cl.p()};
  return {ShadeKind::kGrey, cl.p()};
}

std::string ShadeName(ShadeKind kind) {
  switch (kind) {
    case ShadeKind::kBlack: return "black";
    case ShadeKind::kGrey: return "grey";
    case ShadeKind::kWhite: return "white";
  }
  return "";
}

int64_t ComputeBudget(const CorpusStats &stats, const SelectionConfig &cfg) {
  ValidateConfig(cfg);
  double product = cfg.compression_rate * static_cast<double>(stats.total_length);
  double nearest = std::round(product);
  if (std::abs(product - nearest) <= 1e-9 * std::max(1.0, product)) {
    return static_cast<int64_t>(nearest);
  }
  return static_cast<int64_t>(std::floor(product));
}

MessageIndex IndexMessages(const std::vector<Message> &messages) {
  MessageIndex index;
  for (const Message &m : messages) index.emplace(m.id, &m);
  return index;
}

std::string Representative(const InformationCluster &cl,
                           const MessageIndex &messages) {
  const Message *best = nullptr;
  for (const std::string &id : cl.members) {
    auto it = messages.find(id);
    if (it == messages.end()) {
      throw InvariantError("cluster " + cl.id + " member '" + id +
                           "' is not a known message");
    }
    const Message *m = it->second;
    if (best == nullptr ||
        std::tie(m->pub_time, m->source, m->id) <
            std::tie(best->pub_time, best->source, best->id)) {
      best = m;
    }
  }
  if (best == nullptr) throw InvariantError("empty cluster " + cl.id);
  return best->id;
}

Selection Select(const std::vector<InformationCluster> &clusters,
                 const MessageIndex &messages, int64_t budget) {
  Selection sel;
  sel.budget = budget;
  for (const InformationCluster &cl : clusters) {
    if (sel.spent + cl.cost <= budget) {
      sel.entries.push_back({cl.id, Representative(cl, messages)});
      sel.spent += cl.cost;
    } else {
      sel.skipped.push_back(cl.id);
    }
  }
  return sel;
}

Grid Subgrid(const Grid &g, const Selection &sel) {
  Grid::NodeMap nodes;
  for (const SelectedCluster &s : sel.entries) {
    const Message *m = g.FindNode(s.representative);
    if (m == nullptr) {
      throw InvariantError("representative '" + s.representative +
                           "' is not in the grid");
    }
    nodes.emplace(m->id, *m);
  }
  std::vector<RelationInstance> edges;
  for (const RelationInstance &e : g.edges()) {
    if (nodes.count(e.from) && nodes.count(e.to)) edges.push_back(e);
  }
  return Grid::Unchecked(std::move(nodes), std::move(edges));
}

Json SelectionReport(const std::vector<InformationCluster> &clusters,
                     const Selection &sel, const SelectionConfig &cfg,
                     const CorpusStats &stats) {
  std::map<std::string_view, const SelectedCluster *> chosen;
  for (const SelectedCluster &s : sel.entries) chosen[s.cluster] = &s;

  auto record = [](const InformationCluster &cl) {
    Shade shade = ShadeOf(cl);
    return Json{{"id", cl.id},
                {"p", cl.p()},
                {"support_size", cl.support_size()},
                {"normalizer", cl.normalizer},
                {"shade", ShadeName(shade.kind)},
                {"cost", cl.cost},
                {"members", cl.members},
                {"support", cl.support}};
  };

  Json selection = Json::array();
  Json all = Json::array();
  std::map<std::string_view, const InformationCluster *> by_id;
  for (const InformationCluster &cl : clusters) {
    by_id[cl.id] = &cl;
    Json r = record(cl);
    auto it = chosen.find(cl.id);
    r["selected"] = it != chosen.end();
    if (it != chosen.end()) r["representative"] = it->second->representative;
    all.push_back(std::move(r));
  }
  for (const SelectedCluster &s : sel.entries) {
    Json r = record(*by_id.at(s.cluster));
    r["representative"] = s.representative;
    selection.push_back(std::move(r));
  }
  return {{"c", cfg.compression_rate},
          {"n", stats.n},
          {"total_length", stats.total_length},
          {"normalization", NormalizationName(cfg.normalization)},
          {"budget", sel.budget},
          {"spent", sel.spent},
          {"selection", std::move(selection)},
          {"clusters", std::move(all)}};
}

}  // namespace evsum
