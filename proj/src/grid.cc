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

#include "evsum/grid.h"

#include <algorithm>
#include <queue>
#include <set>
#include <sstream>
#include <tuple>

#include "evsum/error.h"

namespace evsum {

namespace {

std::string EdgeName(const RelationInstance &e) {
  return e.from + "->" + e.to + " (" + e.spec + ")";
}

std::string DotQuote(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

void SortEdges(std::vector<RelationInstance> &edges) {
  std::sort(edges.begin(), edges.end(),
            [](const RelationInstance &x, const RelationInstance &y) {
              return std::tie(x.spec, x.from, x.to) <
                     std::tie(y.spec, y.from, y.to);
            });
}

}  // namespace

Grid Grid::Unchecked(NodeMap nodes, std::vector<RelationInstance> edges) {
  Grid g;
  g.nodes_ = std::move(nodes);
  g.edges_ = std::move(edges);
  return g;
}

const Message *Grid::FindNode(std::string_view id) const {
  auto it = nodes_.find(id);
  return it == nodes_.end() ? nullptr : &it->second;
}

Grid BuildGrid(const std::vector<Message> &messages,
               std::vector<RelationInstance> relations) {
  Grid::NodeMap nodes;
  for (const Message &m : messages) {
    if (!nodes.emplace(m.id, m).second) {
      throw ValidationError("duplicate message id '" + m.id + "'");
    }
  }
  SortEdges(relations);
  Grid g = Grid::Unchecked(std::move(nodes), std::move(relations));
  auto violations = CheckGrid(g);
  if (!violations.empty()) {
    // Structural problems are reported ahead of per-edge admissibility.
    auto rank = [](const GridViolation &v) {
      if (v.rule == "duplicate-node" || v.rule == "dangling-endpoint") return 0;
      return v.rule == "cycle" ? 1 : 2;
    };
    const GridViolation &v = *std::min_element(
        violations.begin(), violations.end(),
        [&](const auto &x, const auto &y) { return rank(x) < rank(y); });
    throw ValidationError("invalid grid: " + v.rule + " at " + v.subject +
                          (v.detail.empty() ? "" : ": " + v.detail));
  }
  return g;
}

std::vector<GridViolation> CheckGrid(const Grid &g) {
  std::vector<GridViolation> out;
  for (const auto &[id, m] : g.nodes()) {
    if (id != m.id) {
      out.push_back({id, "duplicate-node", "keyed as '" + id + "' but id is '" +
                                               m.id + "'"});
    }
  }
  std::set<std::tuple<std::string, std::string, std::string>> seen;
  for (const RelationInstance &e : g.edges()) {
    const Message *from = g.FindNode(e.from);
    const Message *to = g.FindNode(e.to);
    if (from == nullptr || to == nullptr) {
      out.push_back({EdgeName(e), "dangling-endpoint",
                     "missing node '" + (from ? e.to : e.from) + "'"});
      continue;
    }
    if (!Admissible(e.type, *from, *to)) {
      std::string why =
          e.type == RelationType::kSynchronic
              ? "synchronic edges need ordered distinct sources at equal "
                "ref_time"
              : "diachronic edges need one source and increasing ref_time";
      out.push_back({EdgeName(e), "admissibility", why});
    }
    if (!seen.emplace(e.spec, e.from, e.to).second) {
      out.push_back({EdgeName(e), "duplicate-edge", ""});
    }
  }
  if (auto cycle = FindCycle(g)) {
    std::string path;
    for (size_t i = 0; i < cycle->size(); ++i) {
      if (i) path += " -> ";
      path += (*cycle)[i];
    }
    out.push_back({cycle->front(), "cycle", path});
  }
  return out;
}

std::optional<std::vector<std::string>> FindCycle(const Grid &g) {
  std::map<std::string_view, std::vector<std::string_view>> adjacency;
  for (const RelationInstance &e : g.edges()) {
    if (g.FindNode(e.from) && g.FindNode(e.to)) {
      adjacency[e.from].push_back(e.to);
    }
  }
  enum Color { kWhite, kGrey, kBlack };
  std::map<std::string_view, Color> color;
  for (const auto &[id, m] : g.nodes()) {
    if (color[id] != kWhite) continue;
    // Iterative DFS; `path` mirrors the grey nodes on the stack.
    std::vector<std::pair<std::string_view, size_t>> stack{{id, 0}};
    std::vector<std::string_view> path{id};
    color[id] = kGrey;
    while (!stack.empty()) {
      auto &[node, next] = stack.back();
      const auto &succ = adjacency[node];
      if (next == succ.size()) {
        color[node] = kBlack;
        stack.pop_back();
        path.pop_back();
        continue;
      }
      std::string_view child = succ[next++];
      if (color[child] == kGrey) {
        auto first = std::find(path.begin(), path.end(), child);
        std::vector<std::string> cycle(first, path.end());
        cycle.emplace_back(child);
        return cycle;
      }
      if (color[child] == kWhite) {
        color[child] = kGrey;
        stack.emplace_back(child, 0);
        path.push_back(child);
      }
    }
  }
  return std::nullopt;
}

std::vector<std::string> TopologicalOrder(const Grid &g) {
  std::map<std::string_view, std::vector<std::string_view>> adjacency;
  std::map<std::string_view, size_t> in_degree;
  for (const auto &[id, m] : g.nodes()) in_degree[id] = 0;
  for (const RelationInstance &e : g.edges()) {
    if (!g.FindNode(e.from) || !g.FindNode(e.to)) continue;
    adjacency[e.from].push_back(e.to);
    ++in_degree[e.to];
  }
  using Key = std::pair<TimePoint, std::string_view>;
  std::priority_queue<Key, std::vector<Key>, std::greater<>> ready;
  for (const auto &[id, degree] : in_degree) {
    if (degree == 0) ready.emplace(g.FindNode(id)->ref_time, id);
  }
  std::vector<std::string> order;
  while (!ready.empty()) {
    auto [t, id] = ready.top();
    ready.pop();
    order.emplace_back(id);
    for (std::string_view next : adjacency[id]) {
      if (--in_degree[next] == 0) {
        ready.emplace(g.FindNode(next)->ref_time, next);
      }
    }
  }
  if (order.size() != g.nodes().size()) {
    throw ValidationError("grid contains a cycle");
  }
  return order;
}

std::string NodeLabel(const Message &m) {
  return Predicate(m) + "@" + m.source + "/t=" + std::to_string(m.ref_time);
}

std::string ExportDot(const Grid &g) {
  std::ostringstream out;
  out << "digraph grid {\n";
  std::map<TimePoint, std::vector<std::string_view>> ranks;
  for (const auto &[id, m] : g.nodes()) {
    out << "  " << DotQuote(id) << " [label=" << DotQuote(NodeLabel(m))
        << "];\n";
    ranks[m.ref_time].push_back(id);
  }
  for (const auto &[t, ids] : ranks) {
    out << "  { rank=same;";
    for (std::string_view id : ids) out << " " << DotQuote(id) << ";";
    out << " }\n";
  }
  for (const RelationInstance &e : g.edges()) {
    out << "  " << DotQuote(e.from) << " -> " << DotQuote(e.to)
        << " [label=" << DotQuote(e.spec);
    if (e.type == RelationType::kSynchronic) out << ", style=dashed";
    out << "];\n";
  }
  out << "}\n";
  return out.str();
}

Json GridToJson(const Grid &g) {
  Json nodes = Json::array();
  for (const auto &[id, m] : g.nodes()) nodes.push_back(MessageToJson(m));
  Json edges = Json::array();
  for (const RelationInstance &e : g.edges()) {
    edges.push_back({{"spec", e.spec},
                     {"type", RelationTypeName(e.type)},
                     {"from", e.from},
                     {"to", e.to}});
  }
  return {{"nodes", std::move(nodes)}, {"edges", std::move(edges)}};
}

Grid GridFromJson(const Json &j) {
  constexpr std::string_view kWhat = "grid";
  std::vector<Message> messages;
  for (const Json &n : RequireArray(j, "nodes", kWhat)) {
    messages.push_back(MessageFromJson(n));
  }
  std::vector<RelationInstance> edges;
  for (const Json &e : RequireArray(j, "edges", kWhat)) {
    edges.push_back({RequireString(e, "spec", "edge"),
                     ParseRelationType(RequireString(e, "type", "edge")),
                     RequireString(e, "from", "edge"),
                     RequireString(e, "to", "edge")});
  }
  return BuildGrid(messages, std::move(edges));
}

}  // namespace evsum
