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

// The grid: a DAG whose nodes are messages and whose edges are relation
// instances. Stored as a flat edge list; the source x time lattice view is
// recovered by grouping nodes on (source, ref_time).

#ifndef EVSUM_GRID_H_
#define EVSUM_GRID_H_

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "evsum/json_io.h"
#include "evsum/message.h"
#include "evsum/relation.h"

namespace evsum {

class Grid {
 public:
  using NodeMap = std::map<std::string, Message, std::less<>>;

  Grid() = default;

  // No validation; edges are kept as given. Use BuildGrid for checked
  // construction.
  static Grid Unchecked(NodeMap nodes, std::vector<RelationInstance> edges);

  const NodeMap &nodes() const { return nodes_; }
  const std::vector<RelationInstance> &edges() const { return edges_; }

  const Message *FindNode(std::string_view id) const;

  friend bool operator==(const Grid &, const Grid &) = default;

 private:
  NodeMap nodes_;
  std::vector<RelationInstance> edges_;
};

struct GridViolation {
  std::string subject;  // node id or "from->to (spec)"
  std::string rule;     // duplicate-node, dangling-endpoint, admissibility,
                        // duplicate-edge, cycle
  std::string detail;
};

// Throws Error(kValidation) on duplicate message ids, dangling endpoints,
// inadmissible edges and cycles (the message names one offending cycle).
// Edges are stored sorted by (spec, from, to).
Grid BuildGrid(const std::vector<Message> &messages,
               std::vector<RelationInstance> relations);

// Empty iff every grid invariant holds.
std::vector<GridViolation> CheckGrid(const Grid &g);

// A cycle as a node-id path whose last element repeats the first, if any.
// Edges with dangling endpoints are ignored.
std::optional<std::vector<std::string>> FindCycle(const Grid &g);

// Kahn's algorithm; among ready nodes the smallest (ref_time, id) goes first.
// Throws Error(kValidation) if the grid has a cycle.
std::vector<std::string> TopologicalOrder(const Grid &g);

// Node label: "type(args)@source/t=ref_time".
std::string NodeLabel(const Message &m);

// Graphviz text. Synchronic edges are dashed; nodes sharing a ref_time get a
// rank=same hint.
std::string ExportDot(const Grid &g);

// {"nodes":[message...], "edges":[{"spec","type","from","to"}]}
Json GridToJson(const Grid &g);
Grid GridFromJson(const Json &j);  // validated through BuildGrid

}  // namespace evsum

#endif  // EVSUM_GRID_H_
