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

#include <algorithm>
#include <cstdio>

#include "evsum/error.h"

namespace evsum {

namespace {

using EdgeKey = std::tuple<std::string, MessageKey, MessageKey>;

// Greedy one-to-one matching over sorted keys is a multiset intersection.
template <typename Key>
MatchCounts MatchSorted(std::vector<Key> gold, std::vector<Key> predicted) {
  std::sort(gold.begin(), gold.end());
  std::sort(predicted.begin(), predicted.end());
  MatchCounts m;
  size_t i = 0;
  size_t j = 0;
  while (i < gold.size() && j < predicted.size()) {
    if (gold[i] == predicted[j]) {
      ++m.tp;
      ++i;
      ++j;
    } else if (gold[i] < predicted[j]) {
      ++m.fn;
      ++i;
    } else {
      ++m.fp;
      ++j;
    }
  }
  m.fn += static_cast<int64_t>(gold.size() - i);
  m.fp += static_cast<int64_t>(predicted.size() - j);
  return m;
}

std::vector<EdgeKey> EdgeKeys(const Grid &g) {
  std::vector<EdgeKey> keys;
  for (const RelationInstance &e : g.edges()) {
    const Message *from = g.FindNode(e.from);
    const Message *to = g.FindNode(e.to);
    if (from == nullptr || to == nullptr) {
      throw InvariantError("edge with dangling endpoint in evaluated grid");
    }
    keys.emplace_back(e.spec, KeyOf(*from), KeyOf(*to));
  }
  return keys;
}

std::vector<Message> Nodes(const Grid &g) {
  std::vector<Message> out;
  for (const auto &[id, m] : g.nodes()) out.push_back(m);
  return out;
}

std::string Percent(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%6.2f%%", v);
  return buf;
}

Json RowJson(const EvalRow &r) {
  return {{"tp", r.counts.tp},
          {"fp", r.counts.fp},
          {"fn", r.counts.fn},
          {"precision", r.precision},
          {"recall", r.recall},
          {"f_measure", r.f_measure}};
}

}  // namespace

MessageKey KeyOf(const Message &m) {
  return {m.doc_id, m.type, m.args, m.ref_time};
}

MatchCounts MatchMessages(const std::vector<Message> &gold,
                          const std::vector<Message> &predicted) {
  std::vector<MessageKey> g;
  std::vector<MessageKey> p;
  for (const Message &m : gold) g.push_back(KeyOf(m));
  for (const Message &m : predicted) p.push_back(KeyOf(m));
  return MatchSorted(std::move(g), std::move(p));
}

double Precision(const MatchCounts &m) {
  int64_t denom = m.tp + m.fp;
  return denom == 0 ? 0.0 : 100.0 * static_cast<double>(m.tp) / denom;
}

double Recall(const MatchCounts &m) {
  int64_t denom = m.tp + m.fn;
  return denom == 0 ? 0.0 : 100.0 * static_cast<double>(m.tp) / denom;
}

double FMeasure(double precision, double recall) {
  double sum = precision + recall;
  return sum == 0.0 ? 0.0 : 2.0 * precision * recall / sum;
}

EvalRow MakeRow(const MatchCounts &counts) {
  EvalRow r;
  r.counts = counts;
  r.precision = Precision(counts);
  r.recall = Recall(counts);
  r.f_measure = FMeasure(r.precision, r.recall);
  return r;
}

Json EvalReport::ToJson() const {
  return {{"messages", RowJson(messages)}, {"sdrs", RowJson(sdrs)}};
}

std::string EvalReport::ToTable() const {
  const std::string rule = "+----------+--------------+\n";
  std::string out = rule;
  auto block = [&](const char *name, const EvalRow &r) {
    char label[16];
    std::snprintf(label, sizeof(label), "%-8s", name);
    out += "| " + std::string(label) + " | Pr : " + Percent(r.precision) +
           " |\n";
    out += "|          | Rc : " + Percent(r.recall) + " |\n";
    out += "|          | FM : " + Percent(r.f_measure) + " |\n";
    out += rule;
  };
  block("Messages", messages);
  block("SDRs", sdrs);
  return out;
}

EvalReport EvaluateRun(const Grid &gold, const Grid &predicted) {
  EvalReport report;
  report.messages = MakeRow(MatchMessages(Nodes(gold), Nodes(predicted)));
  report.sdrs = MakeRow(MatchSorted(EdgeKeys(gold), EdgeKeys(predicted)));
  return report;
}

}  // namespace evsum
