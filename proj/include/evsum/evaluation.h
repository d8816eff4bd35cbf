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

#ifndef EVSUM_EVALUATION_H_
#define EVSUM_EVALUATION_H_

#include <cstdint>
#include <string>
#include <tuple>
#include <vector>

#include "evsum/grid.h"
#include "evsum/json_io.h"
#include "evsum/message.h"

namespace evsum {

struct MatchCounts {
  int64_t tp = 0;
  int64_t fp = 0;
  int64_t fn = 0;

  friend bool operator==(const MatchCounts &, const MatchCounts &) = default;
};

// Identity of a message for scoring: (doc_id, type, args, ref_time).
using MessageKey =
    std::tuple<std::string, std::string, std::vector<std::string>, TimePoint>;
MessageKey KeyOf(const Message &m);

// One-to-one exact matching: each gold message absorbs at most one
// prediction with the same key.
MatchCounts MatchMessages(const std::vector<Message> &gold,
                          const std::vector<Message> &predicted);

// Percentages; 0 when the denominator is 0.
double Precision(const MatchCounts &m);
double Recall(const MatchCounts &m);
double FMeasure(double precision, double recall);

struct EvalRow {
  MatchCounts counts;
  double precision = 0.0;
  double recall = 0.0;
  double f_measure = 0.0;
};

EvalRow MakeRow(const MatchCounts &counts);

struct EvalReport {
  EvalRow messages;
  EvalRow sdrs;

  Json ToJson() const;

  // Two-row Pr/Rc/FM table.
  std::string ToTable() const;
};

// Relations match on (spec name, from key, to key); direction counts.
EvalReport EvaluateRun(const Grid &gold, const Grid &predicted);

}  // namespace evsum

#endif  // EVSUM_EVALUATION_H_
