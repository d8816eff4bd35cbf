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

// Content determination over a grid.
//
// Each piece of information i is a cluster of equivalent messages (same type,
// same arguments, same reference time). Its inclusion probability is the
// fraction of documents that contain it,
//
//   P(i) = (sum_k d_ki) / n,    d_ki = 1 iff document k contains i,
//
// and a summary S must respect the compression budget
//
//   length(S) <= c * sum_k length(d_k).
//
// Clusters are taken greedily in decreasing P(i); one that does not fit the
// remaining budget is skipped and traversal continues. Length is measured in
// tokens, with a cluster costing its shortest member sentence.

#ifndef EVSUM_CONTENT_H_
#define EVSUM_CONTENT_H_

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "evsum/grid.h"
#include "evsum/json_io.h"
#include "evsum/message.h"
#include "evsum/text.h"

namespace evsum {

enum class Normalization {
  kGlobal,        // n = all documents
  kPerTimeframe,  // n = documents whose window covers the cluster's ref_time
};

const char *NormalizationName(Normalization n);
Normalization ParseNormalization(std::string_view name);

struct SelectionConfig {
  double compression_rate = 1.0;  // c, in (0, 1]
  Normalization normalization = Normalization::kGlobal;
};

// Throws Error(kValidation) unless 0 < c <= 1.
void ValidateConfig(const SelectionConfig &cfg);

// Range of reference times a document reports on: its pub_time/ref_time and
// any sentence-level reference annotations.
struct DocumentWindow {
  std::string doc_id;
  TimePoint begin = 0;
  TimePoint end = 0;  // inclusive
};

struct CorpusStats {
  int64_t n = 0;             // document count
  int64_t total_length = 0;  // sum of document token counts
  std::vector<DocumentWindow> windows;

  // Documents must be preprocessed.
  static CorpusStats FromDocuments(std::span<const Document> docs);
};

struct InformationCluster {
  std::string id;  // "type(args)@t=ref_time"
  std::string type;
  std::vector<std::string> args;
  TimePoint ref_time = 0;
  std::vector<std::string> members;  // message ids, sorted
  std::vector<std::string> support;  // doc ids, sorted
  int64_t cost = 0;                  // min member token_length
  int64_t normalizer = 1;            // n used for p

  int64_t support_size() const { return static_cast<int64_t>(support.size()); }
  double p() const {
    return static_cast<double>(support.size()) / static_cast<double>(normalizer);
  }
};

// Partitions messages into equivalence classes and scores them. The result is
// sorted by descending p (compared exactly as fractions), then ref_time,
// then id.
std::vector<InformationCluster> ClusterInformation(
    const std::vector<Message> &messages, const CorpusStats &stats,
    Normalization normalization = Normalization::kGlobal);

enum class ShadeKind { kBlack, kGrey, kWhite };

struct Shade {
  ShadeKind kind = ShadeKind::kWhite;
  double p = 0.0;
};

// black iff p = 1 (this wins when a single-document corpus makes the cluster
// both total and isolated), white iff the support is one document, grey(p)
// otherwise.
Shade ShadeOf(const InformationCluster &cl);
std::string ShadeName(ShadeKind kind);

// floor(c * total_length). Products within 1e-9 of an integer are snapped to
// it first so that decimal rates such as 0.29 * 100 give 29.
int64_t ComputeBudget(const CorpusStats &stats, const SelectionConfig &cfg);

using MessageIndex = std::map<std::string, const Message *, std::less<>>;
MessageIndex IndexMessages(const std::vector<Message> &messages);

// Earliest pub_time; ties go to the lexicographically smaller source, then
// message id.
std::string Representative(const InformationCluster &cl,
                           const MessageIndex &messages);

struct SelectedCluster {
  std::string cluster;
  std::string representative;

  friend bool operator==(const SelectedCluster &,
                         const SelectedCluster &) = default;
};

struct Selection {
  std::vector<SelectedCluster> entries;  // in selection order
  std::vector<std::string> skipped;      // clusters that did not fit
  int64_t spent = 0;
  int64_t budget = 0;
};

// Skip-and-continue greedy over clusters in the order given (as produced by
// ClusterInformation).
Selection Select(const std::vector<InformationCluster> &clusters,
                 const MessageIndex &messages, int64_t budget);

// Vertex-induced subgraph of `g` on the selected representatives.
Grid Subgrid(const Grid &g, const Selection &sel);

// {c, n, normalization, budget, spent, selection:[...], clusters:[...]}
Json SelectionReport(const std::vector<InformationCluster> &clusters,
                     const Selection &sel, const SelectionConfig &cfg,
                     const CorpusStats &stats);

}  // namespace evsum

#endif  // EVSUM_CONTENT_H_
