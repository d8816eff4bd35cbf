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

#ifndef EVSUM_TEXT_H_
#define EVSUM_TEXT_H_

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "evsum/json_io.h"
#include "evsum/message.h"

namespace evsum {

using Tokens = std::vector<std::string>;

// Abbreviations are matched against whitespace-delimited chunks verbatim,
// e.g. "Mr." or "e.g.". A matching chunk is kept as a single token and never
// ends a sentence.
using AbbreviationList = std::set<std::string, std::less<>>;

struct Document {
  std::string doc_id;
  std::string source;
  TimePoint pub_time = 0;
  std::string raw;
  std::vector<Tokens> sentences;  // filled by Preprocess

  // Reference-time annotations. Sentence-level entries override the
  // document-level value, which in turn defaults to pub_time.
  std::optional<TimePoint> ref_time;
  std::vector<std::optional<TimePoint>> sentence_ref_times;

  TimePoint RefTimeOf(size_t sentence) const;
  size_t TokenCount() const;
};

// Splits on whitespace, then separates punctuation from word characters.
// Periods, apostrophes and hyphens between two alphanumerics stay inside the
// word ("3.5", "U.S", "don't").
Tokens Tokenize(std::string_view text, const AbbreviationList &abbreviations);

// Tokenizes `raw` and splits sentences after '.', '!' or '?' tokens that end
// a whitespace-delimited chunk. Empty text gives zero sentences.
std::vector<Tokens> SplitSentences(std::string_view raw,
                                   const AbbreviationList &abbreviations);

// Fills d.sentences from d.raw.
void Preprocess(Document &d, const AbbreviationList &abbreviations);

// Corpus file schema:
// {"doc_id","source","pub_time","text","ref_time"?,"sentence_ref_times"?}
// where sentence_ref_times is an array of integers or nulls, one per sentence.
Document DocumentFromJson(const Json &j);
Json DocumentToJson(const Document &d);

}  // namespace evsum

#endif  // EVSUM_TEXT_H_
