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

#ifndef EVSUM_DOMAIN_H_
#define EVSUM_DOMAIN_H_

#include <string_view>
#include <vector>

#include "evsum/extraction.h"
#include "evsum/json_io.h"
#include "evsum/message.h"
#include "evsum/relation.h"
#include "evsum/text.h"

namespace evsum {

// Everything a topic defines up front, loaded from one JSON document:
//
//   {"concepts":[{"name","parent"?}], "instances":{id:concept},
//    "message_types":[{"name","slots":[{"slot","concept"}]}],
//    "gazetteer":{surface:id}, "abbreviations":[...],
//    "patterns":[{"message_type","triggers":[...],
//                 "bindings":[{"slot","concept","rule","n"?}]}],
//    "relations":[{"name","type","pairs":[[A,B]],"constraint":{...}}]}
//
// Only "concepts" is required.
struct DomainSpec {
  Schema schema;
  AbbreviationList abbreviations;
  Gazetteer gazetteer;
  std::vector<TriggerPattern> patterns;
  std::vector<RelationSpec> relations;

  static DomainSpec FromJson(const Json &doc);
  static DomainSpec Parse(std::string_view text);

  Json ToJson() const;
};

// Preprocesses each document and runs entity recognition and message
// extraction. Documents are handled in doc_id order.
ExtractionResult ExtractCorpus(std::vector<Document> &docs,
                               const DomainSpec &domain);

}  // namespace evsum

#endif  // EVSUM_DOMAIN_H_
