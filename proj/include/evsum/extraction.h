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

// Rule-based message extraction: gazetteer lookup for entities, then
// trigger-word patterns that bind message slots to nearby mentions.

#ifndef EVSUM_EXTRACTION_H_
#define EVSUM_EXTRACTION_H_

#include <map>
#include <string>
#include <vector>

#include "evsum/json_io.h"
#include "evsum/message.h"
#include "evsum/text.h"

namespace evsum {

class Gazetteer {
 public:
  struct Entry {
    std::string surface;
    Tokens tokens;
    std::string instance;
  };

  Gazetteer() = default;

  // Surface forms are tokenized with the same rules as documents. Every
  // instance must exist in the ontology.
  Gazetteer(const std::map<std::string, std::string> &surface_to_instance,
            const Ontology &ontology, const AbbreviationList &abbreviations);

  const std::vector<Entry> &entries() const { return entries_; }

  // First surface form (in lexicographic order) naming `instance`.
  const std::string *SurfaceOf(std::string_view instance) const;

  Json ToJson() const;

 private:
  std::vector<Entry> entries_;  // sorted by surface
};

struct Mention {
  size_t sentence = 0;
  size_t begin = 0;  // token span [begin, end)
  size_t end = 0;
  std::string instance;
  std::string concept_name;

  friend bool operator==(const Mention &, const Mention &) = default;
};

// Longest-match, left-to-right, non-overlapping lookup of gazetteer surface
// forms in each sentence. Equal-length candidates resolve to the
// lexicographically smallest surface form.
std::vector<Mention> RecognizeEntities(const Document &d, const Gazetteer &g,
                                       const Ontology &o);

enum class SelectionRule {
  kFirstLeftOfTrigger,   // nearest mention ending at or before the trigger
  kFirstRightOfTrigger,  // nearest mention starting after the trigger
  kNthInSentence,        // n-th (1-based) qualifying mention in the sentence
};

struct Binding {
  std::string slot;
  std::string concept_name;  // the mention's concept must be subsumed by it
  SelectionRule rule = SelectionRule::kFirstLeftOfTrigger;
  int n = 1;  // kNthInSentence only
};

struct TriggerPattern {
  std::string message_type;
  std::vector<std::string> triggers;  // single-token lexemes, case-insensitive
  std::vector<Binding> bindings;
};

// Throws Error(kValidation) unless the bindings cover every slot of the
// target message type exactly once with compatible concepts.
void ValidatePattern(const TriggerPattern &p, const Schema &schema);

TriggerPattern PatternFromJson(const Json &j);
Json PatternToJson(const TriggerPattern &p);

struct Diagnostic {
  std::string doc_id;
  size_t sentence = 0;
  std::string message_type;
  std::string reason;
};

struct ExtractionResult {
  std::vector<Message> messages;
  std::vector<Diagnostic> diagnostics;
};

// For every (sentence, pattern), trigger occurrences are tried left to right
// and the first one whose slots all bind to a valid message wins. Message ids
// are "<doc_id>.s<sentence>.p<pattern index>".
ExtractionResult ExtractMessages(const Document &d,
                                 const std::vector<Mention> &mentions,
                                 const std::vector<TriggerPattern> &patterns,
                                 const Schema &schema);

}  // namespace evsum

#endif  // EVSUM_EXTRACTION_H_
