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

#include "evsum/extraction.h"

#include <algorithm>
#include <cctype>
#include <set>

#include "evsum/error.h"

namespace evsum {

namespace {

std::string Lower(std::string_view s) {
  std::string out(s);
  for (char &c : out) {
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  return out;
}

const char *RuleName(SelectionRule rule) {
  switch (rule) {
    case SelectionRule::kFirstLeftOfTrigger:
      return "first-left-of-trigger";
    case SelectionRule::kFirstRightOfTrigger:
      return "first-right-of-trigger";
    case SelectionRule::kNthInSentence:
      return "nth-in-sentence";
  }
  return "";
}

SelectionRule ParseRule(const std::string &name) {
  if (name == "first-left-of-trigger") return SelectionRule::kFirstLeftOfTrigger;
  if (name == "first-right-of-trigger") {
    return SelectionRule::kFirstRightOfTrigger;
  }
  if (name == "nth-in-sentence") return SelectionRule::kNthInSentence;
  throw ParseError("unknown selection rule '" + name + "'", 0, 0);
}

// Picks the mention for one binding relative to the trigger at `trigger`.
const Mention *SelectMention(const Binding &b, size_t trigger,
                             const std::vector<const Mention *> &sentence,
                             const Ontology &o) {
  const Mention *best = nullptr;
  int seen = 0;
  for (const Mention *m : sentence) {
    if (!o.Subsumes(b.concept_name, m->concept_name)) continue;
    switch (b.rule) {
      case SelectionRule::kFirstLeftOfTrigger:
        if (m->end <= trigger && (!best || m->end > best->end)) best = m;
        break;
      case SelectionRule::kFirstRightOfTrigger:
        if (m->begin > trigger && (!best || m->begin < best->begin)) best = m;
        break;
      case SelectionRule::kNthInSentence:
        if (++seen == b.n) return m;
        break;
    }
  }
  return best;
}

}  // namespace

Gazetteer::Gazetteer(
    const std::map<std::string, std::string> &surface_to_instance,
    const Ontology &ontology, const AbbreviationList &abbreviations) {
  for (const auto &[surface, instance] : surface_to_instance) {
    if (ontology.ConceptOfInstance(instance) == nullptr) {
      throw ValidationError("gazetteer entry '" + surface +
                            "' names unknown instance '" + instance + "'");
    }
    Tokens tokens = Tokenize(surface, abbreviations);
    if (tokens.empty()) {
      throw ValidationError("gazetteer entry with empty surface form");
    }
    entries_.push_back({surface, std::move(tokens), instance});
  }
}

const std::string *Gazetteer::SurfaceOf(std::string_view instance) const {
  for (const Entry &e : entries_) {
    if (e.instance == instance) return &e.surface;
  }
  return nullptr;
}

Json Gazetteer::ToJson() const {
  Json out = Json::object();
  for (const Entry &e : entries_) out[e.surface] = e.instance;
  return out;
}

std::vector<Mention> RecognizeEntities(const Document &d, const Gazetteer &g,
                                       const Ontology &o) {
  std::vector<Mention> out;
  for (size_t s = 0; s < d.sentences.size(); ++s) {
    const Tokens &tokens = d.sentences[s];
    size_t i = 0;
    while (i < tokens.size()) {
      const Gazetteer::Entry *best = nullptr;
      for (const Gazetteer::Entry &e : g.entries()) {
        size_t len = e.tokens.size();
        if (i + len > tokens.size()) continue;
        if (best && len <= best->tokens.size()) continue;
        if (std::equal(e.tokens.begin(), e.tokens.end(), tokens.begin() + i)) {
          best = &e;
        }
      }
      if (best == nullptr) {
        ++i;
        continue;
      }
      size_t end = i + best->tokens.size();
      out.push_back({s, i, end, best->instance,
                     *o.ConceptOfInstance(best->instance)});
      i = end;
    }
  }
  return out;
}

void ValidatePattern(const TriggerPattern &p, const Schema &schema) {
  const MessageTypeSpec *spec = schema.FindType(p.message_type);
  if (spec == nullptr) {
    throw ValidationError("pattern targets unknown message type '" +
                          p.message_type + "'");
  }
  const std::string where = "pattern for '" + p.message_type + "'";
  if (p.triggers.empty()) throw ValidationError(where + " has no triggers");
  std::set<std::string> bound;
  for (const Binding &b : p.bindings) {
    auto slot = spec->SlotIndex(b.slot);
    if (!slot) {
      throw ValidationError(where + " binds unknown slot '" + b.slot + "'");
    }
    if (!bound.insert(b.slot).second) {
      throw ValidationError(where + " binds slot '" + b.slot + "' twice");
    }
    if (!schema.ontology().HasConcept(b.concept_name)) {
      throw ValidationError(where + " uses unknown concept '" +
                            b.concept_name + "'");
    }
    const std::string &required = spec->slots[*slot].concept_name;
    if (!schema.ontology().Subsumes(required, b.concept_name)) {
      throw ValidationError(where + ": binding concept '" + b.concept_name +
                            "' is not a " + required + " (slot '" + b.slot +
                            "')");
    }
    if (b.rule == SelectionRule::kNthInSentence && b.n < 1) {
      throw ValidationError(where + ": nth-in-sentence needs n >= 1");
    }
  }
  for (const Slot &s : spec->slots) {
    if (!bound.count(s.name)) {
      throw ValidationError(where + " leaves slot '" + s.name + "' unbound");
    }
  }
}

TriggerPattern PatternFromJson(const Json &j) {
  constexpr std::string_view kWhat = "pattern";
  TriggerPattern p;
  p.message_type = RequireString(j, "message_type", kWhat);
  for (const Json &t : RequireArray(j, "triggers", kWhat)) {
    if (!t.is_string()) throw ParseError("pattern: triggers must be strings", 0, 0);
    p.triggers.push_back(t.get<std::string>());
  }
  for (const Json &b : RequireArray(j, "bindings", kWhat)) {
    Binding binding;
    binding.slot = RequireString(b, "slot", "binding");
    binding.concept_name = RequireString(b, "concept", "binding");
    binding.rule = ParseRule(RequireString(b, "rule", "binding"));
    if (binding.rule == SelectionRule::kNthInSentence) {
      binding.n = static_cast<int>(RequireInt(b, "n", "binding"));
    }
    p.bindings.push_back(std::move(binding));
  }
  return p;
}

Json PatternToJson(const TriggerPattern &p) {
  Json bindings = Json::array();
  for (const Binding &b : p.bindings) {
    Json entry = {{"slot", b.slot},
                  {"concept", b.concept_name},
                  {"rule", RuleName(b.rule)}};
    if (b.rule == SelectionRule::kNthInSentence) entry["n"] = b.n;
    bindings.push_back(std::move(entry));
  }
  return {{"message_type", p.message_type},
          {"triggers", p.triggers},
          {"bindings", std::move(bindings)}};
}

ExtractionResult ExtractMessages(const Document &d,
                                 const std::vector<Mention> &mentions,
                                 const std::vector<TriggerPattern> &patterns,
                                 const Schema &schema) {
  ExtractionResult result;
  const Ontology &o = schema.ontology();

  std::vector<std::vector<const Mention *>> by_sentence(d.sentences.size());
  for (const Mention &m : mentions) {
    if (m.sentence < by_sentence.size()) by_sentence[m.sentence].push_back(&m);
  }

  for (size_t s = 0; s < d.sentences.size(); ++s) {
    const Tokens &tokens = d.sentences[s];
    for (size_t pi = 0; pi < patterns.size(); ++pi) {
      const TriggerPattern &p = patterns[pi];
      const MessageTypeSpec *spec = schema.FindType(p.message_type);
      if (spec == nullptr) continue;
      std::set<std::string> triggers;
      for (const std::string &t : p.triggers) triggers.insert(Lower(t));

      for (size_t t = 0; t < tokens.size(); ++t) {
        if (!triggers.count(Lower(tokens[t]))) continue;

        Message m;
        m.type = p.message_type;
        m.args.resize(spec->slots.size());
        bool bound = true;
        for (const Binding &b : p.bindings) {
          const Mention *hit = SelectMention(b, t, by_sentence[s], o);
          if (hit == nullptr) {
            result.diagnostics.push_back(
                {d.doc_id, s, p.message_type, "slot " + b.slot + " unbound"});
            bound = false;
            break;
          }
          m.args[*spec->SlotIndex(b.slot)] = hit->instance;
        }
        if (!bound) continue;

        m.id = d.doc_id + ".s" + std::to_string(s) + ".p" + std::to_string(pi);
        m.source = d.source;
        m.pub_time = d.pub_time;
        m.ref_time = d.RefTimeOf(s);
        m.doc_id = d.doc_id;
        m.token_length = static_cast<int64_t>(tokens.size());
        auto violations = ValidateMessage(schema, m);
        if (!violations.empty()) {
          result.diagnostics.push_back({d.doc_id, s, p.message_type,
                                        "invalid message: " +
                                            violations.front().reason});
          continue;
        }
        result.messages.push_back(std::move(m));
        break;
      }
    }
  }
  return result;
}

}  // namespace evsum
