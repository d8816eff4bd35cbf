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

#include "evsum/message.h"

#include <set>

#include "evsum/error.h"

namespace evsum {

std::optional<size_t> MessageTypeSpec::SlotIndex(std::string_view slot) const {
  for (size_t i = 0; i < slots.size(); ++i) {
    if (slots[i].name == slot) return i;
  }
  return std::nullopt;
}

Json MessageToJson(const Message &m) {
  return {{"id", m.id},
          {"type", m.type},
          {"args", m.args},
          {"source", m.source},
          {"pub_time", m.pub_time},
          {"ref_time", m.ref_time},
          {"doc_id", m.doc_id},
          {"token_length", m.token_length}};
}

Message MessageFromJson(const Json &j) {
  constexpr std::string_view kWhat = "message";
  Message m;
  m.id = RequireString(j, "id", kWhat);
  m.type = RequireString(j, "type", kWhat);
  for (const Json &arg : RequireArray(j, "args", kWhat)) {
    if (!arg.is_string()) {
      throw ParseError("message '" + m.id + "': args must be strings", 0, 0);
    }
    m.args.push_back(arg.get<std::string>());
  }
  m.source = RequireString(j, "source", kWhat);
  m.pub_time = RequireInt(j, "pub_time", kWhat);
  m.ref_time = RequireInt(j, "ref_time", kWhat);
  m.doc_id = RequireString(j, "doc_id", kWhat);
  m.token_length = RequireInt(j, "token_length", kWhat);
  return m;
}

std::string Predicate(const Message &m) {
  std::string out = m.type + "(";
  for (size_t i = 0; i < m.args.size(); ++i) {
    if (i) out += ",";
    out += m.args[i];
  }
  return out + ")";
}

Schema::Schema(Ontology ontology, std::vector<MessageTypeSpec> types)
    : ontology_(std::move(ontology)), types_(std::move(types)) {
  for (size_t i = 0; i < types_.size(); ++i) {
    const MessageTypeSpec &t = types_[i];
    if (!index_.emplace(t.name, i).second) {
      throw ValidationError("duplicate message type '" + t.name + "'");
    }
    std::set<std::string> seen;
    for (const Slot &s : t.slots) {
      if (!seen.insert(s.name).second) {
        throw ValidationError("message type '" + t.name +
                              "' repeats slot '" + s.name + "'");
      }
      if (!ontology_.HasConcept(s.concept_name)) {
        throw ValidationError("message type '" + t.name + "' slot '" + s.name +
                              "' requires unknown concept '" + s.concept_name +
                              "'");
      }
    }
  }
}

std::vector<MessageTypeSpec> Schema::MessageTypesFromJson(const Json &doc) {
  std::vector<MessageTypeSpec> types;
  auto it = doc.find("message_types");
  if (it == doc.end()) return types;
  if (!it->is_array()) {
    throw ParseError("'message_types' must be an array", 0, 0);
  }
  for (const Json &entry : *it) {
    MessageTypeSpec t;
    t.name = RequireString(entry, "name", "message type");
    for (const Json &slot : RequireArray(entry, "slots", "message type")) {
      t.slots.push_back({RequireString(slot, "slot", "slot"),
                         RequireString(slot, "concept", "slot")});
    }
    types.push_back(std::move(t));
  }
  return types;
}

const MessageTypeSpec *Schema::FindType(std::string_view name) const {
  auto it = index_.find(name);
  return it == index_.end() ? nullptr : &types_[it->second];
}

Json Schema::MessageTypesToJson() const {
  Json out = Json::array();
  for (const MessageTypeSpec &t : types_) {
    Json slots = Json::array();
    for (const Slot &s : t.slots) {
      slots.push_back({{"slot", s.name}, {"concept", s.concept_name}});
    }
    out.push_back({{"name", t.name}, {"slots", std::move(slots)}});
  }
  return out;
}

std::vector<Violation> ValidateMessage(const Schema &schema, const Message &m) {
  std::vector<Violation> out;
  if (m.pub_time < 0) out.push_back({"", "negative pub_time"});
  if (m.ref_time < 0) out.push_back({"", "negative ref_time"});
  if (m.token_length < 0) out.push_back({"", "negative token_length"});
  const MessageTypeSpec *spec = schema.FindType(m.type);
  if (spec == nullptr) {
    out.push_back({"", "unknown message type '" + m.type + "'"});
    return out;
  }
  if (m.args.size() != spec->slots.size()) {
    out.push_back({"", "arity mismatch: expected " +
                           std::to_string(spec->slots.size()) + " args, got " +
                           std::to_string(m.args.size())});
    return out;
  }
  const Ontology &o = schema.ontology();
  for (size_t i = 0; i < spec->slots.size(); ++i) {
    const Slot &slot = spec->slots[i];
    const std::string *concept_name = o.ConceptOfInstance(m.args[i]);
    if (concept_name == nullptr) {
      out.push_back({slot.name, "unknown instance '" + m.args[i] + "'"});
    } else if (!o.Subsumes(slot.concept_name, *concept_name)) {
      out.push_back({slot.name, "instance '" + m.args[i] + "' is a " +
                                    *concept_name + ", not a " +
                                    slot.concept_name});
    }
  }
  return out;
}

}  // namespace evsum
