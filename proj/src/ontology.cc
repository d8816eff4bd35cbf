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

#include "evsum/ontology.h"

#include <algorithm>

#include "evsum/error.h"

namespace evsum {

namespace {

// Walks parent links from every concept; a node met again on the current
// walk closes a cycle.
void CheckAcyclic(const std::vector<Concept> &concepts,
                  const std::map<std::string, size_t, std::less<>> &index) {
  enum State { kUnvisited, kOnPath, kDone };
  std::vector<State> state(concepts.size(), kUnvisited);
  for (size_t start = 0; start < concepts.size(); ++start) {
    std::vector<size_t> path;
    size_t node = start;
    while (true) {
      if (state[node] == kDone) break;
      if (state[node] == kOnPath) {
        auto first = std::find(path.begin(), path.end(), node);
        std::string cycle;
        for (auto it = first; it != path.end(); ++it) {
          cycle += concepts[*it].name + " -> ";
        }
        cycle += concepts[node].name;
        throw ValidationError("isa cycle: " + cycle);
      }
      state[node] = kOnPath;
      path.push_back(node);
      const auto &parent = concepts[node].parent;
      if (!parent) break;
      node = index.find(*parent)->second;
    }
    for (size_t n : path) state[n] = kDone;
  }
}

}  // namespace

Ontology Ontology::Build(std::vector<Concept> concepts, InstanceMap instances) {
  Ontology o;
  for (size_t i = 0; i < concepts.size(); ++i) {
    const Concept &c = concepts[i];
    if (c.name.empty()) throw ValidationError("concept with empty name");
    if (!o.index_.emplace(c.name, i).second) {
      throw ValidationError("duplicate concept '" + c.name + "'");
    }
  }
  for (const Concept &c : concepts) {
    if (c.parent && !o.index_.count(*c.parent)) {
      throw ValidationError("concept '" + c.name + "' has unknown parent '" +
                            *c.parent + "'");
    }
  }
  CheckAcyclic(concepts, o.index_);
  for (const auto &[surface, concept_name] : instances) {
    if (!o.index_.count(concept_name)) {
      throw ValidationError("instance '" + surface +
                            "' refers to unknown concept '" + concept_name +
                            "'");
    }
  }
  o.concepts_ = std::move(concepts);
  o.instances_ = std::move(instances);
  return o;
}

Ontology Ontology::FromJson(const Json &doc) {
  constexpr std::string_view kWhat = "ontology";
  std::vector<Concept> concepts;
  for (const Json &entry : RequireArray(doc, "concepts", kWhat)) {
    Concept c;
    c.name = RequireString(entry, "name", "concept");
    if (auto it = entry.find("parent"); it != entry.end() && !it->is_null()) {
      if (!it->is_string()) {
        throw ParseError("concept '" + c.name + "': parent must be a string",
                         0, 0);
      }
      c.parent = it->get<std::string>();
    }
    concepts.push_back(std::move(c));
  }
  InstanceMap instances;
  if (auto it = doc.find("instances"); it != doc.end()) {
    if (!it->is_object()) {
      throw ParseError("ontology: 'instances' must be an object", 0, 0);
    }
    for (const auto &[surface, concept_name] : it->items()) {
      if (!concept_name.is_string()) {
        throw ParseError("instance '" + surface + "' must map to a string", 0,
                         0);
      }
      instances.emplace(surface, concept_name.get<std::string>());
    }
  }
  return Build(std::move(concepts), std::move(instances));
}

Ontology Ontology::Parse(std::string_view text) {
  return FromJson(ParseJson(text, "ontology"));
}

Json Ontology::ToJson() const {
  Json concepts = Json::array();
  for (const Concept &c : concepts_) {
    Json entry = {{"name", c.name}};
    if (c.parent) entry["parent"] = *c.parent;
    concepts.push_back(std::move(entry));
  }
  Json instances = Json::object();
  for (const auto &[surface, concept_name] : instances_) {
    instances[surface] = concept_name;
  }
  return {{"concepts", std::move(concepts)}, {"instances", std::move(instances)}};
}

bool Ontology::HasConcept(std::string_view name) const {
  return index_.find(name) != index_.end();
}

const Concept &Ontology::GetConcept(std::string_view name) const {
  auto it = index_.find(name);
  if (it == index_.end()) {
    throw ValidationError("unknown concept '" + std::string(name) + "'");
  }
  return concepts_[it->second];
}

const std::string *Ontology::ConceptOfInstance(std::string_view instance) const {
  auto it = instances_.find(instance);
  return it == instances_.end() ? nullptr : &it->second;
}

bool Ontology::Subsumes(std::string_view ancestor,
                        std::string_view descendant) const {
  GetConcept(ancestor);
  const Concept *c = &GetConcept(descendant);
  while (true) {
    if (c->name == ancestor) return true;
    if (!c->parent) return false;
    c = &GetConcept(*c->parent);
  }
}

const std::string &Ontology::Root(std::string_view name) const {
  const Concept *c = &GetConcept(name);
  while (c->parent) c = &GetConcept(*c->parent);
  return c->name;
}

bool operator==(const Ontology &a, const Ontology &b) {
  if (a.instances_ != b.instances_) return false;
  if (a.concepts_.size() != b.concepts_.size()) return false;
  for (const Concept &c : a.concepts_) {
    auto it = b.index_.find(c.name);
    if (it == b.index_.end() || !(b.concepts_[it->second] == c)) return false;
  }
  return true;
}

}  // namespace evsum
