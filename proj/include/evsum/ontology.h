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

#ifndef EVSUM_ONTOLOGY_H_
#define EVSUM_ONTOLOGY_H_

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "evsum/json_io.h"

namespace evsum {

struct Concept {
  std::string name;
  std::optional<std::string> parent;  // isa link

  friend bool operator==(const Concept &, const Concept &) = default;
};

// Domain concept hierarchy plus the instances that message arguments are
// drawn from. The isa graph is a forest: every concept has at most one
// parent. Immutable once built.
class Ontology {
 public:
  using InstanceMap = std::map<std::string, std::string, std::less<>>;

  Ontology() = default;

  // Validates names, parent links, acyclicity and instance targets. Throws
  // Error(kValidation) on the first violation; cycles are reported as
  // "A -> B -> A".
  static Ontology Build(std::vector<Concept> concepts, InstanceMap instances);

  // Reads the "concepts" and "instances" members of a domain document.
  static Ontology FromJson(const Json &doc);
  static Ontology Parse(std::string_view text);

  // {"concepts":[...], "instances":{...}}; FromJson(ToJson()) == *this.
  Json ToJson() const;

  bool HasConcept(std::string_view name) const;
  const Concept &GetConcept(std::string_view name) const;

  // Concept of an instance, or nullptr if the instance is unknown.
  const std::string *ConceptOfInstance(std::string_view instance) const;

  // True iff `ancestor` equals `descendant` or is reachable from it by
  // following parent links. Throws Error(kValidation) for unknown names.
  bool Subsumes(std::string_view ancestor, std::string_view descendant) const;

  // Top-level concept above `name`.
  const std::string &Root(std::string_view name) const;

  const std::vector<Concept> &concepts() const { return concepts_; }
  const InstanceMap &instances() const { return instances_; }

  // Set semantics over concepts; declaration order is not significant.
  friend bool operator==(const Ontology &a, const Ontology &b);

 private:
  std::vector<Concept> concepts_;
  std::map<std::string, size_t, std::less<>> index_;
  InstanceMap instances_;
};

}  // namespace evsum

#endif  // EVSUM_ONTOLOGY_H_
