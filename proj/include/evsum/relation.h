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

// Synchronic and Diachronic Relations (SDRs).
//
// A relation is defined by four fields: its type (synchronic or diachronic),
// its name, the message-type pairs it connects, and a constraint over the
// arguments of the two messages. Constraints are quantifier-free formulas
// over slot equality and concept membership:
//
//   eq(a.s, b.t)   neq(a.s, b.t)   isa(a.s, Concept)   isa(b.t, Concept)
//   and(...)       or(...)         not(x)              true
//
// where `a` is the first message of the pair and `b` the second.

#ifndef EVSUM_RELATION_H_
#define EVSUM_RELATION_H_

#include <string>
#include <utility>
#include <vector>

#include "evsum/json_io.h"
#include "evsum/message.h"

namespace evsum {

enum class RelationType { kSynchronic, kDiachronic };

const char *RelationTypeName(RelationType type);
RelationType ParseRelationType(std::string_view name);

enum class Side { kA, kB };

struct SlotRef {
  Side side = Side::kA;
  std::string slot;

  friend bool operator==(const SlotRef &, const SlotRef &) = default;
};

struct ConstraintExpr {
  enum class Op { kTrue, kEq, kNeq, kIsa, kAnd, kOr, kNot };

  Op op = Op::kTrue;
  SlotRef lhs;               // eq, neq, isa
  SlotRef rhs;               // eq, neq
  std::string concept_name;  // isa
  std::vector<ConstraintExpr> children;  // and, or, not

  static ConstraintExpr True() { return {}; }
  static ConstraintExpr Eq(SlotRef l, SlotRef r);
  static ConstraintExpr Neq(SlotRef l, SlotRef r);
  static ConstraintExpr Isa(SlotRef s, std::string concept_name);
  static ConstraintExpr And(std::vector<ConstraintExpr> xs);
  static ConstraintExpr Or(std::vector<ConstraintExpr> xs);
  static ConstraintExpr Not(ConstraintExpr x);

  friend bool operator==(const ConstraintExpr &,
                         const ConstraintExpr &) = default;
};

// Parses "a.slot" / "b.slot".
SlotRef ParseSlotRef(std::string_view text);

// Nested {"op","args"} trees; the JSON literal `true` is also accepted.
ConstraintExpr ConstraintFromJson(const Json &j);
Json ConstraintToJson(const ConstraintExpr &c);
std::string ConstraintToString(const ConstraintExpr &c);

struct RelationSpec {
  RelationType type = RelationType::kSynchronic;
  std::string name;
  std::vector<std::pair<std::string, std::string>> pairs;  // (type A, type B)
  ConstraintExpr constraint;

  bool Covers(std::string_view type_a, std::string_view type_b) const;
};

// Checks that all referenced message types, slots and concepts exist for
// every pair. Throws ParseError for malformed documents and
// Error(kValidation) naming the offending slot, type or concept.
RelationSpec CompileRelationSpec(const Json &doc, const Schema &schema);
RelationSpec CompileRelationSpec(std::string_view text, const Schema &schema);

// Validates an already-built spec the same way.
void ValidateRelationSpec(const RelationSpec &spec, const Schema &schema);

// Compiles a list and enforces unique names.
std::vector<RelationSpec> CompileRelationSpecs(const Json &docs,
                                               const Schema &schema);

Json RelationSpecToJson(const RelationSpec &spec);

// Standard boolean semantics. eq/neq compare instance identifiers; isa tests
// the instance's concept with Ontology::Subsumes. Slot references must be
// valid for the messages' types (Error(kInvariant) otherwise).
bool EvalConstraint(const ConstraintExpr &c, const Message &a,
                    const Message &b, const Schema &schema);

struct RelationInstance {
  std::string spec;
  RelationType type = RelationType::kSynchronic;
  std::string from;  // message ids
  std::string to;

  friend bool operator==(const RelationInstance &,
                         const RelationInstance &) = default;
  friend auto operator<=>(const RelationInstance &,
                          const RelationInstance &) = default;
};

// Synchronic: different sources, same ref_time, from.source < to.source.
// Diachronic: same source, from.ref_time < to.ref_time.
bool Admissible(RelationType type, const Message &from, const Message &to);

// Every admissible ordered pair whose types are covered by a spec and whose
// constraint holds, sorted by (spec name, from id, to id).
std::vector<RelationInstance> ApplyRelations(
    const std::vector<Message> &messages,
    const std::vector<RelationSpec> &specs, const Schema &schema);

}  // namespace evsum

#endif  // EVSUM_RELATION_H_
