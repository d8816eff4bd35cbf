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

#include "evsum/relation.h"

#include <algorithm>
#include <set>

#include "evsum/error.h"

namespace evsum {

namespace {

ParseError Malformed(const std::string &detail) {
  return ParseError("malformed constraint: " + detail, 0, 0);
}

std::string SlotRefString(const SlotRef &r) {
  return std::string(r.side == Side::kA ? "a." : "b.") + r.slot;
}

const char *OpName(ConstraintExpr::Op op) {
  using Op = ConstraintExpr::Op;
  switch (op) {
    case Op::kTrue: return "true";
    case Op::kEq: return "eq";
    case Op::kNeq: return "neq";
    case Op::kIsa: return "isa";
    case Op::kAnd: return "and";
    case Op::kOr: return "or";
    case Op::kNot: return "not";
  }
  return "";
}

void CheckSlot(const SlotRef &ref, const MessageTypeSpec &a,
               const MessageTypeSpec &b, const std::string &relation) {
  const MessageTypeSpec &t = ref.side == Side::kA ? a : b;
  if (!t.SlotIndex(ref.slot)) {
    throw ValidationError("relation '" + relation + "': message type '" +
                          t.name + "' has no slot '" + ref.slot + "'");
  }
}

void CheckExpr(const ConstraintExpr &c, const MessageTypeSpec &a,
               const MessageTypeSpec &b, const Ontology &o,
               const std::string &relation) {
  using Op = ConstraintExpr::Op;
  switch (c.op) {
    case Op::kTrue:
      return;
    case Op::kEq:
    case Op::kNeq:
      CheckSlot(c.lhs, a, b, relation);
      CheckSlot(c.rhs, a, b, relation);
      return;
    case Op::kIsa:
      CheckSlot(c.lhs, a, b, relation);
      if (!o.HasConcept(c.concept_name)) {
        throw ValidationError("relation '" + relation +
                              "': unknown concept '" + c.concept_name + "'");
      }
      return;
    case Op::kNot:
      if (c.children.size() != 1) throw Malformed("not takes one argument");
      [[fallthrough]];
    case Op::kAnd:
    case Op::kOr:
      for (const ConstraintExpr &child : c.children) {
        CheckExpr(child, a, b, o, relation);
      }
      return;
  }
}

const std::string &SlotValue(const SlotRef &ref, const Message &a,
                             const Message &b, const Schema &schema) {
  const Message &m = ref.side == Side::kA ? a : b;
  const MessageTypeSpec *spec = schema.FindType(m.type);
  if (spec == nullptr) {
    throw InvariantError("constraint over unknown message type '" + m.type +
                         "'");
  }
  auto index = spec->SlotIndex(ref.slot);
  if (!index || *index >= m.args.size()) {
    throw InvariantError("message '" + m.id + "' has no slot '" + ref.slot +
                         "'");
  }
  return m.args[*index];
}

}  // namespace

const char *RelationTypeName(RelationType type) {
  return type == RelationType::kSynchronic ? "synchronic" : "diachronic";
}

RelationType ParseRelationType(std::string_view name) {
  if (name == "synchronic") return RelationType::kSynchronic;
  if (name == "diachronic") return RelationType::kDiachronic;
  throw ParseError("unknown relation type '" + std::string(name) + "'", 0, 0);
}

ConstraintExpr ConstraintExpr::Eq(SlotRef l, SlotRef r) {
  ConstraintExpr c;
  c.op = Op::kEq;
  c.lhs = std::move(l);
  c.rhs = std::move(r);
  return c;
}

ConstraintExpr ConstraintExpr::Neq(SlotRef l, SlotRef r) {
  ConstraintExpr c = Eq(std::move(l), std::move(r));
  c.op = Op::kNeq;
  return c;
}

ConstraintExpr ConstraintExpr::Isa(SlotRef s, std::string concept_name) {
  ConstraintExpr c;
  c.op = Op::kIsa;
  c.lhs = std::move(s);
  c.concept_name = std::move(concept_name);
  return c;
}

ConstraintExpr ConstraintExpr::And(std::vector<ConstraintExpr> xs) {
  ConstraintExpr c;
  c.op = Op::kAnd;
  c.children = std::move(xs);
  return c;
}

ConstraintExpr ConstraintExpr::Or(std::vector<ConstraintExpr> xs) {
  ConstraintExpr c = And(std::move(xs));
  c.op = Op::kOr;
  return c;
}

ConstraintExpr ConstraintExpr::Not(ConstraintExpr x) {
  ConstraintExpr c;
  c.op = Op::kNot;
  c.children.push_back(std::move(x));
  return c;
}

SlotRef ParseSlotRef(std::string_view text) {
  if (text.size() < 3 || text[1] != '.' || (text[0] != 'a' && text[0] != 'b')) {
    throw Malformed("bad slot reference '" + std::string(text) +
                    "' (want a.<slot> or b.<slot>)");
  }
  return {text[0] == 'a' ? Side::kA : Side::kB, std::string(text.substr(2))};
}

ConstraintExpr ConstraintFromJson(const Json &j) {
  using Op = ConstraintExpr::Op;
  if (j.is_boolean()) {
    if (j.get<bool>()) return ConstraintExpr::True();
    return ConstraintExpr::Not(ConstraintExpr::True());
  }
  if (!j.is_object()) throw Malformed("expected an object");
  auto op_it = j.find("op");
  if (op_it == j.end() || !op_it->is_string()) throw Malformed("missing op");
  const std::string op = op_it->get<std::string>();
  Json args = j.value("args", Json::array());
  if (!args.is_array()) throw Malformed("args must be an array");

  auto string_arg = [&](size_t i) {
    if (!args[i].is_string()) throw Malformed(op + " expects string args");
    return args[i].get<std::string>();
  };

  if (op == "true") {
    if (!args.empty()) throw Malformed("true takes no arguments");
    return ConstraintExpr::True();
  }
  if (op == "eq" || op == "neq") {
    if (args.size() != 2) throw Malformed(op + " takes two arguments");
    SlotRef l = ParseSlotRef(string_arg(0));
    SlotRef r = ParseSlotRef(string_arg(1));
    return op == "eq" ? ConstraintExpr::Eq(l, r) : ConstraintExpr::Neq(l, r);
  }
  if (op == "isa") {
    if (args.size() != 2) throw Malformed("isa takes two arguments");
    return ConstraintExpr::Isa(ParseSlotRef(string_arg(0)), string_arg(1));
  }
  if (op == "and" || op == "or" || op == "not") {
    std::vector<ConstraintExpr> children;
    for (const Json &a : args) children.push_back(ConstraintFromJson(a));
    if (op == "not") {
      if (children.size() != 1) throw Malformed("not takes one argument");
      return ConstraintExpr::Not(std::move(children.front()));
    }
    ConstraintExpr c = ConstraintExpr::And(std::move(children));
    c.op = op == "and" ? Op::kAnd : Op::kOr;
    return c;
  }
  throw Malformed("unknown op '" + op + "'");
}

Json ConstraintToJson(const ConstraintExpr &c) {
  using Op = ConstraintExpr::Op;
  Json args = Json::array();
  switch (c.op) {
    case Op::kTrue:
      break;
    case Op::kEq:
    case Op::kNeq:
      args = {SlotRefString(c.lhs), SlotRefString(c.rhs)};
      break;
    case Op::kIsa:
      args = {SlotRefString(c.lhs), c.concept_name};
      break;
    case Op::kAnd:
    case Op::kOr:
    case Op::kNot:
      for (const ConstraintExpr &child : c.children) {
        args.push_back(ConstraintToJson(child));
      }
      break;
  }
  return {{"op", OpName(c.op)}, {"args", std::move(args)}};
}

std::string ConstraintToString(const ConstraintExpr &c) {
  using Op = ConstraintExpr::Op;
  switch (c.op) {
    case Op::kTrue:
      return "true";
    case Op::kEq:
    case Op::kNeq:
      return std::string(OpName(c.op)) + "(" + SlotRefString(c.lhs) + "," +
             SlotRefString(c.rhs) + ")";
    case Op::kIsa:
      return "isa(" + SlotRefString(c.lhs) + "," + c.concept_name + ")";
    default:
      break;
  }
  std::string out = std::string(OpName(c.op)) + "(";
  for (size_t i = 0; i < c.children.size(); ++i) {
    if (i) out += ",";
    out += ConstraintToString(c.children[i]);
  }
  return out + ")";
}

bool RelationSpec::Covers(std::string_view type_a,
                          std::string_view type_b) const {
  for (const auto &[a, b] : pairs) {
    if (a == type_a && b == type_b) return true;
  }
  return false;
}

void ValidateRelationSpec(const RelationSpec &spec, const Schema &schema) {
  if (spec.name.empty()) throw ValidationError("relation with empty name");
  if (spec.pairs.empty()) {
    throw ValidationError("relation '" + spec.name + "' lists no type pairs");
  }
  for (const auto &[type_a, type_b] : spec.pairs) {
    const MessageTypeSpec *a = schema.FindType(type_a);
    const MessageTypeSpec *b = schema.FindType(type_b);
    for (const auto &[name, t] : {std::pair{type_a, a}, std::pair{type_b, b}}) {
      if (t == nullptr) {
        throw ValidationError("relation '" + spec.name +
                              "': unknown message type '" + name + "'");
      }
    }
    CheckExpr(spec.constraint, *a, *b, schema.ontology(), spec.name);
  }
}

RelationSpec CompileRelationSpec(const Json &doc, const Schema &schema) {
  constexpr std::string_view kWhat = "relation";
  RelationSpec spec;
  spec.name = RequireString(doc, "name", kWhat);
  spec.type = ParseRelationType(RequireString(doc, "type", kWhat));
  for (const Json &pair : RequireArray(doc, "pairs", kWhat)) {
    if (!pair.is_array() || pair.size() != 2 || !pair[0].is_string() ||
        !pair[1].is_string()) {
      throw ParseError("relation '" + spec.name +
                           "': pairs must be [typeA, typeB] string pairs",
                       0, 0);
    }
    spec.pairs.emplace_back(pair[0].get<std::string>(),
                            pair[1].get<std::string>());
  }
  if (auto it = doc.find("constraint"); it != doc.end() && !it->is_null()) {
    spec.constraint = ConstraintFromJson(*it);
  }
  ValidateRelationSpec(spec, schema);
  return spec;
}

RelationSpec CompileRelationSpec(std::string_view text, const Schema &schema) {
  return CompileRelationSpec(ParseJson(text, "relation"), schema);
}

std::vector<RelationSpec> CompileRelationSpecs(const Json &docs,
                                               const Schema &schema) {
  if (!docs.is_array()) throw ParseError("'relations' must be an array", 0, 0);
  std::vector<RelationSpec> specs;
  std::set<std::string> names;
  for (const Json &doc : docs) {
    RelationSpec spec = CompileRelationSpec(doc, schema);
    if (!names.insert(spec.name).second) {
      throw ValidationError("duplicate relation name '" + spec.name + "'");
    }
    specs.push_back(std::move(spec));
  }
  return specs;
}

Json RelationSpecToJson(const RelationSpec &spec) {
  Json pairs = Json::array();
  for (const auto &[a, b] : spec.pairs) pairs.push_back({a, b});
  return {{"name", spec.name},
          {"type", RelationTypeName(spec.type)},
          {"pairs", std::move(pairs)},
          {"constraint", ConstraintToJson(spec.constraint)}};
}

bool EvalConstraint(const ConstraintExpr &c, const Message &a,
                    const Message &b, const Schema &schema) {
  using Op = ConstraintExpr::Op;
  switch (c.op) {
    case Op::kTrue:
      return true;
    case Op::kEq:
      return SlotValue(c.lhs, a, b, schema) == SlotValue(c.rhs, a, b, schema);
    case Op::kNeq:
      return SlotValue(c.lhs, a, b, schema) != SlotValue(c.rhs, a, b, schema);
    case Op::kIsa: {
      const std::string &instance = SlotValue(c.lhs, a, b, schema);
      const std::string *concept_name =
          schema.ontology().ConceptOfInstance(instance);
      if (concept_name == nullptr) {
        throw InvariantError("unknown instance '" + instance + "'");
      }
      return schema.ontology().Subsumes(c.concept_name, *concept_name);
    }
    case Op::kAnd:
      for (const ConstraintExpr &child : c.children) {
        if (!EvalConstraint(child, a, b, schema)) return false;
      }
      return true;
    case Op::kOr:
      for (const ConstraintExpr &child : c.children) {
        if (EvalConstraint(child, a, b, schema)) return true;
      }
      return false;
    case Op::kNot:
      return !EvalConstraint(c.children.at(0), a, b, schema);
  }
  return false;
}

bool Admissible(RelationType type, const Message &from, const Message &to) {
  if (type == RelationType::kSynchronic) {
    return from.source < to.source && from.ref_time == to.ref_time;
  }
  return from.source == to.source && from.ref_time < to.ref_time;
}

std::vector<RelationInstance> ApplyRelations(
    const std::vector<Message> &messages,
    const std::vector<RelationSpec> &specs, const Schema &schema) {
  std::vector<RelationInstance> out;
  for (const RelationSpec &spec : specs) {
    for (const Message &a : messages) {
      for (const Message &b : messages) {
        if (&a == &b) continue;
        if (!Admissible(spec.type, a, b)) continue;
        if (!spec.Covers(a.type, b.type)) continue;
        if (!EvalConstraint(spec.constraint, a, b, schema)) continue;
        out.push_back({spec.name, spec.type, a.id, b.id});
      }
    }
  }
  std::sort(out.begin(), out.end(),
            [](const RelationInstance &x, const RelationInstance &y) {
              return std::tie(x.spec, x.from, x.to) <
                     std::tie(y.spec, y.from, y.to);
            });
  return out;
}

}  // namespace evsum
