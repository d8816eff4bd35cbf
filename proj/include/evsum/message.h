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

// Messages: typed actions whose arguments are ontology instances,
//   message_type(arg_1, ..., arg_n)
// annotated with the emitting source, publication time and reference time.

#ifndef EVSUM_MESSAGE_H_
#define EVSUM_MESSAGE_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "evsum/json_io.h"
#include "evsum/ontology.h"

namespace evsum {

// Times are nonnegative integers in scenario-defined units.
using TimePoint = int64_t;

struct Slot {
  std::string name;
  std::string concept_name;  // required concept of the filler

  friend bool operator==(const Slot &, const Slot &) = default;
};

struct MessageTypeSpec {
  std::string name;
  std::vector<Slot> slots;

  // Index of the named slot, if any.
  std::optional<size_t> SlotIndex(std::string_view slot) const;

  friend bool operator==(const MessageTypeSpec &,
                         const MessageTypeSpec &) = default;
};

struct Message {
  std::string id;
  std::string type;
  std::vector<std::string> args;  // instance identifiers
  std::string source;
  TimePoint pub_time = 0;
  TimePoint ref_time = 0;
  std::string doc_id;
  int64_t token_length = 0;  // tokens in the originating sentence

  friend bool operator==(const Message &, const Message &) = default;
};

Json MessageToJson(const Message &m);
Message MessageFromJson(const Json &j);

// "type(arg1,arg2)" — the predicate part of a message.
std::string Predicate(const Message &m);

// An ontology together with the message types defined over it.
class Schema {
 public:
  Schema() = default;

  // Checks slot-name uniqueness and slot concepts. Throws Error(kValidation).
  Schema(Ontology ontology, std::vector<MessageTypeSpec> types);

  static std::vector<MessageTypeSpec> MessageTypesFromJson(const Json &doc);

  const Ontology &ontology() const { return ontology_; }
  const std::vector<MessageTypeSpec> &types() const { return types_; }

  // nullptr if unknown.
  const MessageTypeSpec *FindType(std::string_view name) const;

  Json MessageTypesToJson() const;

 private:
  Ontology ontology_;
  std::vector<MessageTypeSpec> types_;
  std::map<std::string, size_t, std::less<>> index_;
};

struct Violation {
  std::string slot;  // empty for message-level problems
  std::string reason;
};

// Empty result means the message is valid against the schema.
std::vector<Violation> ValidateMessage(const Schema &schema, const Message &m);

}  // namespace evsum

#endif  // EVSUM_MESSAGE_H_
