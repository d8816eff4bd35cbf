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

#include "evsum/domain.h"

#include <algorithm>
#include <map>

#include "evsum/error.h"

namespace evsum {

DomainSpec DomainSpec::FromJson(const Json &doc) {
  RequireObject(doc, "domain");
  DomainSpec d;
  d.schema = Schema(Ontology::FromJson(doc), Schema::MessageTypesFromJson(doc));

  if (auto it = doc.find("abbreviations"); it != doc.end()) {
    if (!it->is_array()) throw ParseError("'abbreviations' must be an array", 0, 0);
    for (const Json &a : *it) {
      if (!a.is_string()) throw ParseError("abbreviations must be strings", 0, 0);
      d.abbreviations.insert(a.get<std::string>());
    }
  }

  if (auto it = doc.find("gazetteer"); it != doc.end()) {
    if (!it->is_object()) throw ParseError("'gazetteer' must be an object", 0, 0);
    std::map<std::string, std::string> entries;
    for (const auto &[surface, instance] : it->items()) {
      if (!instance.is_string()) {
        throw ParseError("gazetteer entry '" + surface + "' must be a string",
                         0, 0);
      }
      entries.emplace(surface, instance.get<std::string>());
    }
    d.gazetteer = Gazetteer(entries, d.schema.ontology(), d.abbreviations);
  }

  if (auto it = doc.find("patterns"); it != doc.end()) {
    if (!it->is_array()) throw ParseError("'patterns' must be an array", 0, 0);
    for (const Json &p : *it) {
      d.patterns.push_back(PatternFromJson(p));
      ValidatePattern(d.patterns.back(), d.schema);
    }
  }

  if (auto it = doc.find("relations"); it != doc.end()) {
    d.relations = CompileRelationSpecs(*it, d.schema);
  }
  return d;
}

DomainSpec DomainSpec::Parse(std::string_view text) {
  return FromJson(ParseJson(text, "domain"));
}

Json DomainSpec::ToJson() const {
  Json out = schema.ontology().ToJson();
  out["message_types"] = schema.MessageTypesToJson();
  out["abbreviations"] = Json(std::vector<std::string>(abbreviations.begin(),
                                                       abbreviations.end()));
  out["gazetteer"] = gazetteer.ToJson();
  Json patterns_json = Json::array();
  for (const TriggerPattern &p : patterns) patterns_json.push_back(PatternToJson(p));
  out["patterns"] = std::move(patterns_json);
  Json relations_json = Json::array();
  for (const RelationSpec &r : relations) {
    relations_json.push_back(RelationSpecToJson(r));
  }
  out["relations"] = std::move(relations_json);
  return out;
}

ExtractionResult ExtractCorpus(std::vector<Document> &docs,
                               const DomainSpec &domain) {
  std::sort(docs.begin(), docs.end(), [](const Document &a, const Document &b) {
    return a.doc_id < b.doc_id;
  });
  for (size_t i = 1; i < docs.size(); ++i) {
    if (docs[i].doc_id == docs[i - 1].doc_id) {
      throw ValidationError("duplicate doc_id '" + docs[i].doc_id + "'");
    }
  }
  ExtractionResult all;
  for (Document &d : docs) {
    Preprocess(d, domain.abbreviations);
    auto mentions = RecognizeEntities(d, domain.gazetteer, domain.schema.ontology());
    ExtractionResult r =
        ExtractMessages(d, mentions, domain.patterns, domain.schema);
    std::move(r.messages.begin(), r.messages.end(),
              std::back_inserter(all.messages));
    std::move(r.diagnostics.begin(), r.diagnostics.end(),
              std::back_inserter(all.diagnostics));
  }
  return all;
}

}  // namespace evsum
