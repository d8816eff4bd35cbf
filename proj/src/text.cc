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

#include "evsum/text.h"

#include "evsum/error.h"

namespace evsum {

namespace {

bool IsSpace(unsigned char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

// Bytes of multi-byte UTF-8 sequences count as word characters.
bool IsWordChar(unsigned char c) {
  return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'z') ||
         (c >= 'A' && c <= 'Z') || c >= 0x80 || c == '_';
}

bool IsJoiner(unsigned char c) { return c == '.' || c == '\'' || c == '-'; }

bool IsTerminal(std::string_view token) {
  return token == "." || token == "!" || token == "?";
}

void TokenizeChunk(std::string_view chunk, Tokens &out) {
  std::string word;
  for (size_t i = 0; i < chunk.size(); ++i) {
    unsigned char c = chunk[i];
    if (IsWordChar(c)) {
      word += static_cast<char>(c);
      continue;
    }
    bool inner = IsJoiner(c) && !word.empty() && i + 1 < chunk.size() &&
                 IsWordChar(static_cast<unsigned char>(chunk[i + 1]));
    if (inner) {
      word += static_cast<char>(c);
      continue;
    }
    if (!word.empty()) out.push_back(std::move(word));
    word.clear();
    out.emplace_back(1, static_cast<char>(c));
  }
  if (!word.empty()) out.push_back(std::move(word));
}

// Visits each whitespace-delimited chunk in order.
template <typename Fn>
void ForEachChunk(std::string_view text, Fn &&fn) {
  size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && IsSpace(text[i])) ++i;
    size_t start = i;
    while (i < text.size() && !IsSpace(text[i])) ++i;
    if (i > start) fn(text.substr(start, i - start));
  }
}

}  // namespace

TimePoint Document::RefTimeOf(size_t sentence) const {
  if (sentence < sentence_ref_times.size() && sentence_ref_times[sentence]) {
    return *sentence_ref_times[sentence];
  }
  return ref_time.value_or(pub_time);
}

size_t Document::TokenCount() const {
  size_t n = 0;
  for (const Tokens &s : sentences) n += s.size();
  return n;
}

Tokens Tokenize(std::string_view text, const AbbreviationList &abbreviations) {
  Tokens out;
  ForEachChunk(text, [&](std::string_view chunk) {
    if (abbreviations.count(chunk)) {
      out.emplace_back(chunk);
    } else {
      TokenizeChunk(chunk, out);
    }
  });
  return out;
}

std::vector<Tokens> SplitSentences(std::string_view raw,
                                   const AbbreviationList &abbreviations) {
  std::vector<Tokens> sentences;
  Tokens current;
  ForEachChunk(raw, [&](std::string_view chunk) {
    if (abbreviations.count(chunk)) {
      current.emplace_back(chunk);
      return;
    }
    TokenizeChunk(chunk, current);
    if (!current.empty() && IsTerminal(current.back())) {
      sentences.push_back(std::move(current));
      current.clear();
    }
  });
  if (!current.empty()) sentences.push_back(std::move(current));
  return sentences;
}

void Preprocess(Document &d, const AbbreviationList &abbreviations) {
  d.sentences = SplitSentences(d.raw, abbreviations);
}

Document DocumentFromJson(const Json &j) {
  constexpr std::string_view kWhat = "document";
  Document d;
  d.doc_id = RequireString(j, "doc_id", kWhat);
  d.source = RequireString(j, "source", kWhat);
  d.pub_time = RequireInt(j, "pub_time", kWhat);
  d.raw = RequireString(j, "text", kWhat);
  if (d.pub_time < 0) {
    throw ValidationError("document '" + d.doc_id + "': negative pub_time");
  }
  if (auto it = j.find("ref_time"); it != j.end() && !it->is_null()) {
    if (!it->is_number_integer() || it->get<int64_t>() < 0) {
      throw ParseError("document '" + d.doc_id +
                           "': ref_time must be a nonnegative integer",
                       0, 0);
    }
    d.ref_time = it->get<int64_t>();
  }
  if (auto it = j.find("sentence_ref_times"); it != j.end()) {
    if (!it->is_array()) {
      throw ParseError("document '" + d.doc_id +
                           "': sentence_ref_times must be an array",
                       0, 0);
    }
    for (const Json &t : *it) {
      if (t.is_null()) {
        d.sentence_ref_times.emplace_back();
      } else if (t.is_number_integer() && t.get<int64_t>() >= 0) {
        d.sentence_ref_times.emplace_back(t.get<int64_t>());
      } else {
        throw ParseError("document '" + d.doc_id +
                             "': bad sentence_ref_times entry",
                         0, 0);
      }
    }
  }
  return d;
}

Json DocumentToJson(const Document &d) {
  Json j = {{"doc_id", d.doc_id},
            {"source", d.source},
            {"pub_time", d.pub_time},
            {"text", d.raw}};
  if (d.ref_time) j["ref_time"] = *d.ref_time;
  if (!d.sentence_ref_times.empty()) {
    Json times = Json::array();
    for (const auto &t : d.sentence_ref_times) {
      times.push_back(t ? Json(*t) : Json(nullptr));
    }
    j["sentence_ref_times"] = std::move(times);
  }
  return j;
}

}  // namespace evsum
