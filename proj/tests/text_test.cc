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

#include "doctest.h"

using namespace evsum;

namespace {

const AbbreviationList kAbbrevs = {"Mr.", "Dr."};

}  // namespace

TEST_CASE("two sentence split") {
  auto s = SplitSentences("Rooney scored. United won.", kAbbrevs);
  REQUIRE(s.size() == 2);
  CHECK(s[0] == Tokens{"Rooney", "scored", "."});
  CHECK(s[1] == Tokens{"United", "won", "."});
}

TEST_CASE("empty text has no sentences") {
  CHECK(SplitSentences("", kAbbrevs).empty());
  CHECK(SplitSentences("   \n\t ", kAbbrevs).empty());
}

TEST_CASE("abbreviation does not end a sentence") {
  // Hand-tokenized fixture.
  auto s = SplitSentences("Mr. Smith left.", kAbbrevs);
  REQUIRE(s.size() == 1);
  CHECK(s[0] == Tokens{"Mr.", "Smith", "left", "."});

  auto without = SplitSentences("Mr. Smith left.", {});
  REQUIRE(without.size() == 2);
  CHECK(without[0] == Tokens{"Mr", "."});
}

TEST_CASE("punctuation splitting") {
  CHECK(Tokenize("Hello, world!", {}) == Tokens{"Hello", ",", "world", "!"});
  CHECK(Tokenize("(AC Milan)", {}) == Tokens{"(", "AC", "Milan", ")"});
  CHECK(Tokenize("O'Neil's half-time 2.5", {}) ==
        Tokens{"O'Neil's", "half-time", "2.5"});
  CHECK(Tokenize("end...", {}) == Tokens{"end", ".", ".", "."});
}

TEST_CASE("no terminator keeps trailing sentence") {
  auto s = SplitSentences("Rooney scored for United", {});
  REQUIRE(s.size() == 1);
  CHECK(s[0].size() == 4);
}

TEST_CASE("question and exclamation end sentences") {
  auto s = SplitSentences("Who scored? Rooney! Yes.", {});
  CHECK(s.size() == 3);
}

TEST_CASE("terminator needs following whitespace") {
  // "2.5" is one token, and "U.S.A." stays inside one chunk.
  auto s = SplitSentences("He ran 2.5 miles.", {});
  CHECK(s.size() == 1);
}

TEST_CASE("sentences cover the raw text in order") {
  const std::string raw = "A b. C, d! E? F";
  auto sentences = SplitSentences(raw, {});
  Tokens flat;
  for (const auto &s : sentences) flat.insert(flat.end(), s.begin(), s.end());
  CHECK(flat == Tokenize(raw, {}));
}

TEST_CASE("preprocess and reference times") {
  Document d;
  d.doc_id = "d1";
  d.source = "bbc";
  d.pub_time = 7;
  d.raw = "One. Two.";
  Preprocess(d, {});
  REQUIRE(d.sentences.size() == 2);
  CHECK(d.TokenCount() == 4);
  CHECK(d.RefTimeOf(0) == 7);
  d.ref_time = 5;
  CHECK(d.RefTimeOf(1) == 5);
  d.sentence_ref_times = {std::nullopt, 3};
  CHECK(d.RefTimeOf(0) == 5);
  CHECK(d.RefTimeOf(1) == 3);
}

TEST_CASE("document json round trip") {
  Document d;
  d.doc_id = "d1";
  d.source = "bbc";
  d.pub_time = 2;
  d.raw = "Rooney scored.";
  d.ref_time = 1;
  d.sentence_ref_times = {0};
  Document back = DocumentFromJson(DocumentToJson(d));
  CHECK(back.doc_id == d.doc_id);
  CHECK(back.source == d.source);
  CHECK(back.pub_time == d.pub_time);
  CHECK(back.raw == d.raw);
  CHECK(back.ref_time == d.ref_time);
  CHECK(back.sentence_ref_times == d.sentence_ref_times);
}
