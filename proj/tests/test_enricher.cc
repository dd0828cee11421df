// Copyright 2026 The Salience Authors.
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

#include <algorithm>
#include <string>

#include "doctest.h"
#include "salience/enricher.h"
#include "salience/semantics.h"
#include "support.h"

namespace salience {
namespace {

using testing::Entity;
using testing::MakeKb;

std::vector<std::string> Surfaces(const TokenizedText& t) {
  std::vector<std::string> out;
  for (const Token& token : t.tokens) out.push_back(token.surface);
  return out;
}

TEST_CASE("tokenize a single sentence") {
  const TokenizedText t = Tokenize("Hello world.");
  CHECK(t.sentences.size() == 1);
  CHECK(Surfaces(t) == std::vector<std::string>{"Hello", "world", "."});
  CHECK(t.tokens[0].pos == "NNP");
  CHECK(t.tokens[1].pos == "NN");
  CHECK(t.tokens[1].char_start == 6);
  CHECK(t.tokens[1].char_end == 11);
}

TEST_CASE("tokenize empty text") {
  const TokenizedText t = Tokenize("");
  CHECK(t.sentences.empty());
  CHECK(t.tokens.empty());
}

TEST_CASE("abbreviations are not special-cased") {
  // Every terminator followed by whitespace closes a sentence: "A." | "B." |
  // "Smith won." | "He left."
  const TokenizedText t = Tokenize("A. B. Smith won. He left.");
  CHECK(t.sentences.size() == 4);
}

TEST_CASE("terminator without following whitespace does not split") {
  const TokenizedText t = Tokenize("Version 2.5 shipped. Done");
  CHECK(t.sentences.size() == 2);
  CHECK(t.tokens[1].pos == "CD");
}

TEST_CASE("token offsets slice the text") {
  const std::string text = "  Mr. O'Neil, (the mayor) met 3 people!  Then left?";
  const TokenizedText t = Tokenize(text);
  for (const Token& token : t.tokens) {
    CHECK(text.substr(token.char_start, token.char_end - token.char_start) ==
          token.surface);
  }
}

KnowledgeBase NewYorkKb() {
  return MakeKb({Entity(1, "New York", {100}, {"new york"}),
                 Entity(2, "New York City", {100, 101}, {"new york city"}),
                 Entity(3, "Barack Obama", {100, 102}, {"barack obama"}),
                 Entity(4, "Obama (surname)", {103}, {"obama"})});
}

TEST_CASE("longest anchor wins") {
  const KnowledgeBase kb = NewYorkKb();
  const std::string text = "I love new york city";
  const auto mentions = DetectMentions(text, Tokenize(text), kb);
  REQUIRE(mentions.size() == 1);
  CHECK(mentions[0].anchor == "new york city");
  CHECK(mentions[0].first_token == 2);
  CHECK(mentions[0].last_token == 4);
}

TEST_CASE("overlapping anchors yield one mention") {
  const KnowledgeBase kb = NewYorkKb();
  const std::string text = "barack obama spoke";
  const auto mentions = DetectMentions(text, Tokenize(text), kb);
  REQUIRE(mentions.size() == 1);
  CHECK(mentions[0].anchor == "barack obama");
}

TEST_CASE("kb without anchors detects nothing") {
  const KnowledgeBase kb = MakeKb({Entity(1, "One", {})});
  const std::string text = "One two three";
  CHECK(DetectMentions(text, Tokenize(text), kb).empty());
}

TEST_CASE("single mention has rho zero") {
  const KnowledgeBase kb = MakeKb({Entity(1, "Pisa", {10}, {"pisa"})});
  const EnrichedDocument doc = Enrich("", "I was in Pisa.", kb);
  REQUIRE(doc.annotations.size() == 1);
  CHECK(doc.annotations[0].commonness == 1.0);
  CHECK(doc.annotations[0].rho == 0.0);
}

TEST_CASE("entities sharing all in-links have rho one") {
  const KnowledgeBase kb =
      MakeKb({Entity(1, "Pisa", {10, 11}, {"pisa"}),
              Entity(2, "Tuscany", {10, 11}, {"tuscany"})});
  const EnrichedDocument doc = Enrich("", "Pisa is in Tuscany.", kb);
  REQUIRE(doc.annotations.size() == 2);
  CHECK(doc.annotations[0].rho == 1.0);
  CHECK(doc.annotations[1].rho == 1.0);
}

TEST_CASE("rho is the mean jaccard to the other mentions") {
  // in-links: a {10,11,12}, b {11,12,13}, c {12,14}; d, e unused.
  // J(a,b) = 2/4, J(a,c) = 1/4, J(b,c) = 1/4.
  const KnowledgeBase kb = MakeKb({Entity(1, "A", {10, 11, 12}, {"alpha"}),
                                   Entity(2, "B", {11, 12, 13}, {"beta"}),
                                   Entity(3, "C", {12, 14}, {"gamma"}),
                                   Entity(4, "D", {10}, {"delta"}),
                                   Entity(5, "E", {15}, {"epsilon"})});
  const EnrichedDocument doc = Enrich("", "alpha met beta and gamma.", kb);
  REQUIRE(doc.annotations.size() == 3);
  CHECK(doc.annotations[0].rho == doctest::Approx((0.5 + 0.25) / 2).epsilon(1e-15));
  CHECK(doc.annotations[1].rho == doctest::Approx((0.5 + 0.25) / 2).epsilon(1e-15));
  CHECK(doc.annotations[2].rho == doctest::Approx((0.25 + 0.25) / 2).epsilon(1e-15));
}

TEST_CASE("ambiguous anchor resolves to the highest prior, then the smaller id") {
  KbEntity a = Entity(5, "Paris (Texas)", {});
  KbEntity b = Entity(3, "Paris", {});
  a.anchors["paris"] = {{5, 1}, {3, 1}};
  const KnowledgeBase tie = MakeKb({a, b});
  const auto tied = Enrich("", "Paris", tie).annotations;
  REQUIRE(tied.size() == 1);
  CHECK(tied[0].entity == 3);
  CHECK(tied[0].commonness == 0.5);

  a.anchors["paris"] = {{5, 3}, {3, 1}};
  const auto skewed = Enrich("", "Paris", MakeKb({a, b})).annotations;
  CHECK(skewed[0].entity == 5);
  CHECK(skewed[0].commonness == 0.75);
}

TEST_CASE("enrich handles empty content and annotates the title") {
  const KnowledgeBase kb = NewYorkKb();
  const EnrichedDocument empty = Enrich("", "", kb);
  CHECK(empty.annotations.empty());
  CHECK_NOTHROW(ValidateDocument(empty, &kb));

  const EnrichedDocument titled = Enrich("Obama travels.", "", kb);
  REQUIRE(titled.title_annotations.size() == 1);
  CHECK(titled.title_annotations[0].entity == 4);
}

TEST_CASE("planted anchors land at exact offsets") {
  const KnowledgeBase kb = NewYorkKb();
  const std::string content =
      "Yesterday barack obama visited new york city. Later new york slept.";
  const EnrichedDocument doc = Enrich("", content, kb);
  REQUIRE(doc.annotations.size() == 3);
  CHECK(doc.annotations[0].char_start == content.find("barack"));
  CHECK(doc.annotations[0].entity == 3);
  CHECK(doc.annotations[1].char_start == content.find("new york city"));
  CHECK(doc.annotations[1].char_end ==
        static_cast<int64_t>(content.find("new york city") + 13));
  CHECK(doc.annotations[1].entity == 2);
  CHECK(doc.annotations[2].char_start == content.rfind("new york"));
  CHECK(doc.annotations[2].entity == 1);
  CHECK(doc.annotations[2].sentence_index == 1);
}

TEST_CASE("enrich output always validates") {
  const KnowledgeBase kb = NewYorkKb();
  const std::vector<std::string> words = {
      "new", "york", "city", "barack", "obama", "Obama", "spoke", ".", ",",
      "!", "NEW", "York", "and", "the", "?", "  "};
  Rng rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    std::string text;
    const int n = static_cast<int>(rng.Index(30));
    for (int i = 0; i < n; ++i) {
      text += words[rng.Index(words.size())];
      if (rng.Bernoulli(0.8)) text += ' ';
    }
    const EnrichedDocument doc = Enrich(text, text, kb);
    CHECK_NOTHROW(ValidateDocument(doc, &kb));
    for (size_t i = 1; i < doc.annotations.size(); ++i) {
      CHECK(doc.annotations[i - 1].char_end <= doc.annotations[i].char_start);
    }
  }
}

}  // namespace
}  // namespace salience
