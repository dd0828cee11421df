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

// Test fixtures: hand-built documents and knowledge bases.

#ifndef SALIENCE_TESTS_SUPPORT_H_
#define SALIENCE_TESTS_SUPPORT_H_

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "salience/corpus.h"
#include "salience/util.h"

namespace salience::testing {

// Builds a valid EnrichedDocument token by token. Sentences are
// space-separated tokens joined by single spaces; token indices are global.
class DocBuilder {
 public:
  explicit DocBuilder(std::string doc_id = "doc");

  DocBuilder& Title(std::string title);
  DocBuilder& Headline(std::string headline);
  DocBuilder& Sentence(std::string_view text);
  // Sentence with mention markup: "[2:Barack Obama] met [1,0.5,0.25:Pisa] ."
  // annotates the bracketed tokens with entity 2 (commonness 1, rho 0) and
  // entity 1 (commonness 0.5, rho 0.25).
  DocBuilder& Text(std::string_view marked);
  DocBuilder& Pos(int token, std::string pos);
  // Annotates `length` tokens starting at token `first`.
  DocBuilder& Mention(EntityId entity, int first, int length = 1,
                      double commonness = 1.0, double rho = 0.0);
  // Annotates the first occurrence of `text` in the title.
  DocBuilder& TitleMention(EntityId entity, std::string_view text);
  DocBuilder& Dep(int head, int dependent, std::string relation);
  // One chain of (first_token, last_token) spans.
  DocBuilder& Coref(std::vector<std::pair<int, int>> spans);
  DocBuilder& Gold(std::vector<EntityId> gold);

  int token_count() const { return static_cast<int>(doc_.tokens.size()); }

  // Sorts annotations by offset and validates.
  EnrichedDocument Build() const;

 private:
  EnrichedDocument doc_;
};

// Capitalized tokens are NNP, numbers CD, punctuation PUNCT, else NN.
std::string HeuristicPos(std::string_view token);

KbEntity Entity(EntityId id, std::string title, std::vector<EntityId> in_links,
                std::vector<std::string> anchors = {});

// Adds a bare entity for every in-link id that has no entry of its own.
KnowledgeBase MakeKb(std::vector<KbEntity> entities);

// Document of 1..max_sentences sentences over a small vocabulary, with
// occasional punctuation tokens and one-word sentences.
EnrichedDocument RandomTextDoc(Rng& rng, int max_sentences);

// Fresh directory under the system temp path.
std::string TempDir(std::string_view name);

}  // namespace salience::testing

#endif  // SALIENCE_TESTS_SUPPORT_H_
