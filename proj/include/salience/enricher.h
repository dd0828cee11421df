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

#ifndef SALIENCE_ENRICHER_H_
#define SALIENCE_ENRICHER_H_

// Gazetteer-based stand-in for a full parse + entity-linking stage. Turns raw
// text into an EnrichedDocument with no dependency or coreference layers.

#include <string>
#include <string_view>
#include <vector>

#include "salience/corpus.h"

namespace salience {

inline constexpr int kMaxAnchorTokens = 6;

struct TokenizedText {
  std::vector<Token> tokens;
  std::vector<SentenceRange> sentences;
};

// Whitespace/punctuation tokenizer. A sentence ends at a '.', '!' or '?'
// token followed by whitespace or end of text. POS tags are heuristic:
// capitalized -> NNP, all digits -> CD, anything else -> NN.
TokenizedText Tokenize(std::string_view text);

struct MentionSpan {
  int first_token = 0;
  int last_token = 0;  // inclusive
  int64_t char_start = 0;
  int64_t char_end = 0;
  int sentence_index = 0;
  std::string anchor;  // normalized
};

// Greedy left-to-right longest match against KB anchors, at most
// kMaxAnchorTokens tokens, never crossing a sentence boundary.
std::vector<MentionSpan> DetectMentions(std::string_view text,
                                        const TokenizedText& tokenized,
                                        const KnowledgeBase& kb);

// Links each mention to its highest-prior candidate (smaller id on ties).
// rho is the mean Jaccard relatedness to the entities chosen for all other
// mentions, 0 for a lone mention.
std::vector<Annotation> Disambiguate(const std::vector<MentionSpan>& mentions,
                                     const KnowledgeBase& kb);

EnrichedDocument Enrich(std::string_view title, std::string_view content,
                        const KnowledgeBase& kb, std::string doc_id = "");

}  // namespace salience

#endif  // SALIENCE_ENRICHER_H_
