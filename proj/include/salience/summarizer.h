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

#ifndef SALIENCE_SUMMARIZER_H_
#define SALIENCE_SUMMARIZER_H_

// TextRank sentence centrality.

#include <string>
#include <vector>

#include "salience/corpus.h"

namespace salience {

// One score per sentence; a probability distribution.
using SentenceScores = std::vector<double>;

// Lower-cased tokens of each sentence with punctuation tokens removed.
std::vector<std::vector<std::string>> SentenceTokens(
    const EnrichedDocument& doc);

// |shared token types| / (ln|a| + ln|b|), where |x| counts tokens. Zero when
// either sentence has at most one token.
double SentenceSimilarity(const std::vector<std::string>& a,
                          const std::vector<std::string>& b);

// PageRank (damping 0.85, tolerance 1e-9, at most 200 iterations) over the
// complete sentence graph weighted by SentenceSimilarity. Throws
// ValidationError when there are no sentences.
SentenceScores TextRank(const std::vector<std::vector<std::string>>& sentences);
SentenceScores TextRank(const EnrichedDocument& doc);

}  // namespace salience

#endif  // SALIENCE_SUMMARIZER_H_
