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

#include "salience/summarizer.h"

#include <algorithm>
#include <cmath>

#include "salience/graph.h"

namespace salience {

std::vector<std::vector<std::string>> SentenceTokens(
    const EnrichedDocument& doc) {
  std::vector<std::vector<std::string>> out;
  out.reserve(doc.sentences.size());
  for (const SentenceRange& range : doc.sentences) {
    std::vector<std::string> words;
    for (int t = range.begin; t < range.end; ++t) {
      const std::string& surface = doc.tokens[t].surface;
      if (!IsPunctuationToken(surface)) words.push_back(AsciiLower(surface));
    }
    out.push_back(std::move(words));
  }
  return out;
}

namespace {

std::vector<std::string> Types(const std::vector<std::string>& tokens) {
  std::vector<std::string> types = tokens;
  std::sort(types.begin(), types.end());
  types.erase(std::unique(types.begin(), types.end()), types.end());
  return types;
}

double Similarity(const std::vector<std::string>& types_a, size_t len_a,
                  const std::vector<std::string>& types_b, size_t len_b) {
  if (len_a <= 1 || len_b <= 1) return 0.0;
  size_t common = 0;
  auto ia = types_a.begin();
  auto ib = types_b.begin();
  while (ia != types_a.end() && ib != types_b.end()) {
    if (*ia < *ib) {
      ++ia;
    } else if (*ib < *ia) {
      ++ib;
    } else {
      ++common;
      ++ia;
      ++ib;
    }
  }
  return static_cast<double>(common) /
         (std::log(static_cast<double>(len_a)) +
          std::log(static_cast<double>(len_b)));
}

}  // namespace

double SentenceSimilarity(const std::vector<std::string>& a,
                          const std::vector<std::string>& b) {
  return Similarity(Types(a), a.size(), Types(b), b.size());
}

SentenceScores TextRank(
    const std::vector<std::vector<std::string>>& sentences) {
  const size_t n = sentences.size();
  if (n == 0) throw ValidationError("TextRank: document has no sentences");
  std::vector<std::vector<std::string>> types;
  types.reserve(n);
  for (const auto& s : sentences) types.push_back(Types(s));
  WeightMatrix weights(n);
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = i + 1; j < n; ++j) {
      const double w = Similarity(types[i], sentences[i].size(), types[j],
                                  sentences[j].size());
      weights(i, j) = w;
      weights(j, i) = w;
    }
  }
  return WeightedPageRank(weights);
}

SentenceScores TextRank(const EnrichedDocument& doc) {
  return TextRank(SentenceTokens(doc));
}

}  // namespace salience
