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

#ifndef SALIENCE_SYNTHETIC_H_
#define SALIENCE_SYNTHETIC_H_

// Seeded synthetic corpora with a known salience rule: an entity is salient
// when it is annotated in the title, mentioned in the first sentence, or among
// the two entities with the highest PageRank on the document's Jaccard graph
// (ties to the smaller id).

#include <cstdint>
#include <string>
#include <vector>

#include "salience/corpus.h"

namespace salience {

struct SyntheticOptions {
  int docs = 500;
  uint64_t seed = 1;
  int topics = 12;
  int hubs_per_topic = 3;
  int regulars_per_topic = 16;
  int pages_per_topic = 30;
  int dimension = 16;
};

struct SyntheticData {
  KnowledgeBase kb;
  std::vector<EmbeddingTable> embeddings;  // e2v_sg (with words), dw_cbow
  Corpus corpus;                           // sorted by doc_id, gold attached
};

SyntheticData GenerateSynthetic(const SyntheticOptions& options);

// Gold set of the planted rule, ascending.
std::vector<EntityId> PlantedGold(const EnrichedDocument& doc,
                                  const KnowledgeBase& kb);

// Writes corpus.jsonl, kb.jsonl, e2v_sg.jsonl and dw_cbow.jsonl into `dir`,
// creating it when needed.
void WriteSynthetic(const SyntheticData& data, const std::string& dir);

}  // namespace salience

#endif  // SALIENCE_SYNTHETIC_H_
