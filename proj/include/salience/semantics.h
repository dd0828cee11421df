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

#ifndef SALIENCE_SEMANTICS_H_
#define SALIENCE_SEMANTICS_H_

// Entity relatedness, per-document entity graphs and graph centralities.

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "salience/corpus.h"
#include "salience/graph.h"

namespace salience {

// |in(a) & in(b)| / |in(a) | in(b)|, 0 for an empty union. Throws
// ValidationError for entities missing from the KB.
double Jaccard(EntityId a, EntityId b, const KnowledgeBase& kb);
// Same on two sorted, duplicate-free id lists.
double JaccardOfSorted(std::span<const EntityId> a, std::span<const EntityId> b);

// Cosine similarity; 0 when either vector is all zeros. Throws
// ValidationError on a dimension mismatch.
double Cosine(std::span<const double> a, std::span<const double> b);

enum class Weighting { kJaccard, kE2vCbow, kE2vSg, kDwCbow, kDwSg };

std::string_view WeightingName(Weighting weighting);
Weighting ParseWeighting(std::string_view name);
// Embedding table behind an embedding-based weighting.
std::optional<EmbeddingKind> WeightingEmbedding(Weighting weighting);

// Complete graph over a document's distinct annotated entities (ascending
// id). Weights are symmetric, in [0, 1], with a zero diagonal.
struct EntityGraph {
  std::vector<EntityId> nodes;
  WeightMatrix weights;

  // Position of an entity in `nodes`, or -1.
  int index_of(EntityId entity) const;
};

// Entities missing from the KB or from the embedding table get zero-weight
// edges. Negative cosines are clamped to 0.
EntityGraph BuildGraph(const EnrichedDocument& doc, Weighting weighting,
                       const KnowledgeBase* kb, const EmbeddingSet* embeddings);

enum class Centrality {
  kDegree,
  kPageRank,
  kBetweenness,
  kKatz,
  kHitsAuthority,
  kHitsHub,
  kCloseness,
  kHarmonic,
};

inline constexpr Centrality kAllCentralities[] = {
    Centrality::kDegree,        Centrality::kPageRank,
    Centrality::kBetweenness,   Centrality::kKatz,
    Centrality::kHitsAuthority, Centrality::kHitsHub,
    Centrality::kCloseness,     Centrality::kHarmonic};

std::string_view CentralityName(Centrality algorithm);
Centrality ParseCentrality(std::string_view name);

// Katz attenuation for an n-node graph with weights in [0, 1].
double KatzAlpha(size_t n);

// One score per node of `weights`.
//  degree       row sums
//  pagerank     WeightedPageRank with default options
//  katz         sum_{k>=1} alpha^k W^k 1, stopped when a term's max-norm
//               falls below 1e-9
//  hits         alternating power iteration with L2 normalization
//  betweenness, closeness, harmonic
//               on distances d = 1 - w; zero-weight edges are absent.
//               Betweenness counts unordered pairs and is unnormalized.
//               Zero-length edges are only followed in the order Dijkstra
//               settles their endpoints, which keeps path counts finite.
std::vector<double> ComputeCentrality(const WeightMatrix& weights,
                                      Centrality algorithm);

struct CentralityScores {
  Centrality algorithm = Centrality::kDegree;
  std::map<EntityId, double> scores;
};

CentralityScores ComputeCentrality(const EntityGraph& graph,
                                   Centrality algorithm);

// Document and pair frequencies of entities over a training corpus.
class CooccurrenceModel {
 public:
  static CooccurrenceModel Fit(const Corpus& corpus);

  int64_t n_docs() const { return n_docs_; }
  int64_t doc_count(EntityId e) const;
  int64_t pair_count(EntityId a, EntityId b) const;
  const std::map<EntityId, int64_t>& doc_counts() const { return doc_count_; }
  const std::map<std::pair<EntityId, EntityId>, int64_t>& pair_counts() const {
    return pair_count_;
  }

  std::string Serialize() const;
  static CooccurrenceModel Parse(std::string_view text);

 private:
  int64_t n_docs_ = 0;
  std::map<EntityId, int64_t> doc_count_;
  std::map<std::pair<EntityId, EntityId>, int64_t> pair_count_;  // a < b
};

// Directed co-occurrence weights for a document's entities:
// w(i -> j) = pair_count(i, j) / doc_count(i), or 0 when doc_count(i) = 0.
WeightMatrix CooccurrenceWeights(const std::vector<EntityId>& entities,
                                 const CooccurrenceModel& model);

// PageRank of each entity on the co-occurrence-weighted document graph.
std::map<EntityId, double> GoogleCentrality(const EnrichedDocument& doc,
                                            const CooccurrenceModel& model);

}  // namespace salience

#endif  // SALIENCE_SEMANTICS_H_
