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

#include "salience/semantics.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "json.hpp"

namespace salience {

using json = nlohmann::json;

double JaccardOfSorted(std::span<const EntityId> a,
                       std::span<const EntityId> b) {
  size_t common = 0;
  size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] < b[j]) {
      ++i;
    } else if (b[j] < a[i]) {
      ++j;
    } else {
      ++common;
      ++i;
      ++j;
    }
  }
  const size_t uni = a.size() + b.size() - common;
  return uni == 0 ? 0.0
                  : static_cast<double>(common) / static_cast<double>(uni);
}

double Jaccard(EntityId a, EntityId b, const KnowledgeBase& kb) {
  return JaccardOfSorted(kb.at(a).in_links, kb.at(b).in_links);
}

double Cosine(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw ValidationError("cosine: dimension mismatch (" +
                          std::to_string(a.size()) + " vs " +
                          std::to_string(b.size()) + ")");
  }
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  if (na == 0.0 || nb == 0.0) return 0.0;
  return std::clamp(dot / (std::sqrt(na) * std::sqrt(nb)), -1.0, 1.0);
}

std::string_view WeightingName(Weighting weighting) {
  switch (weighting) {
    case Weighting::kJaccard: return "jaccard";
    case Weighting::kE2vCbow: return "e2v_cbow";
    case Weighting::kE2vSg: return "e2v_sg";
    case Weighting::kDwCbow: return "dw_cbow";
    case Weighting::kDwSg: return "dw_sg";
  }
  return "jaccard";
}

Weighting ParseWeighting(std::string_view name) {
  for (Weighting w : {Weighting::kJaccard, Weighting::kE2vCbow,
                      Weighting::kE2vSg, Weighting::kDwCbow, Weighting::kDwSg}) {
    if (WeightingName(w) == name) return w;
  }
  throw ValidationError("unknown graph weighting '" + std::string(name) + "'");
}

std::optional<EmbeddingKind> WeightingEmbedding(Weighting weighting) {
  switch (weighting) {
    case Weighting::kJaccard: return std::nullopt;
    case Weighting::kE2vCbow: return EmbeddingKind::kE2vCbow;
    case Weighting::kE2vSg: return EmbeddingKind::kE2vSg;
    case Weighting::kDwCbow: return EmbeddingKind::kDwCbow;
    case Weighting::kDwSg: return EmbeddingKind::kDwSg;
  }
  return std::nullopt;
}

int EntityGraph::index_of(EntityId entity) const {
  auto it = std::lower_bound(nodes.begin(), nodes.end(), entity);
  if (it == nodes.end() || *it != entity) return -1;
  return static_cast<int>(it - nodes.begin());
}

EntityGraph BuildGraph(const EnrichedDocument& doc, Weighting weighting,
                       const KnowledgeBase* kb,
                       const EmbeddingSet* embeddings) {
  EntityGraph graph;
  graph.nodes = doc.entities();
  const size_t n = graph.nodes.size();
  graph.weights = WeightMatrix(n);
  const auto kind = WeightingEmbedding(weighting);
  const EmbeddingTable* table =
      kind && embeddings != nullptr ? embeddings->find(*kind) : nullptr;

  std::vector<const KbEntity*> kb_entities(n, nullptr);
  std::vector<const std::vector<double>*> vectors(n, nullptr);
  for (size_t i = 0; i < n; ++i) {
    if (!kind && kb != nullptr) kb_entities[i] = kb->find(graph.nodes[i]);
    if (table != nullptr) vectors[i] = table->entity(graph.nodes[i]);
  }
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = i + 1; j < n; ++j) {
      double w = 0.0;
      if (!kind) {
        if (kb_entities[i] != nullptr && kb_entities[j] != nullptr) {
          w = JaccardOfSorted(kb_entities[i]->in_links,
                              kb_entities[j]->in_links);
        }
      } else if (vectors[i] != nullptr && vectors[j] != nullptr) {
        w = std::clamp(Cosine(*vectors[i], *vectors[j]), 0.0, 1.0);
      }
      graph.weights(i, j) = w;
      graph.weights(j, i) = w;
    }
  }
  return graph;
}

std::string_view CentralityName(Centrality algorithm) {
  switch (algorithm) {
    case Centrality::kDegree: return "degree";
    case Centrality::kPageRank: return "pagerank";
    case Centrality::kBetweenness: return "betweenness";
    case Centrality::kKatz: return "katz";
    case Centrality::kHitsAuthority: return "authority";
    case Centrality::kHitsHub: return "hub";
    case Centrality::kCloseness: return "closeness";
    case Centrality::kHarmonic: return "harmonic";
  }
  return "degree";
}

Centrality ParseCentrality(std::string_view name) {
  if (name == "hits_authority") return Centrality::kHitsAuthority;
  if (name == "hits_hub") return Centrality::kHitsHub;
  for (Centrality c : kAllCentralities) {
    if (CentralityName(c) == name) return c;
  }
  throw ValidationError("unknown centrality algorithm '" + std::string(name) +
                        "'");
}

double KatzAlpha(size_t n) {
  if (n <= 1) return 0.0;
  return std::min(0.05, 0.5 / static_cast<double>(n - 1));
}

namespace {

constexpr double kInfinity = std::numeric_limits<double>::infinity();

std::vector<double> Degree(const WeightMatrix& w) {
  std::vector<double> out(w.size());
  for (size_t i = 0; i < w.size(); ++i) out[i] = w.RowSum(i);
  return out;
}

std::vector<double> Katz(const WeightMatrix& w) {
  const size_t n = w.size();
  const double alpha = KatzAlpha(n);
  std::vector<double> total(n, 0.0);
  if (alpha == 0.0) return total;
  std::vector<double> term(n, 1.0), next(n);
  for (int k = 0; k < 10000; ++k) {
    double norm = 0.0;
    for (size_t i = 0; i < n; ++i) {
      double s = 0.0;
      for (size_t j = 0; j < n; ++j) s += w(i, j) * term[j];
      next[i] = alpha * s;
      norm = std::max(norm, std::fabs(next[i]));
    }
    for (size_t i = 0; i < n; ++i) total[i] += next[i];
    term.swap(next);
    if (norm < 1e-9) break;
  }
  return total;
}

void NormalizeL2(std::vector<double>& v) {
  double norm = 0.0;
  for (double x : v) norm += x * x;
  norm = std::sqrt(norm);
  if (norm == 0.0) {
    std::fill(v.begin(), v.end(), 1.0 / std::sqrt(static_cast<double>(v.size())));
    return;
  }
  for (double& x : v) x /= norm;
}

// Returns {authority, hub}.
std::pair<std::vector<double>, std::vector<double>> Hits(const WeightMatrix& w) {
  const size_t n = w.size();
  const double start = 1.0 / std::sqrt(static_cast<double>(n));
  std::vector<double> auth(n, start), hub(n, start);
  std::vector<double> next_auth(n), next_hub(n);
  for (int iter = 0; iter < 10000; ++iter) {
    for (size_t j = 0; j < n; ++j) {
      double s = 0.0;
      for (size_t i = 0; i < n; ++i) s += w(i, j) * hub[i];
      next_auth[j] = s;
    }
    NormalizeL2(next_auth);
    for (size_t i = 0; i < n; ++i) {
      double s = 0.0;
      for (size_t j = 0; j < n; ++j) s += w(i, j) * next_auth[j];
      next_hub[i] = s;
    }
    NormalizeL2(next_hub);
    double delta = 0.0;
    for (size_t i = 0; i < n; ++i) {
      delta = std::max(delta, std::fabs(next_auth[i] - auth[i]));
      delta = std::max(delta, std::fabs(next_hub[i] - hub[i]));
    }
    auth.swap(next_auth);
    hub.swap(next_hub);
    if (delta < 1e-9) break;
  }
  return {auth, hub};
}

bool NearlyEqual(double a, double b) {
  return std::fabs(a - b) <= 1e-12 * std::max(1.0, std::max(a, b));
}

struct ShortestPaths {
  std::vector<double> dist;
  std::vector<double> sigma;
  std::vector<std::vector<size_t>> preds;
  std::vector<size_t> order;  // settlement order
};

// Dense Dijkstra over distances 1 - w on edges with w > 0.
ShortestPaths Dijkstra(const WeightMatrix& w, size_t source) {
  const size_t n = w.size();
  ShortestPaths sp;
  sp.dist.assign(n, kInfinity);
  sp.sigma.assign(n, 0.0);
  sp.preds.assign(n, {});
  std::vector<bool> settled(n, false);
  sp.dist[source] = 0.0;
  sp.sigma[source] = 1.0;
  for (size_t round = 0; round < n; ++round) {
    size_t v = n;
    for (size_t u = 0; u < n; ++u) {
      if (!settled[u] && sp.dist[u] < kInfinity &&
          (v == n || sp.dist[u] < sp.dist[v])) {
        v = u;
      }
    }
    if (v == n) break;
    settled[v] = true;
    sp.order.push_back(v);
    for (size_t u = 0; u < n; ++u) {
      if (u == v || settled[u] || w(v, u) <= 0.0) continue;
      const double alt = sp.dist[v] + std::max(0.0, 1.0 - w(v, u));
      if (sp.dist[u] == kInfinity ||
          (alt < sp.dist[u] && !NearlyEqual(alt, sp.dist[u]))) {
        sp.dist[u] = alt;
        sp.sigma[u] = sp.sigma[v];
        sp.preds[u].assign(1, v);
      } else if (NearlyEqual(alt, sp.dist[u])) {
        sp.sigma[u] += sp.sigma[v];
        sp.preds[u].push_back(v);
      }
    }
  }
  return sp;
}

std::vector<double> Betweenness(const WeightMatrix& w) {
  const size_t n = w.size();
  std::vector<double> bc(n, 0.0);
  std::vector<double> delta(n);
  for (size_t s = 0; s < n; ++s) {
    ShortestPaths sp = Dijkstra(w, s);
    std::fill(delta.begin(), delta.end(), 0.0);
    for (auto it = sp.order.rbegin(); it != sp.order.rend(); ++it) {
      const size_t node = *it;
      for (size_t pred : sp.preds[node]) {
        delta[pred] += sp.sigma[pred] / sp.sigma[node] * (1.0 + delta[node]);
      }
      if (node != s) bc[node] += delta[node];
    }
  }
  for (double& b : bc) b /= 2.0;
  return bc;
}

std::vector<double> Closeness(const WeightMatrix& w) {
  const size_t n = w.size();
  std::vector<double> out(n, 0.0);
  for (size_t v = 0; v < n; ++v) {
    ShortestPaths sp = Dijkstra(w, v);
    double total = 0.0;
    for (size_t u : sp.order) total += sp.dist[u];
    const double reachable = static_cast<double>(sp.order.size());
    out[v] = total > 0.0 ? (reachable - 1.0) / total : 0.0;
  }
  return out;
}

std::vector<double> Harmonic(const WeightMatrix& w) {
  const size_t n = w.size();
  std::vector<double> out(n, 0.0);
  for (size_t v = 0; v < n; ++v) {
    ShortestPaths sp = Dijkstra(w, v);
    for (size_t u : sp.order) {
      if (u != v && sp.dist[u] > 0.0) out[v] += 1.0 / sp.dist[u];
    }
  }
  return out;
}

}  // namespace

std::vector<double> ComputeCentrality(const WeightMatrix& weights,
                                      Centrality algorithm) {
  if (weights.size() == 0) {
    throw ValidationError("centrality: graph has no nodes");
  }
  switch (algorithm) {
    case Centrality::kDegree: return Degree(weights);
    case Centrality::kPageRank: return WeightedPageRank(weights);
    case Centrality::kBetweenness: return Betweenness(weights);
    case Centrality::kKatz: return Katz(weights);
    case Centrality::kHitsAuthority: return Hits(weights).first;
    case Centrality::kHitsHub: return Hits(weights).second;
    case Centrality::kCloseness: return Closeness(weights);
    case Centrality::kHarmonic: return Harmonic(weights);
  }
  throw ValidationError("unknown centrality algorithm");
}

CentralityScores ComputeCentrality(const EntityGraph& graph,
                                   Centrality algorithm) {
  CentralityScores out;
  out.algorithm = algorithm;
  const auto values = ComputeCentrality(graph.weights, algorithm);
  for (size_t i = 0; i < graph.nodes.size(); ++i) {
    out.scores[graph.nodes[i]] = values[i];
  }
  return out;
}

CooccurrenceModel CooccurrenceModel::Fit(const Corpus& corpus) {
  CooccurrenceModel model;
  model.n_docs_ = static_cast<int64_t>(corpus.size());
  for (const EnrichedDocument& doc : corpus) {
    const auto entities = doc.entities();
    for (size_t i = 0; i < entities.size(); ++i) {
      ++model.doc_count_[entities[i]];
      for (size_t j = i + 1; j < entities.size(); ++j) {
        ++model.pair_count_[{entities[i], entities[j]}];
      }
    }
  }
  return model;
}

int64_t CooccurrenceModel::doc_count(EntityId e) const {
  auto it = doc_count_.find(e);
  return it == doc_count_.end() ? 0 : it->second;
}

int64_t CooccurrenceModel::pair_count(EntityId a, EntityId b) const {
  if (a == b) return doc_count(a);
  auto it = pair_count_.find(a < b ? std::make_pair(a, b) : std::make_pair(b, a));
  return it == pair_count_.end() ? 0 : it->second;
}

std::string CooccurrenceModel::Serialize() const {
  json docs = json::array();
  for (const auto& [id, count] : doc_count_) {
    docs.push_back(json::array({id, count}));
  }
  json pairs = json::array();
  for (const auto& [key, count] : pair_count_) {
    pairs.push_back(json::array({key.first, key.second, count}));
  }
  return json{{"n_docs", n_docs_}, {"doc_count", std::move(docs)},
              {"pair_count", std::move(pairs)}}
             .dump() +
         "\n";
}

CooccurrenceModel CooccurrenceModel::Parse(std::string_view text) {
  CooccurrenceModel model;
  try {
    json j = json::parse(text);
    model.n_docs_ = j.at("n_docs").get<int64_t>();
    for (const json& d : j.at("doc_count")) {
      model.doc_count_[d.at(0).get<EntityId>()] = d.at(1).get<int64_t>();
    }
    for (const json& p : j.at("pair_count")) {
      EntityId a = p.at(0).get<EntityId>();
      EntityId b = p.at(1).get<EntityId>();
      if (b < a) std::swap(a, b);
      const int64_t count = p.at(2).get<int64_t>();
      if (count > std::min(model.doc_count(a), model.doc_count(b))) {
        throw ValidationError("co-occurrence model: pair count exceeds "
                              "document count");
      }
      model.pair_count_[{a, b}] = count;
    }
  } catch (const json::exception& e) {
    throw ValidationError(std::string("co-occurrence model: ") + e.what());
  }
  return model;
}

WeightMatrix CooccurrenceWeights(const std::vector<EntityId>& entities,
                                 const CooccurrenceModel& model) {
  const size_t n = entities.size();
  WeightMatrix w(n);
  for (size_t i = 0; i < n; ++i) {
    const int64_t docs = model.doc_count(entities[i]);
    if (docs == 0) continue;
    for (size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      w(i, j) = static_cast<double>(model.pair_count(entities[i], entities[j])) /
                static_cast<double>(docs);
    }
  }
  return w;
}

std::map<EntityId, double> GoogleCentrality(const EnrichedDocument& doc,
                                            const CooccurrenceModel& model) {
  const auto entities = doc.entities();
  std::map<EntityId, double> out;
  if (entities.empty()) return out;
  const auto rank = WeightedPageRank(CooccurrenceWeights(entities, model));
  for (size_t i = 0; i < entities.size(); ++i) out[entities[i]] = rank[i];
  return out;
}

}  // namespace salience
