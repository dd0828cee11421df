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

#ifndef SALIENCE_CORPUS_H_
#define SALIENCE_CORPUS_H_

// Enriched-document data model plus the knowledge-base and embedding
// sidecars. All character offsets are UTF-8 byte offsets into the owning
// text.

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "salience/util.h"

namespace salience {

struct Token {
  std::string surface;
  std::string pos;
  int64_t char_start = 0;  // inclusive
  int64_t char_end = 0;    // exclusive
  int sentence_index = 0;
  int token_index = 0;
};

// Half-open range [begin, end) of global token indices.
struct SentenceRange {
  int begin = 0;
  int end = 0;
  int size() const { return end - begin; }
};

enum class DepRelation { kPrepIn, kAmod, kPoss, kNn, kNsubj, kOther };

// The five relations that carry dedicated features, in feature order.
inline constexpr DepRelation kFeatureRelations[] = {
    DepRelation::kPrepIn, DepRelation::kAmod, DepRelation::kPoss,
    DepRelation::kNn, DepRelation::kNsubj};

DepRelation ClassifyRelation(std::string_view label);
std::string_view RelationName(DepRelation relation);

struct DependencyEdge {
  int head = 0;
  int dependent = 0;
  std::string relation;
};

// Token span of one coreferent mention; last_token is inclusive.
struct CorefMention {
  int sentence_index = 0;
  int first_token = 0;
  int last_token = 0;
};

struct CorefChain {
  std::vector<CorefMention> mentions;
};

struct Annotation {
  int64_t char_start = 0;
  int64_t char_end = 0;
  int sentence_index = 0;
  int first_token = 0;
  EntityId entity = 0;
  double commonness = 0.0;
  double rho = 0.0;
};

struct EnrichedDocument {
  std::string doc_id;
  std::string title;
  std::optional<std::string> headline;
  std::string content;
  std::vector<Token> tokens;
  std::vector<SentenceRange> sentences;
  std::vector<DependencyEdge> dependency_edges;
  std::vector<CorefChain> coref_chains;
  std::vector<Annotation> annotations;
  // Offsets index into `title`; token fields are unused.
  std::vector<Annotation> title_annotations;
  // Sorted, unique.
  std::optional<std::vector<EntityId>> gold_salient;

  // Falls back to the title when no separate headline exists.
  const std::string& headline_text() const {
    return headline ? *headline : title;
  }
  // Inclusive index of the last token covered by a content annotation.
  int last_token(const Annotation& annotation) const;
  std::string_view mention_text(const Annotation& annotation) const;
  // Distinct annotated entities, ascending.
  std::vector<EntityId> entities() const;
  // Content annotations of one entity, in document order.
  std::vector<const Annotation*> mentions_of(EntityId entity) const;
  bool is_gold(EntityId entity) const;
};

using Corpus = std::vector<EnrichedDocument>;

// Anchor text in its matching form: ASCII lower case, whitespace runs
// collapsed to one space, trimmed.
std::string NormalizeAnchor(std::string_view text);

struct KbEntity {
  EntityId id = 0;
  std::string title;
  std::vector<EntityId> in_links;  // sorted, unique
  // Anchor text -> (candidate entity, raw count or prior), as stored.
  std::map<std::string, std::vector<std::pair<EntityId, double>>> anchors;
};

struct AnchorCandidate {
  EntityId entity = 0;
  double prior = 0.0;
};

class KnowledgeBase {
 public:
  KnowledgeBase() = default;

  // Validates the catalog and derives normalized anchor priors. Throws
  // ValidationError on duplicate ids or dangling references.
  static KnowledgeBase Build(std::vector<KbEntity> entities);

  bool contains(EntityId id) const { return index_.count(id) > 0; }
  const KbEntity* find(EntityId id) const;
  const KbEntity& at(EntityId id) const;
  // Candidates for a normalized anchor, sorted by entity id; nullptr when
  // the anchor is unknown.
  const std::vector<AnchorCandidate>* candidates(
      std::string_view normalized_anchor) const;
  const std::vector<KbEntity>& entities() const { return entities_; }
  size_t size() const { return entities_.size(); }
  size_t anchor_count() const { return anchors_.size(); }

 private:
  std::vector<KbEntity> entities_;
  std::unordered_map<EntityId, size_t> index_;
  std::unordered_map<std::string, std::vector<AnchorCandidate>> anchors_;
};

enum class EmbeddingKind { kE2vCbow, kE2vSg, kDwCbow, kDwSg };

inline constexpr EmbeddingKind kAllEmbeddingKinds[] = {
    EmbeddingKind::kE2vCbow, EmbeddingKind::kE2vSg, EmbeddingKind::kDwCbow,
    EmbeddingKind::kDwSg};

std::string_view EmbeddingKindName(EmbeddingKind kind);
EmbeddingKind ParseEmbeddingKind(std::string_view name);
// Entity2Vec tables live in a joint word/entity space.
inline bool HasWordVectors(EmbeddingKind kind) {
  return kind == EmbeddingKind::kE2vCbow || kind == EmbeddingKind::kE2vSg;
}

struct EmbeddingTable {
  EmbeddingKind kind = EmbeddingKind::kE2vSg;
  int dimension = 0;
  std::map<EntityId, std::vector<double>> entity_vectors;
  std::map<std::string, std::vector<double>> word_vectors;

  const std::vector<double>* entity(EntityId id) const;
  const std::vector<double>* word(const std::string& word) const;
};

class EmbeddingSet {
 public:
  void Add(EmbeddingTable table);
  const EmbeddingTable* find(EmbeddingKind kind) const;
  bool empty() const { return tables_.empty(); }
  const std::map<EmbeddingKind, EmbeddingTable>& tables() const {
    return tables_;
  }

 private:
  std::map<EmbeddingKind, EmbeddingTable> tables_;
};

struct IdfTable {
  int64_t n_docs = 0;
  std::map<EntityId, int64_t> df;

  int64_t df_of(EntityId id) const {
    auto it = df.find(id);
    return it == df.end() ? 0 : it->second;
  }
};

struct FoldAssignment {
  int k = 0;
  std::map<std::string, int> assignment;

  // Doc ids per fold, each list sorted.
  std::vector<std::vector<std::string>> folds() const;
};

// Corpus files: one JSON document per line. `path` may name a directory, in
// which case every *.jsonl file inside is read. Documents come back sorted by
// doc_id.
Corpus LoadCorpus(const std::string& path);
Corpus ParseCorpus(std::string_view text);
std::string SerializeCorpus(const Corpus& corpus);
void SaveCorpus(const Corpus& corpus, const std::string& path);
std::string SerializeDocument(const EnrichedDocument& doc);
EnrichedDocument ParseDocument(std::string_view json_line);

// Checks every document invariant; with a KB, also that annotated entities
// exist in the catalog. Throws ValidationError naming the document.
void ValidateDocument(const EnrichedDocument& doc,
                      const KnowledgeBase* kb = nullptr);

KnowledgeBase LoadKnowledgeBase(const std::string& path);
KnowledgeBase ParseKnowledgeBase(std::string_view text);
std::string SerializeKnowledgeBase(const KnowledgeBase& kb);
void SaveKnowledgeBase(const KnowledgeBase& kb, const std::string& path);

EmbeddingTable LoadEmbeddings(const std::string& path, EmbeddingKind kind);
EmbeddingTable ParseEmbeddings(std::string_view text, EmbeddingKind kind);
// Kind named by the first record of an embedding file.
EmbeddingKind PeekEmbeddingKind(const std::string& path);
std::string SerializeEmbeddings(const EmbeddingTable& table);
void SaveEmbeddings(const EmbeddingTable& table, const std::string& path);

IdfTable ComputeIdf(const Corpus& corpus);
std::string SerializeIdf(const IdfTable& idf);
IdfTable ParseIdf(std::string_view text);

// Seeded shuffle of the doc ids (sorted first), dealt round-robin.
FoldAssignment MakeFolds(const Corpus& corpus, int k, uint64_t seed);

}  // namespace salience

#endif  // SALIENCE_CORPUS_H_
