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

#ifndef SALIENCE_FEATURES_H_
#define SALIENCE_FEATURES_H_

// Feature extraction for (document, entity) pairs.
//
// Every feature belongs to exactly one group. The groups drive the
// perturbation experiments in the evaluation module:
//
//   position     positional statistics, spreads, bucketed frequencies, 1st-loc
//   frequency    ef, idf, ef-idf, head-count, mentions
//   title        mention-title, entity-title, headline POS counts
//   annotation   commonness and rho statistics
//   relatedness  relatedness statistics and centralities, google-centrality
//   syntactic    TextRank statistics and dependency-restricted features
//   w2v          embedding components and embedding cosines
//   misc         is-upper, head-lex, wiki-id

#include <array>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "salience/corpus.h"
#include "salience/semantics.h"
#include "salience/summarizer.h"

namespace salience {

enum class FeatureGroup {
  kPosition,
  kFrequency,
  kTitle,
  kAnnotation,
  kRelatedness,
  kSyntactic,
  kW2v,
  kMisc,
};

inline constexpr FeatureGroup kAllFeatureGroups[] = {
    FeatureGroup::kPosition,   FeatureGroup::kFrequency,
    FeatureGroup::kTitle,      FeatureGroup::kAnnotation,
    FeatureGroup::kRelatedness, FeatureGroup::kSyntactic,
    FeatureGroup::kW2v,        FeatureGroup::kMisc};

std::string_view FeatureGroupName(FeatureGroup group);
FeatureGroup ParseFeatureGroup(std::string_view name);

struct FeatureSpec {
  std::string name;
  FeatureGroup group = FeatureGroup::kMisc;

  bool operator==(const FeatureSpec&) const = default;
};

class FeatureSchema {
 public:
  FeatureSchema() = default;
  // Throws ValidationError on duplicate names.
  explicit FeatureSchema(std::vector<FeatureSpec> features);
  // Group tags are recovered from the names (see GroupForFeatureName).
  static FeatureSchema FromNames(const std::vector<std::string>& names);

  size_t size() const { return features_.size(); }
  const std::vector<FeatureSpec>& features() const { return features_; }
  const FeatureSpec& operator[](size_t i) const { return features_[i]; }
  std::vector<std::string> names() const;
  int index_of(std::string_view name) const;
  std::vector<size_t> columns_in(FeatureGroup group) const;
  // Hex FNV-1a of the newline-joined names.
  std::string fingerprint() const;

  bool operator==(const FeatureSchema& other) const {
    return features_ == other.features_;
  }

 private:
  std::vector<FeatureSpec> features_;
  std::map<std::string, size_t, std::less<>> index_;
};

// Group implied by a feature name produced by this module.
FeatureGroup GroupForFeatureName(std::string_view name);

// min, max, mean, median, population std, harmonic mean.
struct Stats6 {
  double min = 0, max = 0, mean = 0, median = 0, std = 0, harmonic_mean = 0;

  std::array<double, 6> values() const {
    return {min, max, mean, median, std, harmonic_mean};
  }
};

inline constexpr std::array<std::string_view, 6> kStats6Names = {
    "min", "max", "mean", "median", "std", "hmean"};

// All zeros for an empty list. The harmonic mean is 0 when any value is
// non-positive (its limit as a value approaches 0).
Stats6 ComputeStats6(std::span<const double> values);

inline constexpr int kBuckets = 10;

struct Positions {
  std::vector<double> sentence;
  std::vector<double> token;
};

// Per mention, in document order: (sentence index + 1) / S and
// (first token index + 1) / T. Throws ValidationError when the entity has no
// annotation in the document.
Positions NormalizedPositions(const EnrichedDocument& doc, EntityId entity);
Positions PositionsOf(const EnrichedDocument& doc,
                      std::span<const Annotation* const> mentions);

// Count per bucket; bucket = min(B - 1, floor(p * B)).
std::vector<double> Bucketize(std::span<const double> positions,
                              int buckets = kBuckets);

// Hot index for a first mention in sentence i: min(9, floor(ln(10 (i + 1)))).
int FirstLocIndex(int sentence_index);
// One-hot vector of length 10.
std::vector<double> FirstLoc(const EnrichedDocument& doc, EntityId entity);

// FNV-1a of the UTF-8 rendering divided by 2^64; in [0, 1).
double HashCategorical(std::string_view value);
double HashCategorical(int64_t value);

// Coarse POS vocabulary of the headline feature.
inline constexpr std::array<std::string_view, 12> kCoarseTags = {
    "NN", "NNP", "VB", "JJ", "RB", "CD", "PR", "DT", "IN", "CC", "PUNCT",
    "OTHER"};
// Index into kCoarseTags for a Penn-style tag.
int CoarseTagIndex(std::string_view pos);

// Ordered named values emitted by one feature group.
class FeatureValues {
 public:
  void Add(std::string name, FeatureGroup group, double value);
  void AddStats6(const std::string& prefix, const std::string& suffix,
                 FeatureGroup group, const Stats6& stats);
  void AddSeries(const std::string& prefix, FeatureGroup group,
                 std::span<const double> values);
  void Append(const FeatureValues& other);

  const std::vector<FeatureSpec>& specs() const { return specs_; }
  const std::vector<double>& values() const { return values_; }
  size_t size() const { return values_.size(); }
  // Throws ValidationError for an unknown name.
  double Get(std::string_view name) const;

 private:
  std::vector<FeatureSpec> specs_;
  std::vector<double> values_;
};

// ef, idf = ln((N + 1) / (df + 1)) + 1, ef-idf, position statistics, spreads,
// bucketed frequencies, 1st-loc, mention-title, entity-title, is-upper.
FeatureValues StandardFeatures(const EnrichedDocument& doc, EntityId entity,
                               const IdfTable& idf);

// head-count, mentions, headline POS counts, head-lex, TextRank statistics and
// the dependency-restricted features for prep_in, amod, poss, nn, nsubj.
FeatureValues SyntacticFeatures(const EnrichedDocument& doc, EntityId entity,
                                const SentenceScores& textrank);

// Token index of a mention's head: the first token of the span whose
// dependency head lies outside the span, else the span's first token.
int MentionHeadToken(const EnrichedDocument& doc, const Annotation& mention);

// A graph weighting together with its precomputed centralities.
struct RelatednessFamily {
  Weighting weighting = Weighting::kJaccard;
  EntityGraph graph;
  std::map<Centrality, std::vector<double>> centralities;

  static RelatednessFamily Compute(const EnrichedDocument& doc,
                                   Weighting weighting, const KnowledgeBase* kb,
                                   const EmbeddingSet* embeddings);
};

// Feature-name prefix of a weighting, e.g. "dw-cbow".
std::string FamilyPrefix(Weighting weighting);
std::string FamilyPrefix(EmbeddingKind kind);

// comm/rho statistics, per-family relatedness statistics (overall and bucketed
// by the other entities' first-mention positions), centralities,
// google-centrality and wiki-id.
FeatureValues SemanticFeatures(
    const EnrichedDocument& doc, EntityId entity,
    std::span<const RelatednessFamily> families,
    const std::map<EntityId, double>& google_centrality);

// Embedding kinds in use and their dimensions.
using W2vLayout = std::vector<std::pair<EmbeddingKind, int>>;

// Per kind: raw vector, statistics of cosines to title-annotated entities,
// cosine to the mean title / headline vector. Entity2Vec kinds average word
// vectors; DeepWalk kinds average the vectors of the entities annotated in
// the field.
FeatureValues W2vFeatures(const EnrichedDocument& doc, EntityId entity,
                          const EmbeddingSet& embeddings,
                          const W2vLayout& layout);

struct FeatureConfig {
  std::vector<Weighting> relatedness = {Weighting::kJaccard, Weighting::kE2vSg,
                                        Weighting::kDwCbow};
  std::vector<EmbeddingKind> w2v = {EmbeddingKind::kE2vSg,
                                    EmbeddingKind::kDwCbow};
  bool w2v_enabled = true;
};

// A feature configuration resolved against the loaded embedding tables.
struct FeaturePlan {
  FeatureConfig config;
  W2vLayout w2v_layout;  // configured kinds that have a table
  FeatureSchema schema;
};

FeaturePlan PlanFeatures(const FeatureConfig& config,
                         const EmbeddingSet& embeddings);

struct FeatureContext {
  const IdfTable* idf = nullptr;
  const KnowledgeBase* kb = nullptr;
  const EmbeddingSet* embeddings = nullptr;
  const CooccurrenceModel* cooccurrence = nullptr;  // optional
};

struct FeatureVector {
  std::string doc_id;
  EntityId entity = 0;
  std::vector<double> values;
};

// Computes the per-document state (TextRank, graphs, centralities) once and
// assembles vectors for each annotated entity.
class DocumentFeaturizer {
 public:
  DocumentFeaturizer(const EnrichedDocument& doc, const FeatureContext& context,
                     const FeaturePlan& plan);

  // Throws ValidationError when the entity is not annotated or when the
  // emitted names disagree with the plan's schema.
  FeatureVector Assemble(EntityId entity) const;
  // One vector per annotated entity, ascending id.
  std::vector<FeatureVector> AssembleAll() const;

 private:
  const EnrichedDocument& doc_;
  FeatureContext context_;
  const FeaturePlan& plan_;
  IdfTable empty_idf_;
  EmbeddingSet empty_embeddings_;
  SentenceScores textrank_;
  std::vector<RelatednessFamily> families_;
  std::map<EntityId, double> google_;
};

FeatureVector Assemble(const EnrichedDocument& doc, EntityId entity,
                       const FeatureContext& context, const FeaturePlan& plan);

}  // namespace salience

#endif  // SALIENCE_FEATURES_H_
