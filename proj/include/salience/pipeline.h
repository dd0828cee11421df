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

#ifndef SALIENCE_PIPELINE_H_
#define SALIENCE_PIPELINE_H_

// Corpus-level plumbing: feature matrices, batch prediction and their file
// formats.

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "salience/corpus.h"
#include "salience/features.h"
#include "salience/model.h"
#include "salience/semantics.h"

namespace salience {

struct RowKey {
  std::string doc_id;
  EntityId entity = 0;
  std::optional<int> label;  // 1 salient, 0 not, unset when unknown
};

struct FeatureMatrix {
  FeatureSchema schema;
  std::vector<RowKey> keys;
  Matrix x;

  // Throws ValidationError when any row is unlabeled.
  std::vector<int> labels() const;
  // Rows whose document is in `doc_ids`, in the original order.
  FeatureMatrix SelectDocs(const std::set<std::string>& doc_ids) const;
  // Rows at the given indices.
  FeatureMatrix SelectRows(std::span<const size_t> rows) const;
  // Columns by name, in the given order.
  FeatureMatrix SelectFeatures(const std::vector<std::string>& names) const;
};

// Shared inputs of featurization. The KB is required; everything else may be
// empty.
struct PipelineResources {
  KnowledgeBase kb;
  EmbeddingSet embeddings;
  IdfTable idf;
  std::optional<CooccurrenceModel> cooccurrence;
  FeatureConfig config;

  FeatureContext context() const;
  FeaturePlan plan() const { return PlanFeatures(config, embeddings); }
};

// One row per (document, annotated entity), sorted by doc_id then entity.
// Labels come from gold_salient when the document has it.
FeatureMatrix Featurize(const Corpus& corpus, const PipelineResources& res);

// CSV: header "doc_id,entity_id,label,<feature names>", label empty when
// unknown.
std::string SerializeMatrixCsv(const FeatureMatrix& matrix);
FeatureMatrix ParseMatrixCsv(std::string_view text);
void SaveMatrixCsv(const FeatureMatrix& matrix, const std::string& path);
FeatureMatrix LoadMatrixCsv(const std::string& path);

struct Prediction {
  std::string doc_id;
  EntityId entity = 0;
  double score = 0.0;
  int label = 0;  // score >= 0.5
};

inline constexpr double kDecisionThreshold = 0.5;

// Throws ValidationError when the matrix columns differ from the model's.
std::vector<Prediction> Predict(const GbdtModel& model,
                                const FeatureMatrix& matrix);

// JSON: {"predictions": [{doc_id, entity_id, score, label}, ...]}.
std::string SerializePredictions(const std::vector<Prediction>& predictions);
std::vector<Prediction> ParsePredictions(std::string_view text);
void SavePredictions(const std::vector<Prediction>& predictions,
                     const std::string& path);
std::vector<Prediction> LoadPredictions(const std::string& path);

using EntityKey = std::pair<std::string, EntityId>;
using EntityKeySet = std::set<EntityKey>;

// Keys of the positive predictions.
EntityKeySet PositiveSet(const std::vector<Prediction>& predictions);
// Gold salient keys of every document that has gold labels.
EntityKeySet GoldSet(const Corpus& corpus);

}  // namespace salience

#endif  // SALIENCE_PIPELINE_H_
