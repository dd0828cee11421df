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

#ifndef SALIENCE_EVALUATION_H_
#define SALIENCE_EVALUATION_H_

// Metrics, baselines and the experimental protocols built on them.

#include <functional>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "salience/corpus.h"
#include "salience/features.h"
#include "salience/model.h"
#include "salience/pipeline.h"

namespace salience {

struct Prf {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

struct Counts {
  int64_t tp = 0;
  int64_t fp = 0;
  int64_t fn = 0;
};

struct DocMetrics {
  std::string doc_id;
  Prf prf;
};

struct EvaluationReport {
  Prf micro;
  Prf macro;
  std::vector<DocMetrics> per_doc;
  Counts counts;
};

// p = tp/(tp+fp), r = tp/(tp+fn), each 0 on a zero denominator; f1 is their
// harmonic mean, 0 when p + r = 0.
Prf PrfFromCounts(const Counts& counts);
Counts CountMatches(const EntityKeySet& predicted, const EntityKeySet& gold);
Prf MicroMetrics(const EntityKeySet& predicted, const EntityKeySet& gold);

// Per-document metrics averaged over `docs`. A document with no predictions
// and no gold scores p = r = f1 = 1; one with no predictions but some gold
// scores p = r = 0; one with predictions but no gold scores p = r = 0.
Prf DocumentPrf(const Counts& counts);
Prf MacroMetrics(const EntityKeySet& predicted, const EntityKeySet& gold,
                 const std::vector<std::string>& docs,
                 std::vector<DocMetrics>* per_doc = nullptr);

// Micro, macro and per-document metrics with both sets restricted to `docs`.
EvaluationReport Evaluate(const EntityKeySet& predicted,
                          const EntityKeySet& gold,
                          const std::vector<std::string>& docs);
// Gold and document list taken from the corpus.
EvaluationReport Evaluate(const EntityKeySet& predicted, const Corpus& corpus);

std::vector<std::string> DocIds(const Corpus& corpus);

enum class Metric { kMicroF1, kMacroF1 };
std::string_view MetricName(Metric metric);
Metric ParseMetric(std::string_view name);
double MetricValue(const EvaluationReport& report, Metric metric);

// Baselines.

enum class Baseline { kPositional, kPositionalRho, kTextRank, kRelPageRank };
std::string_view BaselineName(Baseline baseline);
Baseline ParseBaseline(std::string_view name);

// Entities with a mention in the first sentence.
std::set<EntityId> PositionalBaseline(const EnrichedDocument& doc);
// Positional entities whose best mention rho exceeds the threshold.
std::set<EntityId> PositionalRhoBaseline(const EnrichedDocument& doc,
                                         double threshold);
// Entities whose best sentence TextRank score exceeds the threshold.
std::set<EntityId> TextRankBaseline(const EnrichedDocument& doc,
                                    double threshold);
// Entities whose PageRank on the Jaccard graph exceeds the threshold.
std::set<EntityId> RelPageRankBaseline(const EnrichedDocument& doc,
                                       const KnowledgeBase& kb,
                                       double threshold);

// Score per annotated entity such that the baseline predicts exactly the
// entities scoring above the threshold. The positional baseline ignores the
// threshold; its scores are 1 (predicted) or -1.
std::map<EntityId, double> BaselineScores(const EnrichedDocument& doc,
                                          Baseline baseline,
                                          const KnowledgeBase& kb);
EntityKeySet RunBaseline(const Corpus& corpus, Baseline baseline,
                         const KnowledgeBase& kb, double threshold);

// Exhaustive sweep over 0.00, 0.01, ..., 1.00; the smallest threshold wins
// ties.
double TuneThreshold(const std::function<double(double)>& metric_at);
double TuneBaselineThreshold(const Corpus& validation, Baseline baseline,
                             const KnowledgeBase& kb, Metric metric);

// Seeded document split: the sorted ids are shuffled and the first
// round(fraction * n) ids (at least one, and at most n - 1 when n >= 2) form
// the held-out part.
struct DocSplit {
  std::set<std::string> train;
  std::set<std::string> held_out;
};
DocSplit SplitDocs(const std::vector<std::string>& doc_ids,
                   double held_out_fraction, uint64_t seed);

// Trained scoring function over feature matrices.
using Classifier = std::function<std::vector<Prediction>(const FeatureMatrix&)>;
using ClassifierTrainer =
    std::function<Classifier(const FeatureMatrix& train, uint64_t seed)>;

// Wraps a trained model.
Classifier ModelClassifier(GbdtModel model, double threshold = 0.5);

// Grid search on an inner 80/20 document split of the training rows; every
// configuration early-stops on the inner validation part and the best one by
// `metric` on that part is returned.
struct GbdtSelection {
  GbdtModel model;
  GridSearchResult search;
};
GbdtSelection SelectGbdt(const FeatureMatrix& train, const GbdtGrid& grid,
                         Metric metric, uint64_t seed);
// Same with an explicit validation matrix.
GbdtSelection SelectGbdt(const FeatureMatrix& train, const FeatureMatrix& valid,
                         const GbdtGrid& grid, Metric metric, uint64_t seed);
ClassifierTrainer GbdtTrainer(GbdtGrid grid, Metric metric);

struct CrossValidationResult {
  std::vector<EvaluationReport> folds;
  Prf macro;  // fold average of the per-fold macro metrics
  Prf micro;  // fold average of the per-fold micro metrics
};

// `matrix` holds the rows of every document of `corpus`.
CrossValidationResult CrossValidate(const FeatureMatrix& matrix,
                                    const Corpus& corpus, int k, uint64_t seed,
                                    const ClassifierTrainer& trainer);

enum class TransferMode { kClf, kReg };
std::string_view TransferModeName(TransferMode mode);
TransferMode ParseTransferMode(std::string_view name);

// kClf evaluates `source_model` on all of the target. kReg splits the target
// 80/20, re-runs grid search and decision-threshold tuning on the 80% part and
// evaluates on the remaining 20%.
EvaluationReport CrossCorpus(const GbdtModel& source_model,
                             const FeatureMatrix& target_matrix,
                             const Corpus& target, TransferMode mode,
                             const GbdtGrid& grid, uint64_t seed);

// Test and validation documents are fixed (20% each); each fraction trains on
// a seeded subsample of the remaining documents.
std::vector<std::pair<double, EvaluationReport>> TrainingSizeCurve(
    const FeatureMatrix& matrix, const Corpus& corpus,
    const std::vector<double>& fractions, const GbdtHyperparams& hp,
    uint64_t seed);

// Features ordered by importance (descending, schema order on ties); the
// prefix of length k is retrained with `model`'s hyperparameters. Selected
// columns keep their schema order.
std::vector<std::pair<int, double>> IncrementalFeatureCurve(
    const GbdtModel& model, const FeatureMatrix& train,
    const FeatureMatrix& test, const Corpus& test_corpus, uint64_t seed,
    int max_prefix = 40);

// Micro-F1 over the entities whose first mention has normalized token
// position (first_token + 1) / T greater than x. Both predictions and gold
// are restricted. Entities without a content mention count as position 1.
std::vector<std::pair<double, double>> PositionBucketedF1(
    const EntityKeySet& predicted, const Corpus& corpus,
    const std::vector<double>& xs = {0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7,
                                     0.8, 0.9});

// Overwrites every column of `group` with `value` and re-evaluates `model`.
FeatureMatrix PerturbGroup(const FeatureMatrix& matrix, FeatureGroup group,
                           double value);
EvaluationReport EvaluatePerturbed(const FeatureMatrix& matrix,
                                   FeatureGroup group, double value,
                                   const GbdtModel& model,
                                   const Corpus& corpus);

// Report export.

struct Curve {
  std::string name;
  std::string x_label;
  std::string y_label;
  std::vector<std::pair<double, double>> points;
};

std::string ReportToJson(const EvaluationReport& report,
                         const std::vector<Curve>& curves = {});
std::string CurveToCsv(const Curve& curve);

}  // namespace salience

#endif  // SALIENCE_EVALUATION_H_
