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

#ifndef SALIENCE_MODEL_H_
#define SALIENCE_MODEL_H_

// Gradient-boosted regression trees with a logistic link, and an
// L2-regularized logistic regression used by the frequency/position baseline.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace salience {

// Row-major dense matrix.
struct Matrix {
  size_t rows = 0;
  size_t cols = 0;
  std::vector<double> values;

  Matrix() = default;
  Matrix(size_t r, size_t c) : rows(r), cols(c), values(r * c, 0.0) {}

  double& at(size_t r, size_t c) { return values[r * cols + c]; }
  double at(size_t r, size_t c) const { return values[r * cols + c]; }
  std::span<const double> row(size_t r) const {
    return {values.data() + r * cols, cols};
  }
  std::span<double> row(size_t r) { return {values.data() + r * cols, cols}; }
  // Keeps only the given columns, in the given order.
  Matrix SelectColumns(std::span<const size_t> columns) const;
  Matrix SelectRows(std::span<const size_t> rows) const;
};

struct GbdtHyperparams {
  int max_depth = 6;
  double min_child_weight = 1.0;  // minimum hessian sum per child
  double gamma = 0.0;             // minimum split gain
  double reg_alpha = 0.0;         // L1 on leaf weights
  double scale_pos_weight = 1.0;
  double learning_rate = 0.1;
  int n_rounds = 200;
  double reg_lambda = 1.0;        // L2 on leaf weights
  int early_stopping_rounds = 50; // patience on validation loss

  // Throws ValidationError when a field is out of range.
  void Validate() const;
  bool operator==(const GbdtHyperparams&) const = default;
};

struct TreeNode {
  int feature = -1;  // -1 for leaves
  double threshold = 0.0;  // rows with x < threshold go left
  int left = -1;
  int right = -1;
  double value = 0.0;  // leaf output, learning rate applied
  double gain = 0.0;   // loss reduction of the split (before gamma)
  double cover = 0.0;  // hessian sum

  bool is_leaf() const { return feature < 0; }
};

struct RegressionTree {
  std::vector<TreeNode> nodes;  // nodes[0] is the root

  double Predict(std::span<const double> x) const;
  int Depth() const;
};

struct GbdtModel {
  GbdtHyperparams hyperparams;
  double base_score = 0.0;  // margin
  std::vector<std::string> feature_names;
  std::vector<RegressionTree> trees;

  // Hex FNV-1a of the newline-joined feature names.
  std::string fingerprint() const;
  // Throws ValidationError on a length mismatch.
  double PredictMargin(std::span<const double> x) const;
  // Sigmoid of the margin, clamped to stay strictly inside (0, 1).
  double PredictProba(std::span<const double> x) const;
};

struct GbdtTrainOptions {
  std::vector<std::string> feature_names;  // defaults to f0, f1, ...
  // Optional early-stopping set.
  const Matrix* valid_x = nullptr;
  std::span<const int> valid_y;
  // Receives the weighted training log-loss before the first round and after
  // every round.
  std::vector<double>* train_loss = nullptr;
};

// Second-order boosting on the logistic loss with exact greedy split search.
// Rows are canonicalized before training, so the model does not depend on
// row order. `seed` is recorded for reproducibility; training itself has no
// random component. Throws ValidationError for empty or single-class data and
// NaN features.
GbdtModel TrainGbdt(const Matrix& x, std::span<const int> y,
                    const GbdtHyperparams& hp, uint64_t seed,
                    const GbdtTrainOptions& options = {});

// Total split gain per feature normalized to sum to 1 (all zero when the
// model has no splits).
std::map<std::string, double> FeatureImportance(const GbdtModel& model);

// Weighted mean logistic loss of margins against labels.
double LogLoss(std::span<const double> margins, std::span<const int> y,
               double scale_pos_weight = 1.0);

std::string SerializeModel(const GbdtModel& model);
GbdtModel ParseModel(std::string_view text);
void SaveModel(const GbdtModel& model, const std::string& path);
GbdtModel LoadModel(const std::string& path);

inline constexpr int kModelFormatVersion = 1;

// Candidate values per hyperparameter; other fields come from `base`.
struct GbdtGrid {
  std::vector<int> max_depth;
  std::vector<double> min_child_weight;
  std::vector<double> gamma;
  std::vector<double> reg_alpha;
  std::vector<double> scale_pos_weight;
  GbdtHyperparams base;

  size_t size() const;
  // Nested in field order, max_depth outermost.
  std::vector<GbdtHyperparams> Enumerate() const;

  // max_depth {2,4,6,8}, min_child_weight {6,8,10}, gamma {0.1,0.3,0.5},
  // reg_alpha {0.001,0.01,0.05}, scale_pos_weight {1..10}.
  static GbdtGrid Full();
  // A 2x1x1x1x3 subset of Full for quick tuning.
  static GbdtGrid Small();
};

// Presets for long-form news (nyt) and short news items (wikinews).
GbdtHyperparams NytHyperparams();
GbdtHyperparams WikinewsHyperparams();

struct GridSearchResult {
  GbdtHyperparams best;
  double best_score = 0.0;
  std::vector<double> scores;  // one per enumerated configuration
};

// Exhaustive search maximizing `score`; ties keep the earliest configuration.
GridSearchResult GridSearch(
    const GbdtGrid& grid,
    const std::function<double(const GbdtHyperparams&)>& score);

struct LogisticModel {
  std::vector<double> weights;
  double bias = 0.0;

  double PredictProba(std::span<const double> x) const;
};

struct LogisticObjective {
  double loss = 0.0;
  std::vector<double> grad_weights;
  double grad_bias = 0.0;
};

// Mean log-loss plus (l2 / 2) * |w|^2, and its gradient.
LogisticObjective LogisticLossAndGradient(const Matrix& x,
                                          std::span<const int> y, double l2,
                                          std::span<const double> weights,
                                          double bias);

// Full-batch gradient descent on standardized features; the returned weights
// act on the raw features.
LogisticModel TrainLogistic(const Matrix& x, std::span<const int> y, double l2,
                            int epochs, double learning_rate, uint64_t seed);

double Sigmoid(double margin);

}  // namespace salience

#endif  // SALIENCE_MODEL_H_
