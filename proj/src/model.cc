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

#include "salience/model.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>

#include "json.hpp"
#include "salience/util.h"

namespace salience {

using json = nlohmann::json;

Matrix Matrix::SelectColumns(std::span<const size_t> columns) const {
  Matrix out(rows, columns.size());
  for (size_t r = 0; r < rows; ++r) {
    for (size_t c = 0; c < columns.size(); ++c) {
      out.at(r, c) = at(r, columns[c]);
    }
  }
  return out;
}

Matrix Matrix::SelectRows(std::span<const size_t> selected) const {
  Matrix out(selected.size(), cols);
  for (size_t r = 0; r < selected.size(); ++r) {
    std::copy_n(values.begin() + selected[r] * cols, cols,
                out.values.begin() + r * cols);
  }
  return out;
}

double Sigmoid(double margin) {
  if (margin >= 0) return 1.0 / (1.0 + std::exp(-margin));
  const double e = std::exp(margin);
  return e / (1.0 + e);
}

namespace {

// log(1 + e^m) without overflow.
double Softplus(double m) {
  return std::max(m, 0.0) + std::log1p(std::exp(-std::fabs(m)));
}

std::string HexFingerprint(const std::vector<std::string>& names) {
  std::string joined;
  for (const auto& n : names) {
    joined += n;
    joined += '\n';
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(Fnv1a64(joined)));
  return buf;
}

void CheckTrainingData(const Matrix& x, std::span<const int> y) {
  if (x.rows == 0 || x.cols == 0) {
    throw ValidationError("training data is empty");
  }
  if (y.size() != x.rows) {
    throw ValidationError("label count " + std::to_string(y.size()) +
                          " does not match row count " +
                          std::to_string(x.rows));
  }
  bool pos = false, neg = false;
  for (int label : y) {
    if (label == 1) {
      pos = true;
    } else if (label == 0) {
      neg = true;
    } else {
      throw ValidationError("labels must be 0 or 1");
    }
  }
  if (!pos || !neg) {
    throw ValidationError("training labels contain a single class");
  }
  for (double v : x.values) {
    if (std::isnan(v)) throw ValidationError("training data contains NaN");
  }
}

}  // namespace

void GbdtHyperparams::Validate() const {
  if (max_depth < 1) throw ValidationError("max_depth must be >= 1");
  if (min_child_weight < 0 || gamma < 0 || reg_alpha < 0 || reg_lambda < 0) {
    throw ValidationError("regularizers must be non-negative");
  }
  if (!(learning_rate > 0 && learning_rate <= 1)) {
    throw ValidationError("learning_rate must lie in (0, 1]");
  }
  if (!(scale_pos_weight > 0)) {
    throw ValidationError("scale_pos_weight must be positive");
  }
  if (n_rounds < 0) throw ValidationError("n_rounds must be non-negative");
}

double RegressionTree::Predict(std::span<const double> x) const {
  int node = 0;
  while (!nodes[node].is_leaf()) {
    node = x[nodes[node].feature] < nodes[node].threshold ? nodes[node].left
                                                           : nodes[node].right;
  }
  return nodes[node].value;
}

int RegressionTree::Depth() const {
  if (nodes.empty()) return 0;
  std::vector<int> depth(nodes.size(), 0);
  int max_depth = 0;
  for (size_t i = 0; i < nodes.size(); ++i) {
    if (nodes[i].is_leaf()) continue;
    depth[nodes[i].left] = depth[i] + 1;
    depth[nodes[i].right] = depth[i] + 1;
    max_depth = std::max(max_depth, depth[i] + 1);
  }
  return max_depth;
}

std::string GbdtModel::fingerprint() const {
  return HexFingerprint(feature_names);
}

double GbdtModel::PredictMargin(std::span<const double> x) const {
  if (x.size() != feature_names.size()) {
    throw ValidationError("feature vector has " + std::to_string(x.size()) +
                          " values, model expects " +
                          std::to_string(feature_names.size()));
  }
  double margin = base_score;
  for (const RegressionTree& tree : trees) margin += tree.Predict(x);
  return margin;
}

double GbdtModel::PredictProba(std::span<const double> x) const {
  return std::clamp(Sigmoid(PredictMargin(x)),
                    std::numeric_limits<double>::min(),
                    std::nextafter(1.0, 0.0));
}

double LogLoss(std::span<const double> margins, std::span<const int> y,
               double scale_pos_weight) {
  double total = 0.0, weight = 0.0;
  for (size_t i = 0; i < margins.size(); ++i) {
    const double w = y[i] == 1 ? scale_pos_weight : 1.0;
    total += w * (Softplus(margins[i]) - y[i] * margins[i]);
    weight += w;
  }
  return weight > 0 ? total / weight : 0.0;
}

namespace {

double ThresholdL1(double g, double alpha) {
  if (g > alpha) return g - alpha;
  if (g < -alpha) return g + alpha;
  return 0.0;
}

struct SplitCandidate {
  double gain = 0.0;      // after gamma; a split needs gain > 0
  double raw_gain = 0.0;  // before gamma
  int feature = -1;
  double threshold = 0.0;
};

// One feature's values in ascending order, with the owning rows.
struct SortedColumn {
  size_t feature = 0;
  std::vector<double> values;
  std::vector<uint32_t> rows;
};

class TreeBuilder {
 public:
  TreeBuilder(const Matrix& x, const std::vector<SortedColumn>& columns,
              const GbdtHyperparams& hp)
      : x_(x), columns_(columns), hp_(hp) {}

  RegressionTree Build(const std::vector<double>& g,
                       const std::vector<double>& h) {
    const size_t n = x_.rows;
    RegressionTree tree;
    std::vector<int> node_of(n, 0);
    std::vector<double> node_g(1, 0.0), node_h(1, 0.0);
    for (size_t i = 0; i < n; ++i) {
      node_g[0] += g[i];
      node_h[0] += h[i];
    }
    tree.nodes.push_back({});
    std::vector<int> frontier = {0};

    for (int depth = 0; depth < hp_.max_depth && !frontier.empty(); ++depth) {
      std::vector<int> slot_of(tree.nodes.size(), -1);
      for (size_t s = 0; s < frontier.size(); ++s) slot_of[frontier[s]] = s;
      std::vector<SplitCandidate> best(frontier.size());

      std::vector<double> gl(frontier.size()), hl(frontier.size()),
          prev(frontier.size());
      std::vector<char> seen(frontier.size());
      for (const SortedColumn& column : columns_) {
        std::fill(gl.begin(), gl.end(), 0.0);
        std::fill(hl.begin(), hl.end(), 0.0);
        std::fill(seen.begin(), seen.end(), 0);
        const int f = static_cast<int>(column.feature);
        for (size_t k = 0; k < column.rows.size(); ++k) {
          const uint32_t i = column.rows[k];
          const int s = slot_of[node_of[i]];
          if (s < 0) continue;
          const double v = column.values[k];
          if (seen[s] && v > prev[s]) {
            Consider(best[s], f, prev[s], v, gl[s], hl[s],
                     node_g[node_of[i]], node_h[node_of[i]]);
          }
          gl[s] += g[i];
          hl[s] += h[i];
          prev[s] = v;
          seen[s] = 1;
        }
      }

      std::vector<int> next_frontier;
      std::vector<int> left_of(tree.nodes.size(), -1);
      for (size_t s = 0; s < frontier.size(); ++s) {
        const int node = frontier[s];
        if (best[s].feature < 0) continue;
        const int left = static_cast<int>(tree.nodes.size());
        tree.nodes.push_back({});
        tree.nodes.push_back({});
        TreeNode& parent = tree.nodes[node];
        parent.feature = best[s].feature;
        parent.threshold = best[s].threshold;
        parent.left = left;
        parent.right = left + 1;
        parent.gain = best[s].raw_gain;
        left_of[node] = left;
        next_frontier.push_back(left);
        next_frontier.push_back(left + 1);
      }
      node_g.resize(tree.nodes.size(), 0.0);
      node_h.resize(tree.nodes.size(), 0.0);
      for (size_t i = 0; i < n; ++i) {
        const int node = node_of[i];
        if (left_of[node] < 0) continue;
        const TreeNode& parent = tree.nodes[node];
        const int child = x_.at(i, parent.feature) < parent.threshold
                              ? parent.left
                              : parent.right;
        node_of[i] = child;
        node_g[child] += g[i];
        node_h[child] += h[i];
      }
      frontier = std::move(next_frontier);
    }

    for (size_t node = 0; node < tree.nodes.size(); ++node) {
      TreeNode& t = tree.nodes[node];
      t.cover = node_h[node];
      if (t.is_leaf()) {
        t.value = -ThresholdL1(node_g[node], hp_.reg_alpha) /
                  (node_h[node] + hp_.reg_lambda) * hp_.learning_rate;
      }
    }
    return tree;
  }

 private:
  void Consider(SplitCandidate& best, int feature, double below, double above,
                double gl, double hl, double g, double h) const {
    const double gr = g - gl;
    const double hr = h - hl;
    if (hl < hp_.min_child_weight || hr < hp_.min_child_weight) return;
    const double lambda = hp_.reg_lambda;
    const double raw = 0.5 * (gl * gl / (hl + lambda) + gr * gr / (hr + lambda) -
                              g * g / (h + lambda));
    const double gain = raw - hp_.gamma;
    if (!(gain > best.gain)) return;
    double threshold = below + (above - below) / 2.0;
    if (!(threshold > below)) threshold = above;
    best = {gain, raw, feature, threshold};
  }

  const Matrix& x_;
  const std::vector<SortedColumn>& columns_;
  const GbdtHyperparams& hp_;
};

// Row permutation ordering rows lexicographically by (features, label).
std::vector<size_t> CanonicalOrder(const Matrix& x, std::span<const int> y) {
  std::vector<size_t> order(x.rows);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    const auto ra = x.row(a);
    const auto rb = x.row(b);
    for (size_t c = 0; c < x.cols; ++c) {
      if (ra[c] < rb[c]) return true;
      if (rb[c] < ra[c]) return false;
    }
    return y[a] < y[b];
  });
  return order;
}

}  // namespace

GbdtModel TrainGbdt(const Matrix& x_in, std::span<const int> y_in,
                    const GbdtHyperparams& hp, uint64_t seed,
                    const GbdtTrainOptions& options) {
  (void)seed;
  hp.Validate();
  CheckTrainingData(x_in, y_in);

  GbdtModel model;
  model.hyperparams = hp;
  if (!options.feature_names.empty()) {
    if (options.feature_names.size() != x_in.cols) {
      throw ValidationError("feature name count does not match column count");
    }
    model.feature_names = options.feature_names;
  } else {
    for (size_t c = 0; c < x_in.cols; ++c) {
      model.feature_names.push_back("f" + std::to_string(c));
    }
  }

  const std::vector<size_t> order = CanonicalOrder(x_in, y_in);
  const Matrix x = x_in.SelectRows(order);
  std::vector<int> y(order.size());
  for (size_t i = 0; i < order.size(); ++i) y[i] = y_in[order[i]];
  const size_t n = x.rows;

  // Constant columns admit no split and are left out of the scan.
  std::vector<SortedColumn> columns;
  std::vector<uint32_t> idx(n);
  for (size_t f = 0; f < x.cols; ++f) {
    std::iota(idx.begin(), idx.end(), 0u);
    std::stable_sort(idx.begin(), idx.end(), [&](uint32_t a, uint32_t b) {
      return x.at(a, f) < x.at(b, f);
    });
    if (!(x.at(idx.front(), f) < x.at(idx.back(), f))) continue;
    SortedColumn column;
    column.feature = f;
    column.rows = idx;
    column.values.resize(n);
    for (size_t k = 0; k < n; ++k) column.values[k] = x.at(idx[k], f);
    columns.push_back(std::move(column));
  }

  std::vector<double> weight(n);
  double positive = 0.0, total = 0.0;
  for (size_t i = 0; i < n; ++i) {
    weight[i] = y[i] == 1 ? hp.scale_pos_weight : 1.0;
    positive += weight[i] * y[i];
    total += weight[i];
  }
  const double base_rate = positive / total;
  model.base_score = std::log(base_rate / (1.0 - base_rate));

  std::vector<double> margin(n, model.base_score);
  std::vector<double> g(n), h(n);
  if (options.train_loss != nullptr) {
    options.train_loss->push_back(LogLoss(margin, y, hp.scale_pos_weight));
  }

  const bool early_stop = options.valid_x != nullptr && options.valid_x->rows > 0;
  std::vector<double> valid_margin;
  double best_valid = 0.0;
  size_t best_trees = 0;
  if (early_stop) {
    if (options.valid_x->cols != x.cols ||
        options.valid_y.size() != options.valid_x->rows) {
      throw ValidationError("validation data shape does not match training");
    }
    valid_margin.assign(options.valid_x->rows, model.base_score);
    best_valid = LogLoss(valid_margin, options.valid_y);
  }

  TreeBuilder builder(x, columns, hp);
  for (int round = 0; round < hp.n_rounds; ++round) {
    for (size_t i = 0; i < n; ++i) {
      const double p = Sigmoid(margin[i]);
      g[i] = weight[i] * (p - y[i]);
      h[i] = weight[i] * p * (1.0 - p);
    }
    RegressionTree tree = builder.Build(g, h);
    for (size_t i = 0; i < n; ++i) margin[i] += tree.Predict(x.row(i));
    if (options.train_loss != nullptr) {
      options.train_loss->push_back(LogLoss(margin, y, hp.scale_pos_weight));
    }
    if (early_stop) {
      for (size_t i = 0; i < valid_margin.size(); ++i) {
        valid_margin[i] += tree.Predict(options.valid_x->row(i));
      }
    }
    model.trees.push_back(std::move(tree));
    if (early_stop) {
      const double loss = LogLoss(valid_margin, options.valid_y);
      if (loss < best_valid) {
        best_valid = loss;
        best_trees = model.trees.size();
      } else if (static_cast<int>(model.trees.size() - best_trees) >=
                 hp.early_stopping_rounds) {
        break;
      }
    }
  }
  if (early_stop) model.trees.resize(best_trees);
  return model;
}

std::map<std::string, double> FeatureImportance(const GbdtModel& model) {
  std::map<std::string, double> out;
  for (const auto& name : model.feature_names) out[name] = 0.0;
  std::vector<double> gain(model.feature_names.size(), 0.0);
  double total = 0.0;
  for (const RegressionTree& tree : model.trees) {
    for (const TreeNode& node : tree.nodes) {
      if (node.is_leaf()) continue;
      gain[node.feature] += node.gain;
      total += node.gain;
    }
  }
  if (total > 0.0) {
    for (size_t f = 0; f < gain.size(); ++f) {
      out[model.feature_names[f]] = gain[f] / total;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Persistence

namespace {

json HyperparamsToJson(const GbdtHyperparams& hp) {
  return json{{"max_depth", hp.max_depth},
              {"min_child_weight", hp.min_child_weight},
              {"gamma", hp.gamma},
              {"reg_alpha", hp.reg_alpha},
              {"scale_pos_weight", hp.scale_pos_weight},
              {"learning_rate", hp.learning_rate},
              {"n_rounds", hp.n_rounds},
              {"reg_lambda", hp.reg_lambda},
              {"early_stopping_rounds", hp.early_stopping_rounds}};
}

GbdtHyperparams HyperparamsFromJson(const json& j) {
  GbdtHyperparams hp;
  hp.max_depth = j.at("max_depth").get<int>();
  hp.min_child_weight = j.at("min_child_weight").get<double>();
  hp.gamma = j.at("gamma").get<double>();
  hp.reg_alpha = j.at("reg_alpha").get<double>();
  hp.scale_pos_weight = j.at("scale_pos_weight").get<double>();
  hp.learning_rate = j.at("learning_rate").get<double>();
  hp.n_rounds = j.at("n_rounds").get<int>();
  hp.reg_lambda = j.at("reg_lambda").get<double>();
  hp.early_stopping_rounds = j.at("early_stopping_rounds").get<int>();
  return hp;
}

}  // namespace

std::string SerializeModel(const GbdtModel& model) {
  json trees = json::array();
  for (const RegressionTree& tree : model.trees) {
    json nodes = json::array();
    for (const TreeNode& n : tree.nodes) {
      nodes.push_back(json::array(
          {n.feature, n.threshold, n.left, n.right, n.value, n.gain, n.cover}));
    }
    trees.push_back(std::move(nodes));
  }
  json j{{"format", "salience-gbdt"},
         {"version", kModelFormatVersion},
         {"hyperparams", HyperparamsToJson(model.hyperparams)},
         {"base_score", model.base_score},
         {"schema_fingerprint", model.fingerprint()},
         {"features", model.feature_names},
         {"trees", std::move(trees)}};
  return j.dump(1) + "\n";
}

GbdtModel ParseModel(std::string_view text) {
  GbdtModel model;
  try {
    json j = json::parse(text);
    if (j.at("format").get<std::string>() != "salience-gbdt") {
      throw ValidationError("not a salience model file");
    }
    const int version = j.at("version").get<int>();
    if (version != kModelFormatVersion) {
      throw ValidationError("model format version " + std::to_string(version) +
                            " is not supported (expected " +
                            std::to_string(kModelFormatVersion) + ")");
    }
    model.hyperparams = HyperparamsFromJson(j.at("hyperparams"));
    model.base_score = j.at("base_score").get<double>();
    model.feature_names = j.at("features").get<std::vector<std::string>>();
    const size_t n_features = model.feature_names.size();
    for (const json& nodes : j.at("trees")) {
      RegressionTree tree;
      for (const json& n : nodes) {
        TreeNode node;
        node.feature = n.at(0).get<int>();
        node.threshold = n.at(1).get<double>();
        node.left = n.at(2).get<int>();
        node.right = n.at(3).get<int>();
        node.value = n.at(4).get<double>();
        node.gain = n.at(5).get<double>();
        node.cover = n.at(6).get<double>();
        tree.nodes.push_back(node);
      }
      const int size = static_cast<int>(tree.nodes.size());
      if (size == 0) throw ValidationError("model contains an empty tree");
      for (const TreeNode& node : tree.nodes) {
        if (node.is_leaf()) continue;
        if (node.feature >= static_cast<int>(n_features) || node.left <= 0 ||
            node.right <= 0 || node.left >= size || node.right >= size) {
          throw ValidationError("model contains a malformed tree node");
        }
      }
      model.trees.push_back(std::move(tree));
    }
    if (j.at("schema_fingerprint").get<std::string>() != model.fingerprint()) {
      throw ValidationError("model schema fingerprint does not match its "
                            "feature list");
    }
  } catch (const json::exception& e) {
    throw ValidationError(std::string("corrupted model file: ") + e.what());
  }
  return model;
}

void SaveModel(const GbdtModel& model, const std::string& path) {
  WriteFile(path, SerializeModel(model));
}

GbdtModel LoadModel(const std::string& path) {
  return ParseModel(ReadFile(path));
}

// ---------------------------------------------------------------------------
// Grid search

size_t GbdtGrid::size() const {
  return max_depth.size() * min_child_weight.size() * gamma.size() *
         reg_alpha.size() * scale_pos_weight.size();
}

std::vector<GbdtHyperparams> GbdtGrid::Enumerate() const {
  std::vector<GbdtHyperparams> out;
  out.reserve(size());
  for (int depth : max_depth) {
    for (double mcw : min_child_weight) {
      for (double gm : gamma) {
        for (double alpha : reg_alpha) {
          for (double spw : scale_pos_weight) {
            GbdtHyperparams hp = base;
            hp.max_depth = depth;
            hp.min_child_weight = mcw;
            hp.gamma = gm;
            hp.reg_alpha = alpha;
            hp.scale_pos_weight = spw;
            out.push_back(hp);
          }
        }
      }
    }
  }
  return out;
}

GbdtGrid GbdtGrid::Full() {
  GbdtGrid grid;
  grid.max_depth = {2, 4, 6, 8};
  grid.min_child_weight = {6, 8, 10};
  grid.gamma = {0.1, 0.3, 0.5};
  grid.reg_alpha = {0.001, 0.01, 0.05};
  grid.scale_pos_weight = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  return grid;
}

GbdtGrid GbdtGrid::Small() {
  GbdtGrid grid;
  grid.max_depth = {4, 6};
  grid.min_child_weight = {6};
  grid.gamma = {0.1};
  grid.reg_alpha = {0.001};
  grid.scale_pos_weight = {1, 2, 4};
  return grid;
}

GbdtHyperparams NytHyperparams() {
  GbdtHyperparams hp;
  hp.max_depth = 8;
  hp.min_child_weight = 6;
  hp.gamma = 0.1;
  hp.reg_alpha = 0.001;
  hp.scale_pos_weight = 2;
  return hp;
}

GbdtHyperparams WikinewsHyperparams() {
  GbdtHyperparams hp;
  hp.max_depth = 2;
  hp.min_child_weight = 6;
  hp.gamma = 0.5;
  hp.reg_alpha = 0.05;
  hp.scale_pos_weight = 8;
  return hp;
}

GridSearchResult GridSearch(
    const GbdtGrid& grid,
    const std::function<double(const GbdtHyperparams&)>& score) {
  const auto configs = grid.Enumerate();
  if (configs.empty()) throw ValidationError("hyperparameter grid is empty");
  GridSearchResult result;
  for (size_t i = 0; i < configs.size(); ++i) {
    const double s = score(configs[i]);
    result.scores.push_back(s);
    if (i == 0 || s > result.best_score) {
      result.best_score = s;
      result.best = configs[i];
    }
  }
  return result;
}

// ---------------------------------------------------------------------------
// Logistic regression

double LogisticModel::PredictProba(std::span<const double> x) const {
  if (x.size() != weights.size()) {
    throw ValidationError("feature vector length does not match the model");
  }
  double z = bias;
  for (size_t i = 0; i < x.size(); ++i) z += weights[i] * x[i];
  return Sigmoid(z);
}

LogisticObjective LogisticLossAndGradient(const Matrix& x,
                                          std::span<const int> y, double l2,
                                          std::span<const double> weights,
                                          double bias) {
  LogisticObjective out;
  out.grad_weights.assign(x.cols, 0.0);
  const double inv_n = 1.0 / static_cast<double>(x.rows);
  for (size_t r = 0; r < x.rows; ++r) {
    const auto row = x.row(r);
    double z = bias;
    for (size_t c = 0; c < x.cols; ++c) z += weights[c] * row[c];
    out.loss += (Softplus(z) - y[r] * z) * inv_n;
    const double residual = (Sigmoid(z) - y[r]) * inv_n;
    for (size_t c = 0; c < x.cols; ++c) out.grad_weights[c] += residual * row[c];
    out.grad_bias += residual;
  }
  for (size_t c = 0; c < x.cols; ++c) {
    out.loss += 0.5 * l2 * weights[c] * weights[c];
    out.grad_weights[c] += l2 * weights[c];
  }
  return out;
}

LogisticModel TrainLogistic(const Matrix& x, std::span<const int> y, double l2,
                            int epochs, double learning_rate, uint64_t seed) {
  (void)seed;
  CheckTrainingData(x, y);
  if (l2 < 0 || epochs < 0 || !(learning_rate > 0)) {
    throw ValidationError("invalid logistic regression settings");
  }
  std::vector<double> mean(x.cols, 0.0), scale(x.cols, 0.0);
  for (size_t r = 0; r < x.rows; ++r) {
    for (size_t c = 0; c < x.cols; ++c) mean[c] += x.at(r, c);
  }
  for (double& m : mean) m /= static_cast<double>(x.rows);
  for (size_t r = 0; r < x.rows; ++r) {
    for (size_t c = 0; c < x.cols; ++c) {
      const double d = x.at(r, c) - mean[c];
      scale[c] += d * d;
    }
  }
  for (double& s : scale) {
    s = std::sqrt(s / static_cast<double>(x.rows));
    if (s == 0.0) s = 1.0;
  }
  Matrix z(x.rows, x.cols);
  for (size_t r = 0; r < x.rows; ++r) {
    for (size_t c = 0; c < x.cols; ++c) {
      z.at(r, c) = (x.at(r, c) - mean[c]) / scale[c];
    }
  }

  std::vector<double> w(x.cols, 0.0);
  double b = 0.0;
  for (int epoch = 0; epoch < epochs; ++epoch) {
    const auto obj = LogisticLossAndGradient(z, y, l2, w, b);
    for (size_t c = 0; c < w.size(); ++c) {
      w[c] -= learning_rate * obj.grad_weights[c];
    }
    b -= learning_rate * obj.grad_bias;
  }

  LogisticModel model;
  model.weights.resize(x.cols);
  model.bias = b;
  for (size_t c = 0; c < x.cols; ++c) {
    model.weights[c] = w[c] / scale[c];
    model.bias -= w[c] * mean[c] / scale[c];
  }
  return model;
}

}  // namespace salience
