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

#include <cmath>
#include <numeric>

#include "doctest.h"
#include "json.hpp"
#include "model_data.h"
#include "oracles.h"
#include "salience/model.h"
#include "salience/util.h"
#include "support.h"

namespace salience {
namespace {

using testing::NoisyData;
using testing::SeparableData;

GbdtHyperparams Stump() {
  GbdtHyperparams hp;
  hp.max_depth = 1;
  hp.n_rounds = 1;
  hp.min_child_weight = 0.0;
  return hp;
}

TEST_CASE("root split matches the exhaustive oracle") {
  Rng rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const auto data = NoisyData(rng, 30 + rng.Index(40), 1 + rng.Index(4));
    GbdtHyperparams hp = Stump();
    hp.scale_pos_weight = trial % 3 == 0 ? 3.0 : 1.0;
    hp.reg_lambda = trial % 2 == 0 ? 1.0 : 0.5;
    const GbdtModel model = TrainGbdt(data.x, data.y, hp, 1);
    const oracle::RootSplit want = oracle::BestRootSplit(data.x, data.y, hp);
    const TreeNode& root = model.trees.at(0).nodes.at(0);
    INFO("trial ", trial);
    REQUIRE(root.feature == want.feature);
    if (want.feature < 0) continue;
    CHECK(root.threshold == doctest::Approx(want.threshold).epsilon(1e-12));
    CHECK(root.gain - hp.gamma == doctest::Approx(want.gain).epsilon(1e-9));
    for (size_t i = 0; i < data.x.rows; ++i) {
      CHECK((data.x.at(i, root.feature) < root.threshold) == bool(want.goes_left[i]));
    }
  }
}

TEST_CASE("training loss never increases") {
  Rng rng(4);
  for (int trial = 0; trial < 10; ++trial) {
    const auto data = NoisyData(rng, 120, 5);
    GbdtHyperparams hp;
    hp.max_depth = 3;
    hp.n_rounds = 50;
    hp.min_child_weight = 1.0;
    std::vector<double> loss;
    GbdtTrainOptions options;
    options.train_loss = &loss;
    TrainGbdt(data.x, data.y, hp, 1, options);
    REQUIRE(loss.size() == 51);
    for (size_t i = 1; i < loss.size(); ++i) CHECK(loss[i] <= loss[i - 1] + 1e-12);
  }
}

TEST_CASE("separable data is fit exactly") {
  Rng rng(5);
  const auto data = SeparableData(rng, 200);
  GbdtHyperparams hp;
  hp.n_rounds = 200;
  hp.min_child_weight = 0.0;
  const GbdtModel model = TrainGbdt(data.x, data.y, hp, 1);
  for (size_t i = 0; i < data.x.rows; ++i) {
    CHECK((model.PredictProba(data.x.row(i)) >= 0.5) == (data.y[i] == 1));
  }
}

TEST_CASE("one-feature separable data with stumps") {
  Matrix x(20, 1);
  std::vector<int> y(20);
  for (int i = 0; i < 20; ++i) {
    x.at(i, 0) = i < 10 ? -1.0 - i : 1.0 + i;
    y[i] = i < 10 ? 0 : 1;
  }
  GbdtHyperparams hp;
  hp.max_depth = 1;
  hp.n_rounds = 10;
  const GbdtModel model = TrainGbdt(x, y, hp, 1);
  for (int i = 0; i < 20; ++i) CHECK((model.PredictProba(x.row(i)) >= 0.5) == (y[i] == 1));
  CHECK(model.trees.at(0).nodes.at(0).threshold == 5.0);
}

TEST_CASE("large gamma suppresses every split") {
  Rng rng(6);
  const auto data = NoisyData(rng, 80, 3);
  GbdtHyperparams hp;
  hp.n_rounds = 5;
  hp.gamma = 1e6;
  const GbdtModel model = TrainGbdt(data.x, data.y, hp, 1);
  for (const RegressionTree& tree : model.trees) {
    CHECK(tree.nodes.size() == 1);
    CHECK(tree.Depth() == 0);
  }
  CHECK(FeatureImportance(model).begin()->second == 0.0);
}

TEST_CASE("row order does not change the model") {
  Rng rng(7);
  const auto data = NoisyData(rng, 100, 4);
  GbdtHyperparams hp;
  hp.n_rounds = 20;
  hp.max_depth = 4;
  const std::string reference = SerializeModel(TrainGbdt(data.x, data.y, hp, 1));
  std::vector<size_t> order(data.x.rows);
  std::iota(order.begin(), order.end(), 0);
  for (int trial = 0; trial < 3; ++trial) {
    rng.Shuffle(order);
    const Matrix x = data.x.SelectRows(order);
    std::vector<int> y;
    for (size_t i : order) y.push_back(data.y[i]);
    CHECK(SerializeModel(TrainGbdt(x, y, hp, 1)) == reference);
  }
}

TEST_CASE("scale_pos_weight shifts predictions upwards") {
  Rng rng(8);
  const auto data = NoisyData(rng, 150, 3);
  GbdtHyperparams hp;
  hp.n_rounds = 10;
  const GbdtModel plain = TrainGbdt(data.x, data.y, hp, 1);
  hp.scale_pos_weight = 5.0;
  const GbdtModel weighted = TrainGbdt(data.x, data.y, hp, 1);
  const double rate =
      std::accumulate(data.y.begin(), data.y.end(), 0.0) / data.y.size();
  CHECK(Sigmoid(plain.base_score) == doctest::Approx(rate).epsilon(1e-12));
  CHECK(Sigmoid(weighted.base_score) ==
        doctest::Approx(5 * rate / (5 * rate + 1 - rate)).epsilon(1e-12));
  double mean_plain = 0.0, mean_weighted = 0.0;
  for (size_t i = 0; i < data.x.rows; ++i) {
    mean_plain += plain.PredictProba(data.x.row(i));
    mean_weighted += weighted.PredictProba(data.x.row(i));
  }
  CHECK(mean_weighted > mean_plain);
}

TEST_CASE("model files round-trip and reject corruption") {
  Rng rng(9);
  const auto data = NoisyData(rng, 60, 3);
  GbdtHyperparams hp;
  hp.n_rounds = 8;
  GbdtTrainOptions options;
  options.feature_names = {"alpha", "beta", "gamma"};
  const GbdtModel model = TrainGbdt(data.x, data.y, hp, 1, options);
  const std::string dir = testing::TempDir("model");
  const std::string path = dir + "/model.json";
  SaveModel(model, path);
  const GbdtModel loaded = LoadModel(path);
  CHECK(SerializeModel(loaded) == SerializeModel(model));
  CHECK(loaded.feature_names == options.feature_names);
  for (size_t i = 0; i < data.x.rows; ++i) {
    CHECK(loaded.PredictMargin(data.x.row(i)) == model.PredictMargin(data.x.row(i)));
  }

  const std::string text = SerializeModel(model);
  CHECK_THROWS_AS(ParseModel(text.substr(0, text.size() / 2)), ValidationError);
  nlohmann::json j = nlohmann::json::parse(text);
  j["version"] = 9;
  const std::string versioned = j.dump();
  CHECK_THROWS_WITH_AS(ParseModel(versioned), doctest::Contains("version 9"),
                       ValidationError);
  CHECK_THROWS_AS(LoadModel(dir + "/missing.json"), IoError);
  CHECK_THROWS_AS(model.PredictMargin(std::vector<double>{1.0}), ValidationError);
}

TEST_CASE("invalid training input") {
  Matrix x(2, 1);
  const std::vector<int> same = {1, 1};
  CHECK_THROWS_AS(TrainGbdt(x, same, {}, 1), ValidationError);
  CHECK_THROWS_AS(TrainGbdt(Matrix(0, 1), std::vector<int>{}, {}, 1), ValidationError);
  x.at(0, 0) = std::nan("");
  CHECK_THROWS_AS(TrainGbdt(x, std::vector<int>{0, 1}, {}, 1), ValidationError);
  GbdtHyperparams hp;
  hp.learning_rate = 0.0;
  CHECK_THROWS_AS(hp.Validate(), ValidationError);
}

TEST_CASE("feature importance is normalized") {
  Rng rng(10);
  const auto data = NoisyData(rng, 120, 4);
  GbdtHyperparams hp;
  hp.n_rounds = 10;
  const auto importance = FeatureImportance(TrainGbdt(data.x, data.y, hp, 1));
  double total = 0.0;
  for (const auto& [name, value] : importance) {
    CHECK(value >= 0.0);
    total += value;
  }
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
  // Column 0 carries the label signal.
  CHECK(importance.at("f0") == std::max_element(importance.begin(), importance.end(),
                                                [](const auto& a, const auto& b) {
                                                  return a.second < b.second;
                                                })->second);
}

TEST_CASE("logistic gradient matches finite differences") {
  Rng rng(11);
  for (int trial = 0; trial < 10; ++trial) {
    const auto data = NoisyData(rng, 40, 3);
    std::vector<double> w = {rng.Uniform(-1, 1), rng.Uniform(-1, 1), rng.Uniform(-1, 1)};
    const double b = rng.Uniform(-1, 1);
    const double l2 = 0.1;
    const auto obj = LogisticLossAndGradient(data.x, data.y, l2, w, b);
    const double eps = 1e-6;
    for (size_t k = 0; k <= w.size(); ++k) {
      std::vector<double> up = w, down = w;
      double bu = b, bd = b;
      if (k < w.size()) {
        up[k] += eps;
        down[k] -= eps;
      } else {
        bu += eps;
        bd -= eps;
      }
      const double numeric = (LogisticLossAndGradient(data.x, data.y, l2, up, bu).loss -
                              LogisticLossAndGradient(data.x, data.y, l2, down, bd).loss) /
                             (2 * eps);
      const double analytic = k < w.size() ? obj.grad_weights[k] : obj.grad_bias;
      CHECK(std::fabs(numeric - analytic) <= 1e-5 * std::max(1.0, std::fabs(analytic)));
    }
  }
}

TEST_CASE("logistic regression learns a separable rule") {
  Rng rng(12);
  const auto data = SeparableData(rng, 200);
  const LogisticModel model = TrainLogistic(data.x, data.y, 1e-4, 500, 0.5, 1);
  int correct = 0;
  for (size_t i = 0; i < data.x.rows; ++i) {
    correct += (model.PredictProba(data.x.row(i)) >= 0.5) == (data.y[i] == 1);
  }
  CHECK(correct >= 190);
}

TEST_CASE("hyperparameter grids") {
  CHECK(GbdtGrid::Full().size() == 1080);
  CHECK(GbdtGrid::Full().Enumerate().size() == 1080);
  CHECK(GbdtGrid::Small().size() == 6);
  const GbdtHyperparams nyt = NytHyperparams();
  CHECK(nyt.max_depth == 8);
  CHECK(nyt.min_child_weight == 6);
  CHECK(nyt.gamma == 0.1);
  CHECK(nyt.reg_alpha == 0.001);
  CHECK(nyt.scale_pos_weight == 2);
  const auto first = GbdtGrid::Full().Enumerate().front();
  CHECK(first.max_depth == 2);
  CHECK(first.scale_pos_weight == 1);
}

TEST_CASE("grid search keeps the earliest best configuration") {
  const GbdtGrid grid = GbdtGrid::Small();
  const auto result = GridSearch(grid, [](const GbdtHyperparams& hp) {
    return hp.scale_pos_weight >= 2 ? 1.0 : 0.0;
  });
  CHECK(result.scores.size() == 6);
  CHECK(result.best_score == 1.0);
  CHECK(result.best == grid.Enumerate()[1]);
  GbdtGrid empty = grid;
  empty.gamma.clear();
  CHECK_THROWS_AS(GridSearch(empty, [](const GbdtHyperparams&) { return 0.0; }),
                  ValidationError);
}

}  // namespace
}  // namespace salience
