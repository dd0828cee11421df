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

#ifndef SALIENCE_GRAPH_H_
#define SALIENCE_GRAPH_H_

#include <cstddef>
#include <vector>

namespace salience {

// Dense square matrix of edge weights, row-major. Entry (i, j) is the weight
// of the edge i -> j.
class WeightMatrix {
 public:
  WeightMatrix() = default;
  explicit WeightMatrix(size_t n) : n_(n), values_(n * n, 0.0) {}

  size_t size() const { return n_; }
  double& operator()(size_t i, size_t j) { return values_[i * n_ + j]; }
  double operator()(size_t i, size_t j) const { return values_[i * n_ + j]; }
  double RowSum(size_t i) const;
  bool IsSymmetric(double tolerance = 0.0) const;

 private:
  size_t n_ = 0;
  std::vector<double> values_;
};

struct PageRankOptions {
  double damping = 0.85;
  double tolerance = 1e-9;
  int max_iterations = 200;
};

// Weighted PageRank with uniform teleport. A node with zero outgoing weight
// spreads its mass uniformly over all nodes. Iterates until the largest
// component change drops below the tolerance.
std::vector<double> WeightedPageRank(const WeightMatrix& weights,
                                     const PageRankOptions& options = {});

}  // namespace salience

#endif  // SALIENCE_GRAPH_H_
