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

#include "salience/graph.h"

#include <algorithm>
#include <cmath>

namespace salience {

double WeightMatrix::RowSum(size_t i) const {
  double sum = 0.0;
  for (size_t j = 0; j < n_; ++j) sum += (*this)(i, j);
  return sum;
}

bool WeightMatrix::IsSymmetric(double tolerance) const {
  for (size_t i = 0; i < n_; ++i) {
    for (size_t j = i + 1; j < n_; ++j) {
      if (std::fabs((*this)(i, j) - (*this)(j, i)) > tolerance) return false;
    }
  }
  return true;
}

std::vector<double> WeightedPageRank(const WeightMatrix& weights,
                                     const PageRankOptions& options) {
  const size_t n = weights.size();
  if (n == 0) return {};
  const double uniform = 1.0 / static_cast<double>(n);
  std::vector<double> out_weight(n);
  for (size_t i = 0; i < n; ++i) out_weight[i] = weights.RowSum(i);

  std::vector<double> rank(n, uniform), next(n);
  for (int iter = 0; iter < options.max_iterations; ++iter) {
    double dangling = 0.0;
    for (size_t i = 0; i < n; ++i) {
      if (out_weight[i] <= 0.0) dangling += rank[i];
    }
    const double base =
        (1.0 - options.damping) * uniform + options.damping * dangling * uniform;
    std::fill(next.begin(), next.end(), base);
    for (size_t i = 0; i < n; ++i) {
      if (out_weight[i] <= 0.0) continue;
      const double share = options.damping * rank[i] / out_weight[i];
      for (size_t j = 0; j < n; ++j) {
        const double w = weights(i, j);
        if (w != 0.0) next[j] += share * w;
      }
    }
    double delta = 0.0;
    for (size_t i = 0; i < n; ++i) {
      delta = std::max(delta, std::fabs(next[i] - rank[i]));
    }
    rank.swap(next);
    if (delta < options.tolerance) break;
  }
  return rank;
}

}  // namespace salience
