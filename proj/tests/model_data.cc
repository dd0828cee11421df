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


#include "model_data.h"

#include <cmath>

namespace salience::testing {

LabeledData NoisyData(Rng& rng, size_t rows, size_t cols) {
  LabeledData data{Matrix(rows, cols), std::vector<int>(rows)};
  for (size_t i = 0; i < rows; ++i) {
    for (size_t j = 0; j < cols; ++j) data.x.at(i, j) = rng.Uniform();
    data.y[i] = (data.x.at(i, 0) > 0.5) != rng.Bernoulli(0.15) ? 1 : 0;
  }
  data.y[0] = 1;
  data.y[1] = 0;
  return data;
}

LabeledData SeparableData(Rng& rng, size_t rows) {
  LabeledData data{Matrix(rows, 2), std::vector<int>(rows)};
  for (size_t i = 0; i < rows; ++i) {
    double a = 0.0, b = 0.0;
    do {
      a = rng.Uniform();
      b = rng.Uniform();
    } while (std::abs(a + b - 1.0) < 0.05);
    data.x.at(i, 0) = a;
    data.x.at(i, 1) = b;
    data.y[i] = a + b > 1.0 ? 1 : 0;
  }
  return data;
}

}  // namespace salience::testing
