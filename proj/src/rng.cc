// Copyright 2026 The tvgames Authors.
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

#include "tvg/rng.h"

#include <cmath>
#include <stdexcept>

namespace tvg {

Mat random_matrix(int rows, int cols, std::uint64_t seed, std::uint64_t stream) {
  if (rows < 1 || cols < 1) throw std::invalid_argument("random_matrix: empty shape");
  CounterRng rng(seed, stream);
  Mat A(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) A(i, j) = rng.uniform(-1.0, 1.0);
  return A;
}

Vec random_simplex_point(int d, CounterRng& rng) {
  Vec x(d);
  for (int i = 0; i < d; ++i) x[i] = -std::log(1.0 - rng.uniform());
  return x / x.sum();
}

}  // namespace tvg
