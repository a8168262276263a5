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

#ifndef TVG_RNG_H_
#define TVG_RNG_H_

#include <cstdint>

#include "tvg/geometry.h"

namespace tvg {

// splitmix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Seed for cell `index` of a sweep rooted at `base`.
constexpr std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
  return mix64(base ^ mix64(index + 0x632be59bd9b4e019ULL));
}

// Counter-based stream: the k-th draw depends only on (seed, stream, k).
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0)
      : key_(mix64(seed) ^ mix64(~stream)) {}

  std::uint64_t next() { return mix64(key_ + 0x9e3779b97f4a7c15ULL * counter_++); }
  // Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  std::uint64_t counter() const { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

// Entries i.i.d. uniform on [-1, 1], filled row-major.
Mat random_matrix(int rows, int cols, std::uint64_t seed, std::uint64_t stream = 0);
// Uniformly distributed point of the simplex (normalized exponentials).
Vec random_simplex_point(int d, CounterRng& rng);

}  // namespace tvg

#endif  // TVG_RNG_H_
