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

#ifndef TVG_GEOMETRY_H_
#define TVG_GEOMETRY_H_

#include <string>
#include <vector>

#include <Eigen/Dense>

namespace tvg {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

inline constexpr double kSimplexTol = 1e-12;
inline constexpr double kSpectralTol = 1e-12;
inline constexpr int kSpectralMaxIters = 10000;

// Euclidean projection onto the probability simplex (sort and threshold).
// Throws std::invalid_argument on empty or non-finite input.
Vec project_simplex(const Vec& v);

// Throws std::invalid_argument unless x is a probability vector.
void check_simplex_point(const Vec& x, double tol = kSimplexTol,
                         const std::string& what = "strategy");
bool is_simplex_point(const Vec& x, double tol = kSimplexTol);

Vec uniform_point(int d);
Vec vertex(int d, int a);

// Largest singular value by power iteration on A^T A. The all-ones start is
// paired with a second deterministic start vector and the larger estimate is
// kept, since structured payoff matrices often annihilate the all-ones vector.
double spectral_norm(const Mat& A, double tol = kSpectralTol);

enum class Regularizer { kEuclidean, kNegativeEntropy };

std::string to_string(Regularizer r);
Regularizer regularizer_from_string(const std::string& s);

// Euclidean: 0.5*|a-b|^2. Negative entropy: KL(a||b).
double bregman(Regularizer reg, const Vec& a, const Vec& b);

// argmax_x <x, g> - D(x, center) / eta over the simplex.
Vec prox_step(Regularizer reg, const Vec& center, const Vec& g, double eta);

// Diameter and max norm of a simplex and of products of simplices.
double simplex_diameter(int d);
double product_diameter(const std::vector<int>& dims);
double product_max_norm(const std::vector<int>& dims);

// Norm in which the regularizer is 1-strongly convex, and its dual.
double primal_norm(Regularizer reg, const Vec& v);
double dual_norm(Regularizer reg, const Vec& v);

bool all_finite(const Vec& v);
bool all_finite(const Mat& m);

}  // namespace tvg

#endif  // TVG_GEOMETRY_H_
