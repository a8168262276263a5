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


#include "tvg/geometry.h"

#include <cmath>

#include <gtest/gtest.h>

#include "tvg/rng.h"

namespace tvg {
namespace {

// Threshold tau with sum max(v - tau, 0) = 1, found by bisection.
Vec bisection_projection(const Vec& v) {
  double lo = v.minCoeff() - 1.0, hi = v.maxCoeff();
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double s = (v.array() - mid).max(0.0).sum();
    (s > 1.0 ? lo : hi) = mid;
  }
  return (v.array() - 0.5 * (lo + hi)).max(0.0).matrix();
}

TEST(ProjectSimplex, MatchesBisectionOracle) {
  CounterRng rng(3, 0);
  for (int trial = 0; trial < 200; ++trial) {
    const int d = 1 + trial % 7;
    Vec v(d);
    for (int i = 0; i < d; ++i) v[i] = rng.uniform(-3.0, 3.0);
    const Vec p = project_simplex(v);
    EXPECT_TRUE(is_simplex_point(p));
    EXPECT_LT((p - bisection_projection(v)).lpNorm<Eigen::Infinity>(), 1e-10);
  }
}

TEST(ProjectSimplex, VariationalInequality) {
  // <v - p, q - p> <= 0 for every vertex q.
  CounterRng rng(4, 0);
  for (int trial = 0; trial < 100; ++trial) {
    Vec v(5);
    for (int i = 0; i < 5; ++i) v[i] = rng.uniform(-2.0, 2.0);
    const Vec p = project_simplex(v);
    for (int a = 0; a < 5; ++a) EXPECT_LE((v - p).dot(vertex(5, a) - p), 1e-12);
  }
}

TEST(ProjectSimplex, FixedPointsAndTies) {
  const Vec x = (Vec(3) << 0.2, 0.3, 0.5).finished();
  EXPECT_LT((project_simplex(x) - x).norm(), 1e-15);
  const Vec tie = project_simplex(Vec::Constant(4, 7.0));
  EXPECT_LT((tie - uniform_point(4)).norm(), 1e-15);
}

TEST(ProjectSimplex, RejectsBadInput) {
  EXPECT_THROW(project_simplex(Vec()), std::invalid_argument);
  Vec v = Vec::Zero(2);
  v[0] = std::nan("");
  EXPECT_THROW(project_simplex(v), std::invalid_argument);
}

TEST(SimplexPoint, Checks) {
  EXPECT_TRUE(is_simplex_point(uniform_point(3)));
  EXPECT_FALSE(is_simplex_point((Vec(2) << 0.7, 0.7).finished()));
  EXPECT_FALSE(is_simplex_point((Vec(2) << 1.5, -0.5).finished()));
  EXPECT_THROW(check_simplex_point((Vec(2) << 1.5, -0.5).finished()), std::invalid_argument);
  EXPECT_THROW(vertex(3, 3), std::out_of_range);
}

TEST(SpectralNorm, TwoByTwoClosedForm) {
  // Largest singular value of [[a, b], [c, d]] from the characteristic
  // polynomial of A^T A.
  CounterRng rng(5, 0);
  for (int trial = 0; trial < 100; ++trial) {
    Mat A(2, 2);
    for (int i = 0; i < 4; ++i) A(i / 2, i % 2) = rng.uniform(-2.0, 2.0);
    const double a = A(0, 0), b = A(0, 1), c = A(1, 0), d = A(1, 1);
    const double s = a * a + b * b + c * c + d * d;
    const double det = a * d - b * c;
    const double sigma = std::sqrt(0.5 * (s + std::sqrt(s * s - 4.0 * det * det)));
    EXPECT_NEAR(spectral_norm(A), sigma, 1e-9 * std::max(1.0, sigma));
  }
}

TEST(SpectralNorm, AgreesWithSvdAndSpecialCases) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const Mat A = random_matrix(7, 4, seed, 0);
    const double svd = Eigen::JacobiSVD<Mat>(A).singularValues()(0);
    EXPECT_NEAR(spectral_norm(A), svd, 1e-8);
  }
  EXPECT_EQ(spectral_norm(Mat::Zero(3, 3)), 0.0);
  // The all-ones direction is annihilated by matching pennies.
  Mat mp(2, 2);
  mp << 1, -1, -1, 1;
  EXPECT_NEAR(spectral_norm(mp), 2.0, 1e-12);
  Mat rank_one = Mat::Zero(2, 2);
  rank_one(0, 0) = 1.0;
  EXPECT_NEAR(spectral_norm(rank_one), 1.0, 1e-15);
}

TEST(Bregman, EuclideanAndEntropy) {
  const Vec a = (Vec(3) << 0.5, 0.5, 0.0).finished();
  const Vec b = (Vec(3) << 0.25, 0.25, 0.5).finished();
  EXPECT_NEAR(bregman(Regularizer::kEuclidean, a, b), 0.5 * (a - b).squaredNorm(), 1e-15);
  double kl = 0.0;
  for (int i = 0; i < 3; ++i) {
    if (a[i] > 0) kl += a[i] * std::log(a[i] / b[i]);
  }
  EXPECT_NEAR(bregman(Regularizer::kNegativeEntropy, a, b), kl, 1e-15);
  EXPECT_EQ(bregman(Regularizer::kNegativeEntropy, b, b), 0.0);
  EXPECT_THROW(bregman(Regularizer::kNegativeEntropy, b, a), std::invalid_argument);
}

TEST(ProxStep, EntropyMatchesMultiplicativeForm) {
  CounterRng rng(6, 0);
  for (int trial = 0; trial < 50; ++trial) {
    const Vec c = random_simplex_point(4, rng);
    Vec g(4);
    for (int i = 0; i < 4; ++i) g[i] = rng.uniform(-5.0, 5.0);
    Vec expect = (c.array() * (0.3 * g.array()).exp()).matrix();
    expect /= expect.sum();
    EXPECT_LT((prox_step(Regularizer::kNegativeEntropy, c, g, 0.3) - expect).norm(), 1e-12);
  }
}

TEST(ProxStep, EuclideanIsProjection) {
  const Vec c = uniform_point(3);
  const Vec g = (Vec(3) << 1.0, -2.0, 0.5).finished();
  EXPECT_LT((prox_step(Regularizer::kEuclidean, c, g, 0.2) - bisection_projection(c + 0.2 * g)).norm(),
            1e-10);
  EXPECT_THROW(prox_step(Regularizer::kEuclidean, c, Vec::Zero(2), 0.1), std::invalid_argument);
}

TEST(Constants, DiametersAndNorms) {
  EXPECT_DOUBLE_EQ(simplex_diameter(1), 0.0);
  EXPECT_DOUBLE_EQ(simplex_diameter(5), std::sqrt(2.0));
  EXPECT_DOUBLE_EQ(product_diameter({3, 4}), 2.0);
  EXPECT_DOUBLE_EQ(product_max_norm({3, 4, 2}), std::sqrt(3.0));
  EXPECT_EQ(regularizer_from_string(to_string(Regularizer::kNegativeEntropy)),
            Regularizer::kNegativeEntropy);
  EXPECT_THROW(regularizer_from_string("l3"), std::invalid_argument);
}

TEST(Norms, PrimalDualPairs) {
  const Vec v = (Vec(3) << 1.0, -2.0, 2.0).finished();
  EXPECT_DOUBLE_EQ(primal_norm(Regularizer::kEuclidean, v), 3.0);
  EXPECT_DOUBLE_EQ(dual_norm(Regularizer::kEuclidean, v), 3.0);
  EXPECT_DOUBLE_EQ(primal_norm(Regularizer::kNegativeEntropy, v), 5.0);
  EXPECT_DOUBLE_EQ(dual_norm(Regularizer::kNegativeEntropy, v), 2.0);
}

}  // namespace
}  // namespace tvg
