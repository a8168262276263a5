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


#include "tvg/games.h"

#include <gtest/gtest.h>

#include "tvg/rng.h"

namespace tvg {
namespace {

TEST(MatrixGame, UtilitiesFollowSignConvention) {
  const Mat A = random_matrix(3, 2, 1, 0);
  const Vec x = (Vec(3) << 0.2, 0.3, 0.5).finished();
  const Vec y = (Vec(2) << 0.6, 0.4).finished();
  const std::vector<Vec> u = utilities(MatrixGame{A}, {x, y});
  EXPECT_LT((u[0] + A * y).norm(), 1e-15);
  EXPECT_LT((u[1] - A.transpose() * x).norm(), 1e-15);
  // Zero-sum: <x, u_x> + <y, u_y> = 0.
  EXPECT_NEAR(x.dot(u[0]) + y.dot(u[1]), 0.0, 1e-15);
  const std::vector<Vec> v = utilities(IdenticalInterestGame{A}, {x, y});
  EXPECT_NEAR(x.dot(v[0]), potential(A, x, y), 1e-15);
  EXPECT_NEAR(y.dot(v[1]), potential(A, x, y), 1e-15);
  EXPECT_THROW(utilities(MatrixGame{A}, {y, x}), std::invalid_argument);
}

TEST(NormalFormGame, EncodeDecodeRoundTrip) {
  const NormalFormGame g({2, 3, 2}, {Vec::Zero(12), Vec::Zero(12), Vec::Zero(12)});
  EXPECT_EQ(g.num_profiles(), 12);
  for (int k = 0; k < 12; ++k) {
    EXPECT_EQ(g.encode(g.decode(k)), k);
    for (int i = 0; i < 3; ++i) EXPECT_EQ(g.decode(k)[i], g.action_of(k, i));
  }
  // Last player varies fastest.
  EXPECT_EQ(g.decode(1), (std::vector<int>{0, 0, 1}));
  EXPECT_EQ(g.with_action(0, 1, 2), g.encode({0, 2, 0}));
  EXPECT_THROW(NormalFormGame({2, 2}, {Vec::Zero(4)}), std::invalid_argument);
  EXPECT_THROW(NormalFormGame({2, 2}, {Vec::Zero(3), Vec::Zero(4)}), std::invalid_argument);
}

TEST(NormalFormGame, ActionValuesByEnumeration) {
  CounterRng r(2, 0);
  const NormalFormGame g({2, 3, 2}, {random_matrix(12, 1, 3, 0).col(0), random_matrix(12, 1, 3, 1).col(0),
                                      random_matrix(12, 1, 3, 2).col(0)});
  const std::vector<Vec> prof{random_simplex_point(2, r), random_simplex_point(3, r),
                              random_simplex_point(2, r)};
  for (int i = 0; i < 3; ++i) {
    const Vec av = g.action_values(i, prof);
    for (int a = 0; a < g.num_actions(i); ++a) {
      double expect = 0.0;
      for (int k = 0; k < g.num_profiles(); ++k) {
        const std::vector<int> acts = g.decode(k);
        if (acts[i] != a) continue;
        double p = 1.0;
        for (int j = 0; j < 3; ++j) {
          if (j != i) p *= prof[j][acts[j]];
        }
        expect += p * g.utility(i, k);
      }
      EXPECT_NEAR(av[a], expect, 1e-14);
    }
    EXPECT_NEAR(g.expected_utility(i, prof), prof[i].dot(av), 1e-14);
  }
}

TEST(PolymatrixGame, ValidatesAntisymmetry) {
  const Mat A = random_matrix(2, 3, 4, 0);
  PolymatrixGame::Blocks ok{{{0, 1}, A}, {{1, 0}, -A.transpose()}};
  EXPECT_NO_THROW(PolymatrixGame({2, 3}, ok));
  PolymatrixGame::Blocks bad{{{0, 1}, A}, {{1, 0}, A.transpose()}};
  EXPECT_THROW(PolymatrixGame({2, 3}, bad), std::invalid_argument);
  PolymatrixGame::Blocks missing{{{0, 1}, A}};
  EXPECT_THROW(PolymatrixGame({2, 3}, missing), std::invalid_argument);
  PolymatrixGame::Blocks shape{{{0, 1}, A}, {{1, 0}, -A.transpose()}};
  EXPECT_THROW(PolymatrixGame({3, 3}, shape), std::invalid_argument);
}

TEST(PolymatrixGame, TwoNodeReductionMatchesMatrixGame) {
  const Mat A = random_matrix(3, 4, 5, 0);
  const PolymatrixGame pg = PolymatrixGame::from_matrix_game(A);
  CounterRng r(5, 1);
  const std::vector<Vec> prof{random_simplex_point(3, r), random_simplex_point(4, r)};
  const std::vector<Vec> a = utilities(pg, prof);
  const std::vector<Vec> b = utilities(MatrixGame{A}, prof);
  EXPECT_LT((a[0] - b[0]).norm(), 1e-15);
  EXPECT_LT((a[1] - b[1]).norm(), 1e-15);
}

TEST(PolymatrixGame, JointOperatorAndZeroSum) {
  const PolymatrixGame g = PolymatrixGame::from_edges(
      {2, 3, 2}, {{{0, 1}, random_matrix(2, 3, 6, 0)}, {{1, 2}, random_matrix(3, 2, 6, 1)}});
  EXPECT_EQ(g.neighbors(1), (std::vector<int>{0, 2}));
  CounterRng r(6, 2);
  const std::vector<Vec> prof{random_simplex_point(2, r), random_simplex_point(3, r),
                              random_simplex_point(2, r)};
  Vec z(7);
  z << prof[0], prof[1], prof[2];
  const Vec Mz = g.joint_operator() * z;
  double total = 0.0;
  int off = 0;
  for (int i = 0; i < 3; ++i) {
    const Vec u = g.utility_gradient(i, prof);
    EXPECT_LT((Mz.segment(off, u.size()) - u).norm(), 1e-14);
    off += static_cast<int>(u.size());
    total += polymatrix_payoff(g, i, prof);
  }
  EXPECT_NEAR(total, 0.0, 1e-14);
}

TEST(QuadraticSaddle, GradientsMatchFiniteDifferences) {
  CounterRng r(7, 0);
  QuadraticSaddle g{random_matrix(3, 3, 7, 0), 0.7, random_simplex_point(3, r),
                    random_simplex_point(3, r)};
  g.validate();
  const Vec x = random_simplex_point(3, r), y = random_simplex_point(3, r);
  const SaddleGradients s = eval_saddle_gradients(g, x, y);
  const double h = 1e-6;
  for (int i = 0; i < 3; ++i) {
    Vec e = Vec::Zero(3);
    e[i] = h;
    const double dfx = (g.value(x + e, y) - g.value(x - e, y)) / (2 * h);
    const double dfy = (g.value(x, y + e) - g.value(x, y - e)) / (2 * h);
    EXPECT_NEAR(s.u_x[i], -dfx, 1e-8);
    EXPECT_NEAR(s.u_y[i], dfy, 1e-8);
  }
  QuadraticSaddle bad = g;
  bad.mu = -1.0;
  EXPECT_THROW(bad.validate(), std::invalid_argument);
}

TEST(Games, JsonRoundTrip) {
  CounterRng r(8, 0);
  const std::vector<Game> games{
      MatrixGame{random_matrix(2, 3, 8, 0)},
      IdenticalInterestGame{random_matrix(3, 3, 8, 1)},
      PolymatrixGame::from_edges({2, 2, 2}, {{{0, 1}, random_matrix(2, 2, 8, 2)}}),
      QuadraticSaddle{random_matrix(2, 2, 8, 3), 0.5, random_simplex_point(2, r),
                      random_simplex_point(2, r)},
      NormalFormGame({2, 2}, {random_matrix(4, 1, 8, 4).col(0), random_matrix(4, 1, 8, 5).col(0)})};
  for (const Game& g : games) {
    const Game back = game_from_json(game_to_json(g));
    EXPECT_EQ(kind_of(back), kind_of(g));
    EXPECT_EQ(game_to_json(back), game_to_json(g));
    EXPECT_EQ(strategy_dims(back), strategy_dims(g));
  }
  EXPECT_EQ(game_kind_from_string("saddle"), GameKind::kSaddle);
  EXPECT_THROW(game_kind_from_string("chess"), std::invalid_argument);
}

TEST(Potential, MaxEntry) {
  Mat A(2, 2);
  A << 1, -3, 2, 0.5;
  EXPECT_DOUBLE_EQ(potential_max(A), 3.0);
}

}  // namespace
}  // namespace tvg
