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


#include "tvg/metrics.h"

#include <cmath>
#include <functional>

#include <gtest/gtest.h>

#include "tvg/rng.h"

namespace tvg {
namespace {

// Enumerates every comparator sequence of vertices with at most K - 1 switches.
double brute_kswitch(const std::vector<Vec>& u, const std::vector<Vec>& x, int K) {
  const int T = static_cast<int>(u.size()), d = static_cast<int>(u[0].size());
  double played = 0.0;
  for (int t = 0; t < T; ++t) played += x[t].dot(u[t]);
  double best = -1e300;
  std::function<void(int, int, int, double)> rec = [&](int t, int prev, int switches, double acc) {
    if (t == T) {
      best = std::max(best, acc);
      return;
    }
    for (int a = 0; a < d; ++a) {
      const int s = switches + (t > 0 && a != prev ? 1 : 0);
      if (s > K - 1) continue;
      rec(t + 1, a, s, acc + u[t][a]);
    }
  };
  rec(0, -1, 0, 0.0);
  return best - played;
}

TEST(KSwitch, WorkedExample) {
  // Utilities (1,0), (0,1), (1,0) against uniform play: K=1 gives 2 - 1.5,
  // K=2 gives 2 - 1.5, K=3 gives 3 - 1.5.
  std::vector<Vec> u{vertex(2, 0), vertex(2, 1), vertex(2, 0)};
  std::vector<Vec> x(3, uniform_point(2));
  EXPECT_NEAR(k_switch_dreg(u, x, 1), 0.5, 1e-15);
  EXPECT_NEAR(k_switch_dreg(u, x, 2), 0.5, 1e-15);
  EXPECT_NEAR(k_switch_dreg(u, x, 3), 1.5, 1e-15);
  EXPECT_NEAR(k_switch_dreg(u, x, 10), 1.5, 1e-15);
  EXPECT_THROW(k_switch_dreg(u, x, 0), std::invalid_argument);
}

TEST(KSwitch, MatchesBruteForce) {
  CounterRng rng(3, 0);
  for (int trial = 0; trial < 20; ++trial) {
    const int T = 6, d = 3;
    std::vector<Vec> u, x;
    const Mat U = random_matrix(T, d, 100 + trial, 0);
    for (int t = 0; t < T; ++t) {
      u.push_back(U.row(t).transpose());
      x.push_back(random_simplex_point(d, rng));
    }
    double prev = -1e300;
    for (int K = 1; K <= T; ++K) {
      const double v = k_switch_dreg(u, x, K);
      EXPECT_NEAR(v, brute_kswitch(u, x, K), 1e-12);
      EXPECT_GE(v, prev - 1e-15);
      prev = v;
    }
  }
}

TEST(KSwitch, EndpointsMatchRegrets) {
  const Trace tr = run_dynamics(gen_drift_powerlaw(random_matrix(4, 4, 9, 0), random_matrix(4, 4, 9, 1), 0.5, 40),
                                {LearnerSpec::ogd(0.1), LearnerSpec::mwu(0.1)});
  for (int i = 0; i < 2; ++i) {
    EXPECT_NEAR(k_switch_dreg(tr, i, 1), external_regret(tr, i), 1e-12);
    EXPECT_NEAR(k_switch_dreg(tr, i, 40), max_dynamic_regret(tr, i), 1e-12);
  }
}

TEST(Regret, ExternalByDefinition) {
  std::vector<Vec> u{vertex(3, 2), vertex(3, 2), vertex(3, 0)};
  Trace tr;
  tr.learners = {LearnerSpec::ogd(0.1)};
  for (int t = 0; t < 3; ++t) {
    Round r;
    r.t = t + 1;
    r.players.push_back(PlayerRound{vertex(3, 0), {}, {}, {}, u[t], {}, {}});
    tr.rounds.push_back(r);
  }
  EXPECT_NEAR(external_regret(tr, 0), 1.0, 1e-15);
  EXPECT_NEAR(max_dynamic_regret(tr, 0), 2.0, 1e-15);
  EXPECT_NEAR(dynamic_regret(tr, 0, {vertex(3, 2), vertex(3, 0), vertex(3, 0)}), 1.0, 1e-15);
  EXPECT_EQ(running_external_regret(tr, 0), (std::vector<double>{1.0, 2.0, 1.0}));
  EXPECT_THROW(external_regret(tr, 1), std::out_of_range);
}

TEST(EqGap, ZeroSumExamples) {
  Mat A(2, 2);
  A << 1, -1, -1, 1;
  const MatrixGame g{A};
  EXPECT_NEAR(eq_gap_zero_sum(g, uniform_point(2), uniform_point(2)), 0.0, 1e-15);
  // x = e1 against uniform y: row player utility -(A y) = 0, column utility A^T e1 = (1, -1).
  EXPECT_NEAR(eq_gap_zero_sum(g, vertex(2, 0), uniform_point(2)), 1.0, 1e-15);
  const IdenticalInterestGame ii{Mat::Identity(2, 2)};
  EXPECT_NEAR(eq_gap_identical_interest(ii, vertex(2, 0), vertex(2, 0)), 0.0, 1e-15);
  EXPECT_NEAR(eq_gap_identical_interest(ii, vertex(2, 0), vertex(2, 1)), 1.0, 1e-15);
}

TEST(EqGap, SaddleBestResponsesAreOptimal) {
  QuadraticSaddle g{random_matrix(3, 3, 4, 0), 0.5, uniform_point(3), vertex(3, 1)};
  CounterRng rng(4, 1);
  const Vec x = random_simplex_point(3, rng), y = random_simplex_point(3, rng);
  const SaddleBestResponses br = saddle_best_responses(g, x, y);
  for (int k = 0; k < 200; ++k) {
    const Vec z = random_simplex_point(3, rng);
    EXPECT_LE(g.value(br.x, y), g.value(z, y) + 1e-12);
    EXPECT_GE(g.value(x, br.y), g.value(x, z) - 1e-12);
  }
  EXPECT_GE(eq_gap_normal_form(g, {x, y}), 0.0);
}

TEST(CeGap, BruteForceSwaps) {
  // Chicken: the uniform-over-off-diagonal distribution is a CE.
  NormalFormGame chicken({2, 2}, {(Vec(4) << 0, 7, 2, 6).finished(), (Vec(4) << 0, 2, 7, 6).finished()});
  Vec mu(4);
  mu << 0.0, 0.5, 0.5, 0.0;
  EXPECT_NEAR(ce_gap(chicken, mu), 0.0, 1e-15);
  // Mass on (0,0): each player gains 2 by swapping 0 -> 1.
  EXPECT_NEAR(ce_gap(chicken, vertex(4, 0)), 2.0, 1e-15);
  EXPECT_THROW(ce_gap(chicken, Vec::Ones(3)), std::invalid_argument);
}

TEST(CeGap, RandomDistributionsAgainstEnumeration) {
  CounterRng rng(8, 0);
  const NormalFormGame g({2, 3}, {random_matrix(6, 1, 8, 1).col(0), random_matrix(6, 1, 8, 2).col(0)});
  for (int trial = 0; trial < 20; ++trial) {
    const Vec mu = random_simplex_point(6, rng);
    double expected = 0.0;
    for (int i = 0; i < 2; ++i) {
      double total = 0.0;
      for (int rec = 0; rec < g.num_actions(i); ++rec) {
        double best = 0.0;
        for (int dev = 0; dev < g.num_actions(i); ++dev) {
          double b = 0.0;
          for (int k = 0; k < 6; ++k) {
            const auto a = g.decode(k);
            if (a[i] != rec) continue;
            auto swapped = a;
            swapped[i] = dev;
            b += mu[k] * (g.utility(i, g.encode(swapped)) - g.utility(i, k));
          }
          best = std::max(best, b);
        }
        total += best;
      }
      expected = std::max(expected, total);
    }
    EXPECT_NEAR(ce_gap(g, mu), expected, 1e-13);
  }
}

TEST(PathLength, CauchySchwarz) {
  const Trace tr = run_dynamics(gen_drift_powerlaw(random_matrix(5, 5, 2, 0), random_matrix(5, 5, 2, 1), 1.0, 100),
                                {LearnerSpec::ogd(0.05), LearnerSpec::ogd(0.05)});
  const PathLengths p = path_lengths(tr);
  // Each round contributes two terms per player.
  EXPECT_LE(p.first_order * p.first_order, 2.0 * 2.0 * tr.length() * p.second_order + 1e-12);
  const PathLengths px = path_lengths(tr, 0), py = path_lengths(tr, 1);
  EXPECT_NEAR(px.second_order + py.second_order, p.second_order, 1e-12);
  EXPECT_NEAR(running_second_order(tr).back(), p.second_order, 1e-12);
}

TEST(IterationsToEps, BlockCounting) {
  const std::vector<double> gaps{1.0, 0.5, 0.01, 0.2, 0.001, 0.5, 0.5};
  const std::vector<int> blocks{1, 1, 1, 2, 2, 3, 3};
  EXPECT_EQ(iterations_to_eps(gaps, blocks, 0.05), (std::vector<int>{3, 2, 3}));
  EXPECT_THROW(iterations_to_eps(gaps, std::vector<int>{1}, 0.1), std::invalid_argument);
}

}  // namespace
}  // namespace tvg
