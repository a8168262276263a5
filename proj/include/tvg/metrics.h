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

#ifndef TVG_METRICS_H_
#define TVG_METRICS_H_

#include <optional>
#include <vector>

#include "tvg/dynamics.h"
#include "tvg/games.h"

namespace tvg {

// Regrets are computed from the utility vectors stored in the trace, so they
// apply to any game whose per-player utility is linear in its own strategy.
double external_regret(const Trace& trace, int player);
// External regret of rounds 1..t for every t.
std::vector<double> running_external_regret(const Trace& trace, int player);
double dynamic_regret(const Trace& trace, int player, const std::vector<Vec>& comparators);
double max_dynamic_regret(const Trace& trace, int player);
std::vector<double> running_max_dynamic_regret(const Trace& trace, int player);
// Dynamic regret against the best comparator sequence with at most K - 1
// switches. K > T is treated as K = T.
double k_switch_dreg(const Trace& trace, int player, int K);
double k_switch_dreg(const std::vector<Vec>& utilities, const std::vector<Vec>& plays, int K);

// max_a u_a - <x, u>.
double best_response_gap(const Vec& u, const Vec& x);

double eq_gap_zero_sum(const MatrixGame& game, const Vec& x, const Vec& y);
double eq_gap_identical_interest(const IdenticalInterestGame& game, const Vec& x, const Vec& y);
double eq_gap_normal_form(const NormalFormGame& game, const std::vector<Vec>& profile);
double eq_gap_normal_form(const PolymatrixGame& game, const std::vector<Vec>& profile);
double eq_gap_normal_form(const QuadraticSaddle& game, const std::vector<Vec>& profile);
double eq_gap(const Game& game, const std::vector<Vec>& profile);

struct SaddleBestResponses {
  Vec x;  // minimizer of f(., y)
  Vec y;  // maximizer of f(x, .)
};
SaddleBestResponses saddle_best_responses(const QuadraticSaddle& g, const Vec& x, const Vec& y);

// Max over players of sum over recommendations of the best swap benefit.
double ce_gap(const NormalFormGame& game, const Vec& mu);

struct PathLengths {
  double first_order = 0.0;
  double second_order = 0.0;
};
// Joint path lengths when player is empty.
PathLengths path_lengths(const Trace& trace, std::optional<int> player = std::nullopt);
// Second-order joint path length of rounds 1..t for every t.
std::vector<double> running_second_order(const Trace& trace);

// Equilibrium gap of the played profile in every round.
std::vector<double> eq_gap_series(const Trace& trace, const GameSequence& seq);

// For every block of equal game index, the first within-block round whose
// eq gap is at most eps, or block length + 1 if none.
std::vector<int> iterations_to_eps(const Trace& trace, const GameSequence& seq, double eps);
// Same from a precomputed gap series and block labels.
std::vector<int> iterations_to_eps(const std::vector<double>& gaps, const std::vector<int>& blocks,
                                   double eps);

}  // namespace tvg

#endif  // TVG_METRICS_H_
