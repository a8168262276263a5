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


#ifndef TVG_MEDIATOR_H_
#define TVG_MEDIATOR_H_

#include <vector>

#include "json.hpp"
#include "tvg/checks.h"
#include "tvg/dynamics.h"
#include "tvg/games.h"

namespace tvg {

inline constexpr int kMediatorMaxPlayers = 3;
inline constexpr int kMediatorMaxActions = 4;

// Deviation map of a player with k actions stored as a column index: the
// replacement for recommendation a is digit a of the column in base k.
std::vector<int> deviation_map(int num_actions, int column);
int deviation_column(const std::vector<int>& map);
// Column of the identity (direct) map.
int direct_column(int num_actions);

// Per-player deviation benefit matrices. Row a is a joint profile, column phi a
// deviation map, entry u_i(phi(a_i), a_-i) - u_i(a).
struct MediatorGame {
  NormalFormGame base;
  std::vector<Mat> benefits;

  int num_players() const { return base.num_players(); }
};

MediatorGame build_mediator_game(const NormalFormGame& g);

// max over players and deviation maps of mu^T benefits_i e_phi.
double ce_certificate(const MediatorGame& g, const Vec& mu);
double ce_certificate(const NormalFormGame& g, const Vec& mu);

// Star polymatrix game with the mediator as player 0: the mediator receives
// -sum_i benefits_i x_i and player i receives benefits_i^T mu.
PolymatrixGame mediator_polymatrix(const MediatorGame& g);
// sqrt(sum_i |benefits_i|_2^2).
double mediator_lipschitz(const MediatorGame& g);

struct CeOptions {
  double eta = 0.0;  // 0 selects 1/(4L) with L the largest mediator_lipschitz
  PredictionMode prediction = PredictionMode::kLastUtility;
  // Restart the running average of mu whenever the scheduled game changes.
  bool reset_average_on_switch = false;
};

struct CeRun {
  Trace trace;  // player 0 is the mediator
  double eta = 0.0;
  std::vector<int> schedule;  // game used in each round (0-based)
  std::vector<double> gap_last;
  std::vector<double> gap_avg;
  std::vector<double> mediator_dreg;              // running, against ce_comparators
  std::vector<std::vector<double>> player_regret;  // running external regret per player
  std::vector<Vec> ce_comparators;                 // per round
  double certificate_slack = 0.0;
  Vec mu_avg;  // final running average
  CheckResult nonnegativity;

  nlohmann::json result_json() const;
};

// Mediator and players run optimistic gradient descent on the bilinear
// correlated equilibrium problem; round t uses games[schedule[t-1]].
CeRun solve_ce(const std::vector<NormalFormGame>& games, const std::vector<int>& schedule,
               const CeOptions& options = {});
CeRun solve_ce(const NormalFormGame& game, int T, const CeOptions& options = {});

struct MetaCeResult {
  CeRun run;
  std::vector<int> iterations;     // per block, first round with ce_gap(mu) <= eps
  std::vector<Vec> block_averages;  // average mu over each block
  double similarity = 0.0;          // sum_h |avg_{h+1} - avg_h|_2
};

// H blocks of m rounds; block h plays games[h].
MetaCeResult run_metalearning_ce(const std::vector<NormalFormGame>& games, int m, double eps,
                                 const CeOptions& options = {});

// Game sequence equivalent to a schedule, for descriptors and checkers.
GameSequence mediator_sequence(const std::vector<NormalFormGame>& games,
                               const std::vector<int>& schedule);
GameSequence mediator_sequence_from_json(const nlohmann::json& descriptor);

}  // namespace tvg

#endif  // TVG_MEDIATOR_H_
