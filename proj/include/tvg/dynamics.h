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

#ifndef TVG_DYNAMICS_H_
#define TVG_DYNAMICS_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "tvg/geometry.h"
#include "tvg/sequences.h"

namespace tvg {

enum class PredictionMode {
  kZero,         // plain (non-optimistic) descent
  kLastUtility,  // m^(t) = u^(t-1), m^(1) = 0
  kCurrentGame,  // round-t game evaluated at the previous joint profile
};

std::string to_string(PredictionMode p);
PredictionMode prediction_from_string(const std::string& s);

struct LearnerSpec {
  Regularizer regularizer = Regularizer::kEuclidean;
  PredictionMode prediction = PredictionMode::kLastUtility;
  double eta = 0.1;

  static LearnerSpec ogd(double eta) { return {Regularizer::kEuclidean, PredictionMode::kLastUtility, eta}; }
  static LearnerSpec gd(double eta) { return {Regularizer::kEuclidean, PredictionMode::kZero, eta}; }
  static LearnerSpec mwu(double eta) { return {Regularizer::kNegativeEntropy, PredictionMode::kZero, eta}; }
  static LearnerSpec omwu(double eta) {
    return {Regularizer::kNegativeEntropy, PredictionMode::kLastUtility, eta};
  }
  static LearnerSpec from_name(const std::string& name, double eta);

  // "ogd", "gd", "mwu", "omwu", or "omd[<reg>,<prediction>]".
  std::string name() const;
};

struct LearnerState {
  Vec x;
  Vec x_hat;
  Vec m;
  double eta = 0.1;
};

LearnerState initial_state(int d, double eta);

// x = Proj(x_hat + eta m).
Vec ogd_propose(const LearnerState& s);
// x_hat' = Proj(x_hat + eta u), m' = next_m, x' = ogd_propose(new state).
LearnerState ogd_update(const LearnerState& s, const Vec& u, const Vec& next_m);
// x' proportional to x exp(eta u).
Vec mwu_update(const Vec& x, const Vec& u, double eta);

// Same two-step update under an arbitrary regularizer.
Vec omd_propose(Regularizer reg, const LearnerState& s);
LearnerState omd_update(Regularizer reg, const LearnerState& s, const Vec& u, const Vec& next_m);

struct PlayerRound {
  Vec x;
  Vec x_hat;
  Vec x_hat_next;
  Vec m;
  Vec u;
  // Averaged two-point play only: inner iterate and its utility.
  Vec aux;
  Vec aux_u;
};

struct Round {
  int t = 0;
  int game_index = 0;
  std::vector<PlayerRound> players;
};

struct Trace {
  std::vector<LearnerSpec> learners;
  nlohmann::json sequence;
  std::uint64_t seed = 0;
  std::vector<Round> rounds;

  int length() const { return static_cast<int>(rounds.size()); }
  int num_players() const { return static_cast<int>(learners.size()); }
  const PlayerRound& at(int t, int player) const { return rounds.at(t - 1).players.at(player); }
  // x^(t) for t in 1..T+1; round T+1 is proposed from x_hat^(T+1) with m = 0
  // and is only used by metrics that need the next iterate of GD.
  std::vector<Vec> profile(int t) const;
};

// Simultaneous-move driver. T defaults to the sequence length.
Trace run_dynamics(const GameSequence& seq, const std::vector<LearnerSpec>& learners,
                   std::optional<int> T = std::nullopt);

// Played strategy is the running average of an inner optimistic learner that
// is driven by utilities at its own iterates.
Trace run_averaged_two_point(const MatrixGame& game, double eta, int T,
                             std::optional<std::pair<Vec, Vec>> init = std::nullopt);

// max_t |M^(t)|_2 of the joint utility operator (|A^(t)|_2 for bilinear games).
double operator_lipschitz(const GameSequence& seq);
// 1 / (4 L) with L from operator_lipschitz.
double default_eta(const GameSequence& seq);

// Long-format trace CSV: t,player,game_index,field,values.
void write_trace_csv(const Trace& trace, const std::string& path);
Trace read_trace_csv(const std::string& path);
nlohmann::json trace_envelope(const Trace& trace);
void apply_envelope(const nlohmann::json& envelope, Trace& trace);

}  // namespace tvg

#endif  // TVG_DYNAMICS_H_
