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

#include "tvg/dynamics.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace tvg {

std::string to_string(PredictionMode p) {
  switch (p) {
    case PredictionMode::kZero: return "zero";
    case PredictionMode::kLastUtility: return "last_utility";
    case PredictionMode::kCurrentGame: return "current_game";
  }
  return "unknown";
}

PredictionMode prediction_from_string(const std::string& s) {
  if (s == "zero") return PredictionMode::kZero;
  if (s == "last_utility") return PredictionMode::kLastUtility;
  if (s == "current_game") return PredictionMode::kCurrentGame;
  throw std::invalid_argument("unknown prediction mode: " + s);
}

LearnerSpec LearnerSpec::from_name(const std::string& name, double eta) {
  if (name == "ogd") return ogd(eta);
  if (name == "gd") return gd(eta);
  if (name == "mwu") return mwu(eta);
  if (name == "omwu") return omwu(eta);
  if (name == "ogd+") return {Regularizer::kEuclidean, PredictionMode::kCurrentGame, eta};
  const std::string prefix = "omd[";
  if (name.rfind(prefix, 0) == 0 && name.back() == ']') {
    const std::string body = name.substr(prefix.size(), name.size() - prefix.size() - 1);
    const auto comma = body.find(',');
    if (comma == std::string::npos) throw std::invalid_argument("bad learner name: " + name);
    return {regularizer_from_string(body.substr(0, comma)),
            prediction_from_string(body.substr(comma + 1)), eta};
  }
  throw std::invalid_argument("unknown learner: " + name);
}

std::string LearnerSpec::name() const {
  if (regularizer == Regularizer::kEuclidean) {
    if (prediction == PredictionMode::kLastUtility) return "ogd";
    if (prediction == PredictionMode::kZero) return "gd";
    return "ogd+";
  }
  if (prediction == PredictionMode::kZero) return "mwu";
  if (prediction == PredictionMode::kLastUtility) return "omwu";
  return "omd[" + to_string(regularizer) + "," + to_string(prediction) + "]";
}

LearnerState initial_state(int d, double eta) {
  if (!(eta > 0.0)) throw std::invalid_argument("learner step size must be > 0");
  LearnerState s;
  s.x_hat = uniform_point(d);
  s.m = Vec::Zero(d);
  s.x = s.x_hat;
  s.eta = eta;
  return s;
}

Vec ogd_propose(const LearnerState& s) { return project_simplex(s.x_hat + s.eta * s.m); }

LearnerState ogd_update(const LearnerState& s, const Vec& u, const Vec& next_m) {
  return omd_update(Regularizer::kEuclidean, s, u, next_m);
}

Vec mwu_update(const Vec& x, const Vec& u, double eta) {
  if (!u.allFinite()) throw std::invalid_argument("mwu_update: non-finite utility");
  return prox_step(Regularizer::kNegativeEntropy, x, u, eta);
}

Vec omd_propose(Regularizer reg, const LearnerState& s) {
  return prox_step(reg, s.x_hat, s.m, s.eta);
}

LearnerState omd_update(Regularizer reg, const LearnerState& s, const Vec& u, const Vec& next_m) {
  if (!u.allFinite()) throw std::invalid_argument("learner update: non-finite utility");
  if (!next_m.allFinite()) throw std::invalid_argument("learner update: non-finite prediction");
  if (u.size() != s.x_hat.size() || next_m.size() != s.x_hat.size()) {
    throw std::invalid_argument("learner update: dimension mismatch");
  }
  LearnerState n;
  n.eta = s.eta;
  n.x_hat = prox_step(reg, s.x_hat, u, s.eta);
  n.m = next_m;
  n.x = omd_propose(reg, n);
  return n;
}

std::vector<Vec> Trace::profile(int t) const {
  std::vector<Vec> z;
  if (t == length() + 1) {
    for (const PlayerRound& p : rounds.back().players) z.push_back(p.x_hat_next);
    return z;
  }
  for (const PlayerRound& p : rounds.at(t - 1).players) z.push_back(p.x);
  return z;
}

Trace run_dynamics(const GameSequence& seq, const std::vector<LearnerSpec>& learners,
                   std::optional<int> T_opt) {
  const int T = T_opt.value_or(seq.length());
  if (T < 1 || T > seq.length()) throw std::invalid_argument("run_dynamics: T out of range");
  const std::vector<int> dims = seq.dims();
  const int n = static_cast<int>(dims.size());
  if (static_cast<int>(learners.size()) != n) {
    throw std::invalid_argument("run_dynamics: learner count does not match player count");
  }

  Trace trace;
  trace.learners = learners;
  trace.sequence = seq.descriptor();
  trace.rounds.reserve(T);

  std::vector<LearnerState> state;
  for (int i = 0; i < n; ++i) state.push_back(initial_state(dims[i], learners[i].eta));
  std::vector<Vec> prev_profile;
  for (const LearnerState& s : state) prev_profile.push_back(s.x_hat);
  std::vector<Vec> last_u(n);

  for (int t = 1; t <= T; ++t) {
    const Game game = seq.game_at(t);
    std::vector<Vec> current_game_pred;
    for (int i = 0; i < n; ++i) {
      if (learners[i].prediction == PredictionMode::kCurrentGame) {
        current_game_pred = utilities(game, prev_profile);
        break;
      }
    }
    std::vector<Vec> profile(n);
    for (int i = 0; i < n; ++i) {
      switch (learners[i].prediction) {
        case PredictionMode::kZero: state[i].m = Vec::Zero(dims[i]); break;
        case PredictionMode::kLastUtility:
          state[i].m = t == 1 ? Vec::Zero(dims[i]) : last_u[i];
          break;
        case PredictionMode::kCurrentGame: state[i].m = current_game_pred[i]; break;
      }
      state[i].x = omd_propose(learners[i].regularizer, state[i]);
      profile[i] = state[i].x;
    }
    const std::vector<Vec> u = utilities(game, profile);

    Round round;
    round.t = t;
    round.game_index = seq.game_index(t);
    round.players.resize(n);
    for (int i = 0; i < n; ++i) {
      PlayerRound& rec = round.players[i];
      rec.x = state[i].x;
      rec.x_hat = state[i].x_hat;
      rec.m = state[i].m;
      rec.u = u[i];
      state[i] = omd_update(learners[i].regularizer, state[i], u[i], Vec::Zero(dims[i]));
      rec.x_hat_next = state[i].x_hat;
      last_u[i] = u[i];
    }
    prev_profile = std::move(profile);
    trace.rounds.push_back(std::move(round));
  }
  return trace;
}

Trace run_averaged_two_point(const MatrixGame& game, double eta, int T,
                             std::optional<std::pair<Vec, Vec>> init) {
  if (T < 1) throw std::invalid_argument("run_averaged_two_point: T must be >= 1");
  const Mat& A = game.A;
  const int dx = static_cast<int>(A.rows());
  const int dy = static_cast<int>(A.cols());
  LearnerState sx = initial_state(dx, eta);
  LearnerState sy = initial_state(dy, eta);
  if (init) {
    check_simplex_point(init->first, 1e-9, "initial x");
    check_simplex_point(init->second, 1e-9, "initial y");
    sx.x_hat = init->first;
    sy.x_hat = init->second;
  }
  Trace trace;
  trace.learners = {LearnerSpec::ogd(eta), LearnerSpec::ogd(eta)};
  trace.sequence = constant_sequence(game, T).descriptor();
  trace.sequence["params"]["two_point"] = true;
  trace.rounds.reserve(T);

  Vec sum_x = Vec::Zero(dx);
  Vec sum_y = Vec::Zero(dy);
  Vec ux_prev = Vec::Zero(dx);
  Vec uy_prev = Vec::Zero(dy);
  for (int t = 1; t <= T; ++t) {
    sx.m = ux_prev;
    sy.m = uy_prev;
    sx.x = ogd_propose(sx);
    sy.x = ogd_propose(sy);
    sum_x += sx.x;
    sum_y += sy.x;
    const Vec px = sum_x / t;
    const Vec py = sum_y / t;
    const Vec aux_ux = -(A * sy.x);
    const Vec aux_uy = A.transpose() * sx.x;

    Round round;
    round.t = t;
    round.game_index = 1;
    round.players.resize(2);
    PlayerRound& rx = round.players[0];
    PlayerRound& ry = round.players[1];
    rx.x = px;
    ry.x = py;
    rx.u = -(A * py);
    ry.u = A.transpose() * px;
    rx.x_hat = sx.x_hat;
    ry.x_hat = sy.x_hat;
    rx.m = sx.m;
    ry.m = sy.m;
    rx.aux = sx.x;
    ry.aux = sy.x;
    rx.aux_u = aux_ux;
    ry.aux_u = aux_uy;
    sx = ogd_update(sx, aux_ux, Vec::Zero(dx));
    sy = ogd_update(sy, aux_uy, Vec::Zero(dy));
    rx.x_hat_next = sx.x_hat;
    ry.x_hat_next = sy.x_hat;
    ux_prev = aux_ux;
    uy_prev = aux_uy;
    trace.rounds.push_back(std::move(round));
  }
  return trace;
}

double operator_lipschitz(const GameSequence& seq) {
  double L = 0.0;
  int last_index = -1;
  for (int t = 1; t <= seq.length(); ++t) {
    const int idx = seq.game_index(t);
    if (idx == last_index) continue;
    last_index = idx;
    const Game g = seq.game_at(t);
    switch (kind_of(g)) {
      case GameKind::kZeroSum:
        L = std::max(L, spectral_norm(std::get<MatrixGame>(g).A));
        break;
      case GameKind::kIdenticalInterest:
        L = std::max(L, spectral_norm(std::get<IdenticalInterestGame>(g).A));
        break;
      case GameKind::kPolymatrix:
        L = std::max(L, spectral_norm(std::get<PolymatrixGame>(g).joint_operator()));
        break;
      case GameKind::kSaddle: {
        const auto& s = std::get<QuadraticSaddle>(g);
        const double a = spectral_norm(s.A);
        L = std::max(L, std::sqrt(a * a + s.mu * s.mu));
        break;
      }
      case GameKind::kNormalForm:
        throw std::invalid_argument("operator_lipschitz: not defined for normal-form sequences");
    }
  }
  return L;
}

double default_eta(const GameSequence& seq) {
  const double L = operator_lipschitz(seq);
  if (L == 0.0) return 1.0;
  return 1.0 / (4.0 * L);
}

}  // namespace tvg
