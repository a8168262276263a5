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

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace tvg {

namespace {

void check_player(const Trace& trace, int player) {
  if (trace.rounds.empty()) throw std::invalid_argument("metrics: empty trace");
  if (player < 0 || player >= static_cast<int>(trace.rounds.front().players.size())) {
    throw std::out_of_range("metrics: player index out of range");
  }
}

}  // namespace

double external_regret(const Trace& trace, int player) {
  return running_external_regret(trace, player).back();
}

std::vector<double> running_external_regret(const Trace& trace, int player) {
  check_player(trace, player);
  std::vector<double> out;
  out.reserve(trace.length());
  Vec cum = Vec::Zero(trace.at(1, player).u.size());
  double played = 0.0;
  for (const Round& r : trace.rounds) {
    const PlayerRound& p = r.players[player];
    cum += p.u;
    played += p.x.dot(p.u);
    out.push_back(cum.maxCoeff() - played);
  }
  return out;
}

double dynamic_regret(const Trace& trace, int player, const std::vector<Vec>& comparators) {
  check_player(trace, player);
  if (static_cast<int>(comparators.size()) != trace.length()) {
    throw std::invalid_argument("dynamic_regret: comparator sequence length != T");
  }
  double total = 0.0;
  for (int t = 1; t <= trace.length(); ++t) {
    const PlayerRound& p = trace.at(t, player);
    total += (comparators[t - 1] - p.x).dot(p.u);
  }
  return total;
}

double best_response_gap(const Vec& u, const Vec& x) { return u.maxCoeff() - x.dot(u); }

double max_dynamic_regret(const Trace& trace, int player) {
  return running_max_dynamic_regret(trace, player).back();
}

std::vector<double> running_max_dynamic_regret(const Trace& trace, int player) {
  check_player(trace, player);
  std::vector<double> out;
  double total = 0.0;
  for (const Round& r : trace.rounds) {
    total += best_response_gap(r.players[player].u, r.players[player].x);
    out.push_back(total);
  }
  return out;
}

double k_switch_dreg(const std::vector<Vec>& utilities, const std::vector<Vec>& plays, int K) {
  if (K < 1) throw std::invalid_argument("k_switch_dreg: K must be >= 1");
  const int T = static_cast<int>(utilities.size());
  if (T == 0 || plays.size() != utilities.size()) {
    throw std::invalid_argument("k_switch_dreg: utilities and plays must be non-empty and aligned");
  }
  const int S = std::min(K, T) - 1;
  const int d = static_cast<int>(utilities.front().size());
  // best[s][a]: best comparator value so far ending at action a with at most
  // s switches.
  std::vector<Vec> best(S + 1, utilities.front());
  double played = plays.front().dot(utilities.front());
  std::vector<double> top(S + 1);
  for (int t = 1; t < T; ++t) {
    const Vec& u = utilities[t];
    if (u.size() != d) throw std::invalid_argument("k_switch_dreg: dimension mismatch");
    for (int s = 0; s <= S; ++s) top[s] = best[s].maxCoeff();
    for (int s = S; s >= 0; --s) {
      for (int a = 0; a < d; ++a) {
        double stay = best[s][a];
        if (s > 0) stay = std::max(stay, top[s - 1]);
        best[s][a] = stay + u[a];
      }
    }
    played += plays[t].dot(u);
  }
  return best[S].maxCoeff() - played;
}

double k_switch_dreg(const Trace& trace, int player, int K) {
  check_player(trace, player);
  std::vector<Vec> us, xs;
  us.reserve(trace.length());
  xs.reserve(trace.length());
  for (const Round& r : trace.rounds) {
    us.push_back(r.players[player].u);
    xs.push_back(r.players[player].x);
  }
  return k_switch_dreg(us, xs, K);
}

double eq_gap_zero_sum(const MatrixGame& game, const Vec& x, const Vec& y) {
  const Vec ux = -(game.A * y);
  const Vec uy = game.A.transpose() * x;
  return std::max(best_response_gap(ux, x), best_response_gap(uy, y));
}

double eq_gap_identical_interest(const IdenticalInterestGame& game, const Vec& x, const Vec& y) {
  const Vec ux = game.A * y;
  const Vec uy = game.A.transpose() * x;
  return std::max(best_response_gap(ux, x), best_response_gap(uy, y));
}

double eq_gap_normal_form(const NormalFormGame& game, const std::vector<Vec>& profile) {
  if (game.num_players() > 4) {
    throw std::invalid_argument("eq_gap_normal_form: more than 4 players is not supported");
  }
  double gap = 0.0;
  for (int i = 0; i < game.num_players(); ++i) {
    gap = std::max(gap, best_response_gap(game.action_values(i, profile), profile[i]));
  }
  return gap;
}

double eq_gap_normal_form(const PolymatrixGame& game, const std::vector<Vec>& profile) {
  double gap = 0.0;
  for (int i = 0; i < game.num_players(); ++i) {
    gap = std::max(gap, best_response_gap(game.utility_gradient(i, profile), profile[i]));
  }
  return gap;
}

SaddleBestResponses saddle_best_responses(const QuadraticSaddle& g, const Vec& x, const Vec& y) {
  SaddleBestResponses br;
  const Vec ay = g.A * y;
  const Vec atx = g.A.transpose() * x;
  if (g.mu > 0.0) {
    br.x = project_simplex(g.x0 - ay / g.mu);
    br.y = project_simplex(g.y0 + atx / g.mu);
  } else {
    Eigen::Index ix, iy;
    ay.minCoeff(&ix);
    atx.maxCoeff(&iy);
    br.x = vertex(static_cast<int>(ay.size()), static_cast<int>(ix));
    br.y = vertex(static_cast<int>(atx.size()), static_cast<int>(iy));
  }
  return br;
}

double eq_gap_normal_form(const QuadraticSaddle& game, const std::vector<Vec>& profile) {
  const Vec& x = profile.at(0);
  const Vec& y = profile.at(1);
  const SaddleBestResponses br = saddle_best_responses(game, x, y);
  const double f = game.value(x, y);
  const double gap_x = f - game.value(br.x, y);
  const double gap_y = game.value(x, br.y) - f;
  return std::max({0.0, gap_x, gap_y});
}

double eq_gap(const Game& game, const std::vector<Vec>& profile) {
  switch (kind_of(game)) {
    case GameKind::kZeroSum:
      return eq_gap_zero_sum(std::get<MatrixGame>(game), profile.at(0), profile.at(1));
    case GameKind::kIdenticalInterest:
      return eq_gap_identical_interest(std::get<IdenticalInterestGame>(game), profile.at(0),
                                       profile.at(1));
    case GameKind::kPolymatrix:
      return eq_gap_normal_form(std::get<PolymatrixGame>(game), profile);
    case GameKind::kSaddle:
      return eq_gap_normal_form(std::get<QuadraticSaddle>(game), profile);
    case GameKind::kNormalForm:
      return eq_gap_normal_form(std::get<NormalFormGame>(game), profile);
  }
  return 0.0;
}

double ce_gap(const NormalFormGame& game, const Vec& mu) {
  if (mu.size() != game.num_profiles()) {
    throw std::invalid_argument("ce_gap: distribution size != number of profiles");
  }
  double gap = 0.0;
  for (int i = 0; i < game.num_players(); ++i) {
    const int ni = game.num_actions(i);
    // benefit(rec, dev) = sum over profiles recommending rec of the swap gain.
    Mat benefit = Mat::Zero(ni, ni);
    for (int k = 0; k < game.num_profiles(); ++k) {
      if (mu[k] == 0.0) continue;
      const int rec = game.action_of(k, i);
      const double base = game.utility(i, k);
      for (int dev = 0; dev < ni; ++dev) {
        benefit(rec, dev) += mu[k] * (game.utility(i, game.with_action(k, i, dev)) - base);
      }
    }
    double total = 0.0;
    for (int rec = 0; rec < ni; ++rec) total += std::max(0.0, benefit.row(rec).maxCoeff());
    gap = std::max(gap, total);
  }
  return gap;
}

PathLengths path_lengths(const Trace& trace, std::optional<int> player) {
  if (player) check_player(trace, *player);
  PathLengths out;
  for (const Round& r : trace.rounds) {
    double a = 0.0, b = 0.0;
    for (int i = 0; i < static_cast<int>(r.players.size()); ++i) {
      if (player && i != *player) continue;
      const PlayerRound& p = r.players[i];
      a += (p.x - p.x_hat).squaredNorm();
      b += (p.x - p.x_hat_next).squaredNorm();
    }
    out.second_order += a + b;
    out.first_order += std::sqrt(a) + std::sqrt(b);
  }
  return out;
}

std::vector<double> running_second_order(const Trace& trace) {
  std::vector<double> out;
  double total = 0.0;
  for (const Round& r : trace.rounds) {
    for (const PlayerRound& p : r.players) {
      total += (p.x - p.x_hat).squaredNorm() + (p.x - p.x_hat_next).squaredNorm();
    }
    out.push_back(total);
  }
  return out;
}

std::vector<double> eq_gap_series(const Trace& trace, const GameSequence& seq) {
  std::vector<double> out;
  out.reserve(trace.length());
  int last_index = -1;
  Game game;
  for (int t = 1; t <= trace.length(); ++t) {
    if (seq.game_index(t) != last_index) {
      game = seq.game_at(t);
      last_index = seq.game_index(t);
    }
    out.push_back(eq_gap(game, trace.profile(t)));
  }
  return out;
}

std::vector<int> iterations_to_eps(const std::vector<double>& gaps, const std::vector<int>& blocks,
                                   double eps) {
  if (gaps.size() != blocks.size()) {
    throw std::invalid_argument("iterations_to_eps: gaps and block labels must be aligned");
  }
  std::vector<int> out;
  int pos = 0, found = 0;
  for (std::size_t t = 0; t < gaps.size(); ++t) {
    if (t == 0 || blocks[t] != blocks[t - 1]) {
      if (t > 0) out.push_back(found ? found : pos + 1);
      pos = 0;
      found = 0;
    }
    ++pos;
    if (!found && gaps[t] <= eps) found = pos;
  }
  if (!gaps.empty()) out.push_back(found ? found : pos + 1);
  return out;
}

std::vector<int> iterations_to_eps(const Trace& trace, const GameSequence& seq, double eps) {
  std::vector<int> blocks;
  blocks.reserve(trace.length());
  for (int t = 1; t <= trace.length(); ++t) blocks.push_back(seq.game_index(t));
  return iterations_to_eps(eq_gap_series(trace, seq), blocks, eps);
}

}  // namespace tvg
