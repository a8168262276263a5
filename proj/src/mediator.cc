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


#include "tvg/mediator.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <sstream>
#include <stdexcept>

#include "tvg/equilibrium.h"
#include "tvg/metrics.h"

namespace tvg {

using nlohmann::json;

namespace {

int int_pow(int base, int exp) {
  int out = 1;
  for (int i = 0; i < exp; ++i) out *= base;
  return out;
}

void check_schedule(const std::vector<NormalFormGame>& games, const std::vector<int>& schedule) {
  if (games.empty()) throw std::invalid_argument("solve_ce: no games");
  if (schedule.empty()) throw std::invalid_argument("solve_ce: empty schedule");
  for (int g : schedule) {
    if (g < 0 || g >= static_cast<int>(games.size())) {
      throw std::out_of_range("solve_ce: schedule refers to a missing game");
    }
  }
  for (const NormalFormGame& g : games) {
    if (g.action_counts() != games.front().action_counts()) {
      throw std::invalid_argument("solve_ce: all games must share action counts");
    }
  }
}

}  // namespace

std::vector<int> deviation_map(int num_actions, int column) {
  if (num_actions < 1) throw std::invalid_argument("deviation_map: num_actions must be >= 1");
  if (column < 0 || column >= int_pow(num_actions, num_actions)) {
    throw std::out_of_range("deviation_map: column out of range");
  }
  std::vector<int> map(num_actions);
  for (int a = 0; a < num_actions; ++a) {
    map[a] = column % num_actions;
    column /= num_actions;
  }
  return map;
}

int deviation_column(const std::vector<int>& map) {
  const int k = static_cast<int>(map.size());
  int column = 0;
  for (int a = k - 1; a >= 0; --a) {
    if (map[a] < 0 || map[a] >= k) throw std::out_of_range("deviation_column: entry out of range");
    column = column * k + map[a];
  }
  return column;
}

int direct_column(int num_actions) {
  std::vector<int> id(num_actions);
  for (int a = 0; a < num_actions; ++a) id[a] = a;
  return deviation_column(id);
}

MediatorGame build_mediator_game(const NormalFormGame& g) {
  if (g.num_players() > kMediatorMaxPlayers) {
    throw std::invalid_argument("build_mediator_game: at most " +
                                std::to_string(kMediatorMaxPlayers) +
                                " players (deviation maps grow as |A_i|^|A_i|)");
  }
  for (int i = 0; i < g.num_players(); ++i) {
    if (g.num_actions(i) > kMediatorMaxActions) {
      throw std::invalid_argument("build_mediator_game: at most " +
                                  std::to_string(kMediatorMaxActions) +
                                  " actions per player (deviation maps grow as |A_i|^|A_i|)");
    }
  }
  MediatorGame out{g, {}};
  const int P = g.num_profiles();
  for (int i = 0; i < g.num_players(); ++i) {
    const int k = g.num_actions(i);
    const int cols = int_pow(k, k);
    Mat B(P, cols);
    for (int c = 0; c < cols; ++c) {
      const std::vector<int> map = deviation_map(k, c);
      for (int a = 0; a < P; ++a) {
        B(a, c) = g.utility(i, g.with_action(a, i, map[g.action_of(a, i)])) - g.utility(i, a);
      }
    }
    out.benefits.push_back(std::move(B));
  }
  return out;
}

double ce_certificate(const MediatorGame& g, const Vec& mu) {
  if (mu.size() != g.base.num_profiles()) {
    throw std::invalid_argument("ce_certificate: distribution size != number of profiles");
  }
  double eps = -std::numeric_limits<double>::infinity();
  for (const Mat& B : g.benefits) eps = std::max(eps, (B.transpose() * mu).maxCoeff());
  return eps;
}

double ce_certificate(const NormalFormGame& g, const Vec& mu) {
  return ce_certificate(build_mediator_game(g), mu);
}

PolymatrixGame mediator_polymatrix(const MediatorGame& g) {
  std::vector<int> dims{g.base.num_profiles()};
  std::vector<std::pair<std::pair<int, int>, Mat>> edges;
  for (int i = 0; i < g.num_players(); ++i) {
    dims.push_back(static_cast<int>(g.benefits[i].cols()));
    edges.push_back({{0, i + 1}, -g.benefits[i]});
  }
  return PolymatrixGame::from_edges(dims, edges);
}

double mediator_lipschitz(const MediatorGame& g) {
  double s = 0.0;
  for (const Mat& B : g.benefits) {
    const double n = spectral_norm(B);
    s += n * n;
  }
  return std::sqrt(s);
}

GameSequence mediator_sequence(const std::vector<NormalFormGame>& games,
                               const std::vector<int>& schedule) {
  check_schedule(games, schedule);
  auto polys = std::make_shared<std::vector<PolymatrixGame>>();
  for (const NormalFormGame& g : games) polys->push_back(mediator_polymatrix(build_mediator_game(g)));
  auto sched = std::make_shared<std::vector<int>>(schedule);
  // Index changes exactly when the scheduled game changes.
  auto index = std::make_shared<std::vector<int>>(schedule.size(), 1);
  for (std::size_t s = 1; s < schedule.size(); ++s) {
    (*index)[s] = (*index)[s - 1] + (schedule[s] != schedule[s - 1]);
  }
  json desc;
  desc["generator"] = "mediator";
  desc["kind"] = to_string(GameKind::kPolymatrix);
  desc["T"] = schedule.size();
  json gj = json::array();
  for (const NormalFormGame& g : games) gj.push_back(game_to_json(Game(g)));
  desc["params"] = {{"games", gj}, {"schedule", schedule}};
  return GameSequence(
      GameKind::kPolymatrix, static_cast<int>(schedule.size()),
      [polys, sched](int t) { return Game((*polys)[(*sched)[t - 1]]); },
      [index](int t) { return (*index)[t - 1]; },
      desc);
}

GameSequence mediator_sequence_from_json(const json& descriptor) {
  if (descriptor.at("generator") != "mediator") {
    throw std::invalid_argument("mediator_sequence_from_json: not a mediator descriptor");
  }
  const json& p = descriptor.at("params");
  std::vector<NormalFormGame> games;
  for (const json& g : p.at("games")) games.push_back(std::get<NormalFormGame>(game_from_json(g)));
  return mediator_sequence(games, p.at("schedule").get<std::vector<int>>());
}

json CeRun::result_json() const {
  json j;
  j["eta"] = eta;
  j["T"] = trace.length();
  j["ce_gap_last"] = gap_last.empty() ? 0.0 : gap_last.back();
  j["ce_gap_avg"] = gap_avg.empty() ? 0.0 : gap_avg.back();
  j["mediator_dreg"] = mediator_dreg.empty() ? 0.0 : mediator_dreg.back();
  json regs = json::array();
  for (const auto& r : player_regret) regs.push_back(r.empty() ? 0.0 : r.back());
  j["player_regret"] = regs;
  j["mu_avg"] = vector_to_json(mu_avg);
  j["mu_last"] = vector_to_json(trace.rounds.back().players[0].x);
  j["nonnegativity"] = nonnegativity.to_json();
  return j;
}

CeRun solve_ce(const std::vector<NormalFormGame>& games, const std::vector<int>& schedule,
               const CeOptions& options) {
  check_schedule(games, schedule);
  std::vector<MediatorGame> med;
  double L = 0.0;
  for (const NormalFormGame& g : games) {
    med.push_back(build_mediator_game(g));
    L = std::max(L, mediator_lipschitz(med.back()));
  }
  CeRun run;
  run.schedule = schedule;
  run.eta = options.eta > 0.0 ? options.eta : (L > 0.0 ? 1.0 / (4.0 * L) : 1.0);
  const int n = games.front().num_players();
  const GameSequence seq = mediator_sequence(games, schedule);
  std::vector<LearnerSpec> learners(n + 1, {Regularizer::kEuclidean, options.prediction, run.eta});
  run.trace = run_dynamics(seq, learners);

  // Exact correlated equilibria of each scheduled game.
  std::map<int, std::pair<Vec, double>> ce;
  for (int g : schedule) {
    if (ce.count(g)) continue;
    const Vec star = solve_ce_lp(games[g]);
    ce[g] = {star, std::max(0.0, ce_certificate(med[g], star))};
  }

  const int T = run.trace.length();
  run.player_regret.assign(n, {});
  for (int i = 0; i < n; ++i) run.player_regret[i] = running_external_regret(run.trace, i + 1);
  Vec avg = Vec::Zero(games.front().num_profiles());
  int count = 0;
  double dreg = 0.0;
  for (int t = 1; t <= T; ++t) {
    const int g = schedule[t - 1];
    if (options.reset_average_on_switch && t > 1 && g != schedule[t - 2]) {
      avg.setZero();
      count = 0;
    }
    const PlayerRound& mp = run.trace.at(t, 0);
    ++count;
    avg += (mp.x - avg) / count;
    run.gap_last.push_back(ce_gap(games[g], mp.x));
    run.gap_avg.push_back(ce_gap(games[g], avg));
    const Vec& star = ce[g].first;
    dreg += (star - mp.x).dot(mp.u);
    run.mediator_dreg.push_back(dreg);
    run.ce_comparators.push_back(star);
    run.certificate_slack += n * ce[g].second;
  }
  run.mu_avg = avg;
  run.nonnegativity = check_mediator_nonnegativity(run.trace, run.ce_comparators, run.certificate_slack);
  return run;
}

CeRun solve_ce(const NormalFormGame& game, int T, const CeOptions& options) {
  if (T < 1) throw std::invalid_argument("solve_ce: T must be >= 1");
  return solve_ce(std::vector<NormalFormGame>{game}, std::vector<int>(T, 0), options);
}

MetaCeResult run_metalearning_ce(const std::vector<NormalFormGame>& games, int m, double eps,
                                 const CeOptions& options) {
  if (m < 1) throw std::invalid_argument("run_metalearning_ce: m must be >= 1");
  std::vector<int> schedule;
  for (int h = 0; h < static_cast<int>(games.size()); ++h) schedule.insert(schedule.end(), m, h);
  CeOptions opts = options;
  opts.reset_average_on_switch = true;
  MetaCeResult out;
  out.run = solve_ce(games, schedule, opts);
  std::vector<int> blocks(schedule.begin(), schedule.end());
  out.iterations = iterations_to_eps(out.run.gap_last, blocks, eps);
  for (int h = 0; h < static_cast<int>(games.size()); ++h) {
    Vec avg = Vec::Zero(games.front().num_profiles());
    for (int t = h * m + 1; t <= (h + 1) * m; ++t) avg += out.run.trace.at(t, 0).x;
    out.block_averages.push_back(avg / m);
  }
  for (std::size_t h = 1; h < out.block_averages.size(); ++h) {
    out.similarity += (out.block_averages[h] - out.block_averages[h - 1]).norm();
  }
  return out;
}

}  // namespace tvg
