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

#include "tvg/checks.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "tvg/metrics.h"

namespace tvg {

namespace {

constexpr double kRelStepTol = 1e-12;

CheckResult not_applicable(std::string name, std::string note, int player = -1) {
  CheckResult r;
  r.name = std::move(name);
  r.player = player;
  r.applicable = false;
  r.note = std::move(note);
  return r;
}

bool all_learners(const Trace& trace, Regularizer reg, PredictionMode pred) {
  for (const LearnerSpec& l : trace.learners) {
    if (l.regularizer != reg || l.prediction != pred) return false;
  }
  return true;
}

bool all_euclidean(const Trace& trace) {
  for (const LearnerSpec& l : trace.learners) {
    if (l.regularizer != Regularizer::kEuclidean) return false;
  }
  return true;
}

bool all_eta(const Trace& trace, double eta) {
  for (const LearnerSpec& l : trace.learners) {
    if (std::abs(l.eta - eta) > kRelStepTol * std::max(1.0, eta)) return false;
  }
  return true;
}

bool eta_at_most(double eta, double limit) { return eta <= limit * (1.0 + kRelStepTol); }

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

bool is_static(const Trace& trace) {
  for (const Round& r : trace.rounds) {
    if (r.game_index != trace.rounds.front().game_index) return false;
  }
  return true;
}

}  // namespace

nlohmann::json CheckResult::to_json() const {
  return {{"name", name},     {"player", player},         {"margin", margin},
          {"slack", slack},   {"applicable", applicable}, {"passed", passed()},
          {"note", note}};
}

BoundConstants bound_constants(const GameSequence& seq) {
  BoundConstants c;
  const std::vector<int> dims = seq.dims();
  c.L = operator_lipschitz(seq);
  c.D_Z = product_diameter(dims);
  c.Z_norm = product_max_norm(dims);
  c.n = static_cast<int>(dims.size());
  return c;
}

CheckResult check_rvu_dynamic(const Trace& trace, int player, const std::vector<Vec>& comparators,
                              double eta, Regularizer reg) {
  const int T = trace.length();
  if (T == 0) throw std::invalid_argument("check_rvu_dynamic: empty trace");
  if (static_cast<int>(comparators.size()) != T) {
    throw std::invalid_argument("check_rvu_dynamic: comparator sequence length != T");
  }
  if (!(eta > 0.0)) throw std::invalid_argument("check_rvu_dynamic: eta must be positive");
  CheckResult r;
  r.name = "rvu_dynamic";
  r.player = player;
  const double dreg = dynamic_regret(trace, player, comparators);
  double rhs = 0.0;
  if (reg == Regularizer::kEuclidean) {
    const double D = simplex_diameter(static_cast<int>(comparators.front().size()));
    double moves = 0.0;
    for (int t = 1; t < T; ++t) moves += (comparators[t] - comparators[t - 1]).norm();
    rhs = D * D / (2.0 * eta) + D * moves / eta;
    for (int t = 1; t <= T; ++t) {
      const PlayerRound& p = trace.at(t, player);
      rhs += eta * (p.u - p.m).squaredNorm();
      rhs -= ((p.x - p.x_hat).squaredNorm() + (p.x - p.x_hat_next).squaredNorm()) / (2.0 * eta);
    }
  } else {
    try {
      double breg = bregman(reg, comparators.front(), trace.at(1, player).x_hat);
      for (int t = 1; t < T; ++t) {
        const Vec& hat = trace.at(t, player).x_hat_next;
        breg += bregman(reg, comparators[t], hat) - bregman(reg, comparators[t - 1], hat);
      }
      rhs = breg / eta;
    } catch (const std::invalid_argument& e) {
      return not_applicable(r.name, std::string("bregman term undefined: ") + e.what(), player);
    }
    for (int t = 1; t <= T; ++t) {
      const PlayerRound& p = trace.at(t, player);
      const double du = (p.u - p.m).lpNorm<Eigen::Infinity>();
      const double a = (p.x - p.x_hat).lpNorm<1>();
      const double b = (p.x - p.x_hat_next).lpNorm<1>();
      rhs += eta * du * du - (a * a + b * b) / (2.0 * eta);
    }
  }
  r.margin = rhs - dreg;
  return r;
}

CheckResult check_pathlength_theorem(const Trace& trace, const VariationReport& report,
                                     double eta, const BoundConstants& c) {
  const std::string name = "pathlength";
  if (!all_learners(trace, Regularizer::kEuclidean, PredictionMode::kLastUtility)) {
    return not_applicable(name, "requires optimistic Euclidean learners");
  }
  if (!all_eta(trace, eta)) return not_applicable(name, "learners use different step sizes");
  if (!eta_at_most(eta, 1.0 / (4.0 * c.L))) {
    return not_applicable(name, "eta " + fmt(eta) + " exceeds 1/(4L) = " + fmt(1.0 / (4.0 * c.L)));
  }
  if (!report.has_certificates) return not_applicable(name, "no equilibrium certificates");
  const double P = path_lengths(trace).second_order;
  const double D = c.D_Z, Z2 = c.Z_norm * c.Z_norm, e2 = eta * eta;
  const double bound = 2.0 * D * D + 4.0 * e2 * c.L * c.L * Z2 + 4.0 * D * report.V_NE +
                       4.0 * c.n * eta * report.eps_sum + 8.0 * e2 * Z2 * report.V_A;
  CheckResult r;
  r.name = name;
  r.margin = bound - P;
  r.note = "P=" + fmt(P) + " bound=" + fmt(bound);
  return r;
}

CheckResult check_strong_pathlength_theorem(const Trace& trace, const GameSequence& seq,
                                            const VariationReport& report, double eta) {
  const std::string name = "strong_pathlength";
  if (seq.kind() != GameKind::kSaddle) return not_applicable(name, "requires saddle games");
  if (!all_learners(trace, Regularizer::kEuclidean, PredictionMode::kLastUtility)) {
    return not_applicable(name, "requires optimistic Euclidean learners");
  }
  if (!all_eta(trace, eta)) return not_applicable(name, "learners use different step sizes");
  if (!report.has_certificates) return not_applicable(name, "no equilibrium certificates");
  const int T = trace.length();
  double mu = std::numeric_limits<double>::infinity();
  int min_block = T, run = 0, prev = -1;
  for (int t = 1; t <= T; ++t) {
    const int idx = seq.game_index(t);
    if (idx != prev) {
      if (prev != -1) min_block = std::min(min_block, run);
      run = 0;
      prev = idx;
      mu = std::min(mu, std::get<QuadraticSaddle>(seq.game_at(t)).mu);
    }
    ++run;
  }
  // The final block may be cut short by T; earlier blocks set the length.
  if (min_block == T) min_block = run;
  if (!(mu > 0.0)) return not_applicable(name, "requires mu > 0");
  const double L = operator_lipschitz(seq);
  const double limit = std::min(1.0 / (8.0 * L), 1.0 / (2.0 * mu));
  if (!eta_at_most(eta, limit)) {
    return not_applicable(name, "eta " + fmt(eta) + " exceeds min(1/(8L), 1/(2mu)) = " + fmt(limit));
  }
  if (min_block < 2.0 / (eta * mu)) {
    return not_applicable(name, "block length " + std::to_string(min_block) +
                                    " below 2/(eta mu) = " + fmt(2.0 / (eta * mu)));
  }
  double F1 = 0.0;
  for (const PlayerRound& p : trace.rounds.front().players) F1 += p.u.squaredNorm();
  const double D = product_diameter(seq.dims());
  const double P = path_lengths(trace).second_order;
  const double bound = 4.0 * D * D + 8.0 * eta * eta * F1 + 8.0 * report.S_NE +
                       16.0 * eta * eta * report.V_grad_f;
  CheckResult r;
  r.name = name;
  r.margin = bound - P;
  r.note = "P=" + fmt(P) + " bound=" + fmt(bound) + " certificate eps_sum=" + fmt(report.eps_sum);
  return r;
}

CheckResult check_nonnegativity(const Trace& trace, const GameSequence& seq,
                                const VariationReport& report) {
  const std::string name = "nonnegativity";
  if (!report.has_certificates) return not_applicable(name, "no equilibrium certificates");
  const int T = trace.length();
  if (static_cast<int>(report.certificates.size()) < T) {
    throw std::invalid_argument("check_nonnegativity: fewer certificates than rounds");
  }
  CheckResult r;
  r.name = name;
  double eps = 0.0;
  for (int t = 0; t < T; ++t) eps += report.certificates[t].eps;
  if (seq.kind() == GameKind::kSaddle) {
    r.name = "nonnegativity_minimax";
    for (int t = 1; t <= T; ++t) {
      const QuadraticSaddle g = std::get<QuadraticSaddle>(seq.game_at(t));
      const NECertificate& c = report.certificates[t - 1];
      const std::vector<Vec> z = trace.profile(t);
      r.margin += g.value(z[0], c.y_star()) - g.value(c.x_star(), z[1]);
    }
    r.slack = 2.0 * eps;
    return r;
  }
  if (seq.kind() != GameKind::kZeroSum && seq.kind() != GameKind::kPolymatrix) {
    return not_applicable(name, "requires a zero-sum kind");
  }
  const int n = trace.num_players();
  for (int i = 0; i < n; ++i) {
    std::vector<Vec> comps;
    comps.reserve(T);
    for (int t = 0; t < T; ++t) comps.push_back(report.certificates[t].profile.at(i));
    r.margin += dynamic_regret(trace, i, comps);
  }
  r.slack = n * eps;
  return r;
}

CheckResult check_strong_regret_lower(const Trace& trace, const NECertificate& ne, double mu) {
  CheckResult r;
  r.name = "strong_regret_lower";
  for (int t = 1; t <= trace.length(); ++t) {
    for (int i = 0; i < 2; ++i) {
      const PlayerRound& p = trace.at(t, i);
      const Vec& star = ne.profile.at(i);
      r.margin += (star - p.x).dot(p.u) - 0.5 * mu * (p.x - star).squaredNorm();
    }
  }
  r.slack = 2.0 * trace.length() * ne.eps;
  return r;
}

CheckResult check_strong_regret_lower(const Trace& trace, const GameSequence& seq,
                                      const std::vector<NECertificate>& certificates) {
  if (seq.kind() != GameKind::kSaddle) {
    return not_applicable("strong_regret_lower", "requires saddle games");
  }
  const int T = trace.length();
  if (static_cast<int>(certificates.size()) < T) {
    throw std::invalid_argument("check_strong_regret_lower: fewer certificates than rounds");
  }
  CheckResult r;
  r.name = "strong_regret_lower";
  for (int t = 1; t <= T; ++t) {
    const double mu = std::get<QuadraticSaddle>(seq.game_at(t)).mu;
    const NECertificate& c = certificates[t - 1];
    for (int i = 0; i < 2; ++i) {
      const PlayerRound& p = trace.at(t, i);
      const Vec& star = c.profile.at(i);
      r.margin += (star - p.x).dot(p.u) - 0.5 * mu * (p.x - star).squaredNorm();
    }
    r.slack += 2.0 * c.eps;
  }
  return r;
}

CheckResult check_potential_pathlength(const Trace& trace, const GameSequence& seq) {
  const std::string name = "potential_pathlength";
  if (seq.kind() != GameKind::kIdenticalInterest) {
    return not_applicable(name, "requires identical-interest games");
  }
  if (!all_learners(trace, Regularizer::kEuclidean, PredictionMode::kZero)) {
    return not_applicable(name, "requires plain Euclidean gradient descent");
  }
  const int T = trace.length();
  double max_eta = 0.0;
  for (const LearnerSpec& l : trace.learners) max_eta = std::max(max_eta, l.eta);
  std::vector<Mat> mats;
  mats.reserve(T);
  double max_norm = 0.0;
  int last = -1;
  for (int t = 1; t <= T; ++t) {
    if (seq.game_index(t) != last || mats.empty()) {
      mats.push_back(seq.matrix_at(t));
      max_norm = std::max(max_norm, spectral_norm(mats.back()));
      last = seq.game_index(t);
    } else {
      mats.push_back(mats.back());
    }
  }
  if (!eta_at_most(max_eta, 1.0 / max_norm)) {
    return not_applicable(name, "eta " + fmt(max_eta) + " exceeds 1/max|A| = " + fmt(1.0 / max_norm));
  }
  CheckResult r;
  r.name = name;
  std::vector<Vec> z = trace.profile(1);
  for (int t = 1; t <= T; ++t) {
    const std::vector<Vec> next = trace.profile(t + 1);
    const Mat& A = mats[t - 1];
    r.margin += potential(A, next[0], next[1]) - potential(A, z[0], z[1]);
    for (int i = 0; i < 2; ++i) {
      r.margin -= (next[i] - z[i]).squaredNorm() / (2.0 * trace.learners[i].eta);
    }
    z = next;
  }
  return r;
}

CheckResult check_br_gap_bound(const Trace& trace, const GameSequence& seq) {
  const std::string name = "br_gap_bound";
  const GameKind k = seq.kind();
  if (k != GameKind::kZeroSum && k != GameKind::kIdenticalInterest && k != GameKind::kPolymatrix) {
    return not_applicable(name, "requires games with linear utilities");
  }
  if (!all_euclidean(trace)) return not_applicable(name, "requires Euclidean learners");
  CheckResult r;
  r.name = name;
  r.margin = std::numeric_limits<double>::infinity();
  for (const Round& round : trace.rounds) {
    for (int i = 0; i < static_cast<int>(round.players.size()); ++i) {
      const PlayerRound& p = round.players[i];
      const double D = simplex_diameter(static_cast<int>(p.x.size()));
      const double bound = D / trace.learners[i].eta * (p.x_hat_next - p.x_hat).norm() +
                           p.u.norm() * (p.x - p.x_hat_next).norm();
      const double m = bound - best_response_gap(p.u, p.x);
      if (m < r.margin) {
        r.margin = m;
        r.player = i;
      }
    }
  }
  return r;
}

CheckResult check_stability(const Trace& trace) {
  const std::string name = "stability";
  if (!all_euclidean(trace)) return not_applicable(name, "requires Euclidean learners");
  CheckResult r;
  r.name = name;
  r.margin = std::numeric_limits<double>::infinity();
  const int T = trace.length();
  for (int i = 0; i < trace.num_players(); ++i) {
    double L = 0.0;
    for (const Round& round : trace.rounds) {
      L = std::max({L, round.players[i].u.norm(), round.players[i].m.norm()});
    }
    for (int t = 1; t < T; ++t) {
      const double step = (trace.at(t + 1, i).x - trace.at(t, i).x).norm();
      const double m = 3.0 * trace.learners[i].eta * L - step;
      if (m < r.margin) {
        r.margin = m;
        r.player = i;
      }
    }
  }
  if (T < 2) r.margin = 0.0;
  return r;
}

CheckResult check_kswitch_theorem(const Trace& trace, int K, const BoundConstants& c) {
  const std::string name = "kswitch";
  if (!is_static(trace)) return not_applicable(name, "requires a static game");
  if (!all_learners(trace, Regularizer::kEuclidean, PredictionMode::kLastUtility)) {
    return not_applicable(name, "requires optimistic Euclidean learners");
  }
  const double eta = trace.learners.front().eta;
  if (!all_eta(trace, eta)) return not_applicable(name, "learners use different step sizes");
  if (!eta_at_most(eta, 1.0 / (2.0 * c.L))) {
    return not_applicable(name, "eta " + fmt(eta) + " exceeds 1/(2L) = " + fmt(1.0 / (2.0 * c.L)));
  }
  double bound = 0.0, total = 0.0;
  for (int i = 0; i < trace.num_players(); ++i) {
    const PlayerRound& first = trace.at(1, i);
    const double D = simplex_diameter(static_cast<int>(first.x.size()));
    bound += (2.0 * K - 1.0) / (2.0 * eta) * D * D + eta * first.u.squaredNorm();
    total += k_switch_dreg(trace, i, K);
  }
  CheckResult r;
  r.name = name;
  r.margin = bound - total;
  r.note = "K=" + std::to_string(K) + " sum=" + fmt(total) + " bound=" + fmt(bound);
  return r;
}

CheckResult check_individual_regret(const Trace& trace, int player, const VariationReport& report,
                                    double eta, const BoundConstants& c) {
  const std::string name = "individual_regret";
  if (trace.num_players() != 2 || c.n != 2) return not_applicable(name, "requires two players", player);
  if (!all_learners(trace, Regularizer::kEuclidean, PredictionMode::kLastUtility)) {
    return not_applicable(name, "requires optimistic Euclidean learners", player);
  }
  if (!all_eta(trace, eta)) return not_applicable(name, "learners use different step sizes", player);
  if (!eta_at_most(eta, 1.0 / (4.0 * c.L))) {
    return not_applicable(name, "eta exceeds 1/(4L)", player);
  }
  if (!report.has_certificates) return not_applicable(name, "no equilibrium certificates", player);
  const int own = static_cast<int>(trace.at(1, player).x.size());
  const int other = static_cast<int>(trace.at(1, 1 - player).x.size());
  const double DX = simplex_diameter(own);
  const double Y2 = product_max_norm({other}) * product_max_norm({other});
  const double Z2 = c.Z_norm * c.Z_norm, L2 = c.L * c.L, e = eta;
  const double V = report.V_NE + 2.0 * eta / c.D_Z * report.eps_sum;
  const double bound = DX * DX / e + 8.0 * e * L2 * c.D_Z * c.D_Z + e * L2 * Y2 +
                       16.0 * e * e * e * L2 * L2 * Z2 + 16.0 * e * L2 * c.D_Z * V +
                       (2.0 * e * Y2 + 32.0 * e * e * e * L2 * Z2) * report.V_A;
  CheckResult r;
  r.name = name;
  r.player = player;
  r.margin = bound - external_regret(trace, player);
  return r;
}

CheckResult check_mediator_nonnegativity(const Trace& trace, const std::vector<Vec>& ce_comparators,
                                         double certificate_slack) {
  CheckResult r;
  r.name = "mediator_nonnegativity";
  r.margin = dynamic_regret(trace, 0, ce_comparators);
  for (int i = 1; i < trace.num_players(); ++i) r.margin += external_regret(trace, i);
  r.slack = certificate_slack;
  return r;
}

}  // namespace tvg
