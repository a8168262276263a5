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

#include "tvg/equilibrium.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "tvg/dynamics.h"
#include "tvg/metrics.h"

namespace tvg {

using nlohmann::json;

ZeroSumSolution solve_zero_sum_lp(const Mat& A) {
  if (A.size() == 0 || !A.allFinite()) {
    throw std::invalid_argument("solve_zero_sum_lp: matrix must be non-empty and finite");
  }
  const int dx = static_cast<int>(A.rows());
  const int dy = static_cast<int>(A.cols());
  const double shift = 1.0 - A.minCoeff();
  const Mat B = A.array() + shift;  // entries >= 1, game value > 0

  // max sum(p) s.t. B^T p <= 1, p >= 0. Columns: p (dx), slacks (dy).
  const int m = dy;
  const int n = dx + dy;
  Mat tab = Mat::Zero(m, n + 1);
  tab.leftCols(dx) = B.transpose();
  tab.block(0, dx, m, dy).setIdentity();
  tab.col(n).setOnes();
  Vec reduced = Vec::Zero(n);
  reduced.head(dx).setOnes();
  std::vector<int> basis(m);
  for (int r = 0; r < m; ++r) basis[r] = dx + r;

  const double eps = 1e-12 * std::max(1.0, B.maxCoeff());
  int pivots = 0;
  const int max_pivots = 50 * (m + n) + 1000;
  while (true) {
    int enter = -1;
    for (int k = 0; k < n; ++k) {
      if (reduced[k] > eps) {
        enter = k;
        break;
      }
    }
    if (enter < 0) break;
    double best_ratio = std::numeric_limits<double>::infinity();
    for (int r = 0; r < m; ++r) {
      if (tab(r, enter) > eps) best_ratio = std::min(best_ratio, tab(r, n) / tab(r, enter));
    }
    int leave = -1;
    for (int r = 0; r < m; ++r) {
      if (tab(r, enter) <= eps) continue;
      if (tab(r, n) / tab(r, enter) > best_ratio + 1e-14) continue;
      if (leave < 0 || basis[r] < basis[leave]) leave = r;
    }
    if (leave < 0) throw std::runtime_error("solve_zero_sum_lp: unbounded program");
    const double piv = tab(leave, enter);
    tab.row(leave) /= piv;
    for (int r = 0; r < m; ++r) {
      if (r != leave && tab(r, enter) != 0.0) tab.row(r) -= tab(r, enter) * tab.row(leave);
    }
    reduced -= reduced[enter] * tab.row(leave).head(n).transpose();
    basis[leave] = enter;
    if (++pivots > max_pivots) throw std::runtime_error("solve_zero_sum_lp: pivot limit reached");
  }

  Vec p = Vec::Zero(dx);
  for (int r = 0; r < m; ++r) {
    if (basis[r] < dx) p[basis[r]] = std::max(0.0, tab(r, n));
  }
  Vec w = (-reduced.segment(dx, dy)).cwiseMax(0.0);
  const double total = p.sum();
  if (!(total > 0.0) || !(w.sum() > 0.0)) {
    throw std::runtime_error("solve_zero_sum_lp: degenerate solution");
  }
  ZeroSumSolution sol;
  sol.x = p / total;
  sol.y = w / w.sum();
  sol.value = 1.0 / total - shift;
  sol.pivots = pivots;
  return sol;
}

NECertificate certify(const Game& game, std::vector<Vec> profile) {
  NECertificate c;
  c.eps = eq_gap(game, profile);
  c.profile = std::move(profile);
  return c;
}

NECertificate ne_oracle_ogd(const Game& game, double tol, int max_iters,
                            const std::optional<std::vector<Vec>>& warm) {
  if (!(tol > 0.0)) throw std::invalid_argument("ne_oracle: tol must be > 0");
  const std::vector<int> dims = strategy_dims(game);
  const int n = static_cast<int>(dims.size());
  std::vector<Vec> z_hat;
  if (warm) {
    z_hat = *warm;
  } else {
    for (int d : dims) z_hat.push_back(uniform_point(d));
  }
  const double L = operator_lipschitz(constant_sequence(game, 1));
  const double eta = L > 0.0 ? 1.0 / (4.0 * L) : 1.0;
  NECertificate best = certify(game, z_hat);
  std::vector<Vec> m(n);
  for (int i = 0; i < n; ++i) m[i] = Vec::Zero(dims[i]);
  std::vector<Vec> z(n);
  for (int k = 0; k < max_iters && best.eps > tol; ++k) {
    for (int i = 0; i < n; ++i) z[i] = project_simplex(z_hat[i] + eta * m[i]);
    const std::vector<Vec> u = utilities(game, z);
    const double gap = eq_gap(game, z);
    if (gap < best.eps) {
      best.eps = gap;
      best.profile = z;
    }
    for (int i = 0; i < n; ++i) z_hat[i] = project_simplex(z_hat[i] + eta * u[i]);
    m = u;
  }
  return best;
}

NECertificate ne_oracle_zero_sum(const Mat& A, double tol, int max_iters) {
  if (!(tol > 0.0)) throw std::invalid_argument("ne_oracle_zero_sum: tol must be > 0");
  const Game game = MatrixGame{A};
  if (A.rows() == 2 && A.cols() == 2) {
    const double a = A(0, 0), b = A(0, 1), c = A(1, 0), d = A(1, 1);
    const double den = a - b - c + d;
    if (den != 0.0) {
      const double x1 = (d - c) / den;
      const double y1 = (d - b) / den;
      if (x1 > 0.0 && x1 < 1.0 && y1 > 0.0 && y1 < 1.0) {
        Vec x(2), y(2);
        x << x1, (a - b) / den;
        y << y1, (a - c) / den;
        NECertificate cert = certify(game, {x, y});
        if (cert.eps <= 1e-12) return cert;
      }
    }
  }
  NECertificate cert;
  try {
    const ZeroSumSolution sol = solve_zero_sum_lp(A);
    cert = certify(game, {sol.x, sol.y});
  } catch (const std::runtime_error&) {
    cert = certify(game, {uniform_point(static_cast<int>(A.rows())),
                          uniform_point(static_cast<int>(A.cols()))});
  }
  if (cert.eps > tol) {
    NECertificate polished = ne_oracle_ogd(game, tol, max_iters, cert.profile);
    if (polished.eps < cert.eps) cert = polished;
  }
  return cert;
}

NECertificate ne_oracle(const Game& game, double tol, const std::optional<std::vector<Vec>>& warm) {
  switch (kind_of(game)) {
    case GameKind::kZeroSum:
      return ne_oracle_zero_sum(std::get<MatrixGame>(game).A, tol);
    case GameKind::kPolymatrix: {
      const auto& pg = std::get<PolymatrixGame>(game);
      if (pg.num_players() == 2) {
        // Two-node graph: player 0 receives A_01 x_1, i.e. the matrix game -A_01.
        NECertificate c = ne_oracle_zero_sum(-pg.block(0, 1), tol);
        return certify(game, c.profile);
      }
      return ne_oracle_ogd(game, tol, 200000, warm);
    }
    case GameKind::kSaddle:
      return ne_oracle_ogd(game, tol, 1000000, warm);
    default:
      throw std::invalid_argument("ne_oracle: no Nash oracle for " + to_string(kind_of(game)));
  }
}

namespace {

double joint_distance(const std::vector<Vec>& a, const std::vector<Vec>& b) {
  double s = 0.0;
  for (size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]).squaredNorm();
  return std::sqrt(s);
}

// Payoff blocks whose second-order variation defines V_A.
std::vector<Mat> payoff_blocks(const Game& g) {
  switch (kind_of(g)) {
    case GameKind::kZeroSum: return {std::get<MatrixGame>(g).A};
    case GameKind::kIdenticalInterest: return {std::get<IdenticalInterestGame>(g).A};
    case GameKind::kSaddle: return {std::get<QuadraticSaddle>(g).A};
    case GameKind::kPolymatrix: {
      std::vector<Mat> out;
      for (const auto& [key, A] : std::get<PolymatrixGame>(g).blocks()) out.push_back(A);
      return out;
    }
    case GameKind::kNormalForm: {
      std::vector<Mat> out;
      const auto& nf = std::get<NormalFormGame>(g);
      for (int i = 0; i < nf.num_players(); ++i) out.push_back(nf.utility_table(i));
      return out;
    }
  }
  return {};
}

double max_gradient_drift(const QuadraticSaddle& a, const QuadraticSaddle& b) {
  const int dx = static_cast<int>(a.A.rows());
  const int dy = static_cast<int>(a.A.cols());
  const Mat dA = b.A - a.A;
  const double dmu = b.mu - a.mu;
  const Vec dx0 = b.mu * b.x0 - a.mu * a.x0;
  const Vec dy0 = b.mu * b.y0 - a.mu * a.y0;
  double best = 0.0;
  // |F_b(z) - F_a(z)|^2 is convex in z, so its maximum sits at a vertex pair.
  for (int i = 0; i < dx; ++i) {
    for (int j = 0; j < dy; ++j) {
      Vec gx = dA.col(j) - dx0;
      gx[i] += dmu;
      Vec gy = -dA.row(i).transpose() - dy0;
      gy[j] += dmu;
      best = std::max(best, gx.squaredNorm() + gy.squaredNorm());
    }
  }
  return best;
}

}  // namespace

json VariationReport::to_json() const {
  return json{{"V_A", V_A},     {"W_A", W_A},     {"V_NE", V_NE},
              {"eps_sum", eps_sum}, {"V_Phi", V_Phi}, {"S_NE", S_NE},
              {"V_grad_f", V_grad_f}, {"has_certificates", has_certificates}};
}

VariationReport variation_report(const GameSequence& seq, double tol) {
  VariationReport rep;
  const int T = seq.length();
  const GameKind kind = seq.kind();
  rep.has_certificates =
      kind == GameKind::kZeroSum || kind == GameKind::kPolymatrix || kind == GameKind::kSaddle;

  // Mean payoff blocks for W_A.
  std::vector<Mat> mean;
  {
    int last = -1;
    std::vector<Mat> cur;
    for (int t = 1; t <= T; ++t) {
      if (seq.game_index(t) != last) {
        last = seq.game_index(t);
        cur = payoff_blocks(seq.game_at(t));
      }
      if (mean.empty()) {
        mean = cur;
      } else {
        for (size_t b = 0; b < cur.size(); ++b) mean[b] += cur[b];
      }
    }
    for (Mat& M : mean) M /= T;
  }

  int last = -1;
  Game prev_game;
  std::vector<Mat> prev_blocks;
  double prev_wa = 0.0;
  std::optional<NECertificate> prev_cert;
  for (int t = 1; t <= T; ++t) {
    const int idx = seq.game_index(t);
    const bool changed = idx != last;
    if (changed) {
      const Game g = seq.game_at(t);
      const std::vector<Mat> blocks = payoff_blocks(g);
      prev_wa = 0.0;
      for (size_t b = 0; b < blocks.size(); ++b) prev_wa += spectral_norm(blocks[b] - mean[b]);
      if (t > 1) {
        for (size_t b = 0; b < blocks.size(); ++b) {
          const double s = spectral_norm(blocks[b] - prev_blocks[b]);
          rep.V_A += s * s;
        }
        if (kind == GameKind::kIdenticalInterest) {
          rep.V_Phi += std::max(0.0, (prev_blocks[0] - blocks[0]).maxCoeff());
        }
        if (kind == GameKind::kSaddle) {
          rep.V_grad_f += max_gradient_drift(std::get<QuadraticSaddle>(prev_game),
                                             std::get<QuadraticSaddle>(g));
        }
      }
      if (rep.has_certificates) {
        std::optional<std::vector<Vec>> warm;
        if (prev_cert) warm = prev_cert->profile;
        NECertificate cert = ne_oracle(g, tol, warm);
        if (prev_cert) {
          const double dist = joint_distance(cert.profile, prev_cert->profile);
          rep.V_NE += dist;
          rep.S_NE += dist * dist;
        }
        prev_cert = cert;
      }
      prev_game = g;
      prev_blocks = blocks;
      last = idx;
    }
    rep.W_A += prev_wa;
    if (rep.has_certificates) {
      rep.eps_sum += prev_cert->eps;
      rep.certificates.push_back(*prev_cert);
    }
  }
  return rep;
}

CertifiedVariation certified_variation(const GameSequence& seq,
                                       const std::vector<std::vector<Vec>>& profiles) {
  if (static_cast<int>(profiles.size()) != seq.length()) {
    throw std::invalid_argument("certified_variation: one profile per round required");
  }
  CertifiedVariation out;
  for (int t = 1; t <= seq.length(); ++t) {
    out.certificates.push_back(certify(seq.game_at(t), profiles[t - 1]));
    out.eps_sum += out.certificates.back().eps;
    if (t > 1) {
      const double d = joint_distance(profiles[t - 1], profiles[t - 2]);
      out.first_order += d;
      out.second_order += d * d;
    }
  }
  return out;
}

CertifiedVariation uniform_certificates(const GameSequence& seq) {
  std::vector<Vec> z;
  for (int d : seq.dims()) z.push_back(uniform_point(d));
  return certified_variation(seq, std::vector<std::vector<Vec>>(seq.length(), z));
}

Vec solve_ce_lp(const NormalFormGame& game) {
  int cols = 0;
  for (int i = 0; i < game.num_players(); ++i) cols += game.num_actions(i) * game.num_actions(i);
  Mat B = Mat::Zero(game.num_profiles(), cols);
  int c = 0;
  for (int i = 0; i < game.num_players(); ++i) {
    const int ni = game.num_actions(i);
    for (int rec = 0; rec < ni; ++rec) {
      for (int dev = 0; dev < ni; ++dev, ++c) {
        for (int k = 0; k < game.num_profiles(); ++k) {
          if (game.action_of(k, i) != rec) continue;
          B(k, c) = game.utility(i, game.with_action(k, i, dev)) - game.utility(i, k);
        }
      }
    }
  }
  return solve_zero_sum_lp(B).x;
}

}  // namespace tvg
