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


// Acceptance gates. Prints one PASS/FAIL line per criterion and exits
// non-zero if any fails.

#include <algorithm>
#include <chrono>
#include <cstdarg>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "tvg/checks.h"
#include "tvg/experiments.h"
#include "tvg/mediator.h"
#include "tvg/metrics.h"
#include "tvg/rng.h"

namespace {

using namespace tvg;
namespace fs = std::filesystem;

struct Outcome {
  bool pass = true;
  std::string detail;
};

class Timer {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string fmt(const char* f, ...) __attribute__((format(printf, 1, 2)));
std::string fmt(const char* f, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof(buf), f, ap);
  va_end(ap);
  return buf;
}

Mat diag(double a, double b) {
  Mat A = Mat::Zero(2, 2);
  A(0, 0) = a;
  A(1, 1) = b;
  return A;
}

// 1. Closed-form 2x2 equilibria.
Outcome closed_form_ne() {
  Timer timer;
  const NECertificate a = ne_oracle(MatrixGame{diag(2, 1)}, 1e-12);
  const NECertificate b = ne_oracle(MatrixGame{diag(1, 2)}, 1e-12);
  const Vec third = (Vec(2) << 1.0 / 3.0, 2.0 / 3.0).finished();
  const Vec two_thirds = (Vec(2) << 2.0 / 3.0, 1.0 / 3.0).finished();
  const double err = std::max({(a.x_star() - third).lpNorm<Eigen::Infinity>(),
                               (a.y_star() - third).lpNorm<Eigen::Infinity>(),
                               (b.x_star() - two_thirds).lpNorm<Eigen::Infinity>(),
                               (b.y_star() - two_thirds).lpNorm<Eigen::Infinity>()});
  const double secs = timer.seconds();
  return {err <= 1e-9 && secs < 1.0, fmt("max error %.2e, %.3fs", err, secs)};
}

// Pure best-response gap of a 2x2 zero-sum profile by enumeration.
double pure_br_gap(const Mat& A, const Vec& x, const Vec& y) {
  const double v = x.dot(A * y);
  double row = 0.0, col = 0.0;
  for (int i = 0; i < A.rows(); ++i) row = std::max(row, v - (A.row(i) * y)(0));
  for (int j = 0; j < A.cols(); ++j) col = std::max(col, x.dot(A.col(j)) - v);
  return std::max(row, col);
}

// 2. Alternating example: equilibria jump while uniform play stays nearly optimal.
Outcome alternating_variation() {
  Timer timer;
  const double delta = 1e-6;
  const int T = 100;
  const GameSequence seq = gen_alternating_example(delta, T);
  const VariationReport rep = variation_report(seq);
  const CertifiedVariation uni = uniform_certificates(seq);
  double eps_oracle = 0.0;
  for (int t = 1; t <= T; ++t) {
    eps_oracle += pure_br_gap(seq.matrix_at(t), uniform_point(2), uniform_point(2));
  }
  const double limit = T * delta / 4.0;
  const bool ok = rep.V_NE >= 50.0 && uni.first_order == 0.0 &&
                  uni.eps_sum <= limit * (1 + 1e-12) && eps_oracle <= limit * (1 + 1e-12) &&
                  std::abs(uni.eps_sum - eps_oracle) <= 1e-15 * T && timer.seconds() < 1.0;
  return {ok, fmt("V_NE %.2f, uniform first-order %.1f, eps_sum %.3e (enumerated %.3e, limit %.3e), %.3fs",
                  rep.V_NE, uni.first_order, uni.eps_sum, eps_oracle, limit, timer.seconds())};
}

// 3. Bound inequalities over 100 seeded runs.
struct FamilyTally {
  int runs = 0;
  std::set<std::string> applicable;
  double worst = std::numeric_limits<double>::infinity();
  std::string worst_name;
};

void tally(FamilyTally& f, const std::vector<CheckResult>& checks) {
  ++f.runs;
  for (const CheckResult& r : checks) {
    if (!r.applicable) continue;
    f.applicable.insert(r.name);
    if (r.effective() < f.worst) {
      f.worst = r.effective();
      f.worst_name = r.name;
    }
  }
}

std::vector<CheckResult> run_two_player(const GameSequence& seq, double eta, bool gd = false) {
  const LearnerSpec l = gd ? LearnerSpec::gd(eta) : LearnerSpec::ogd(eta);
  std::vector<LearnerSpec> learners(seq.dims().size(), l);
  const Trace tr = run_dynamics(seq, learners);
  return standard_checks(tr, seq, variation_report(seq));
}

Outcome theorem_gates() {
  Timer timer;
  std::map<std::string, FamilyTally> fam;
  const std::map<std::string, std::vector<std::string>> required{
      {"static", {"rvu_dynamic", "pathlength", "nonnegativity"}},
      {"drift-0.5", {"rvu_dynamic", "pathlength", "nonnegativity"}},
      {"drift-1", {"rvu_dynamic", "pathlength", "nonnegativity"}},
      {"drift-2", {"rvu_dynamic", "pathlength", "nonnegativity"}},
      {"alternating", {"rvu_dynamic", "pathlength", "nonnegativity"}},
      {"polymatrix-3", {"rvu_dynamic", "pathlength", "nonnegativity"}},
      {"saddle-0.1", {"rvu_dynamic", "strong_regret_lower", "nonnegativity_minimax"}},
      {"saddle-1", {"rvu_dynamic", "strong_regret_lower", "strong_pathlength", "nonnegativity_minimax"}},
      {"potential", {"rvu_dynamic", "potential_pathlength"}},
      {"mediator", {"mediator_nonnegativity", "rvu_dynamic"}}};
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const Mat A0 = random_matrix(4, 4, seed, 0), P = random_matrix(4, 4, seed, 1);
    {
      const GameSequence s = constant_sequence(MatrixGame{A0}, 300);
      tally(fam["static"], run_two_player(s, default_eta(s)));
    }
    for (double alpha : {0.5, 1.0, 2.0}) {
      const GameSequence s = gen_drift_powerlaw(A0, P, alpha, 300);
      tally(fam[fmt("drift-%g", alpha)], run_two_player(s, default_eta(s)));
    }
    {
      const GameSequence s = gen_alternating_example(0.05 * seed, 200, seed % 2 == 0);
      tally(fam["alternating"], run_two_player(s, default_eta(s)));
    }
    {
      const PolymatrixGame base = PolymatrixGame::from_edges(
          {3, 3, 3}, {{{0, 1}, random_matrix(3, 3, seed, 2)},
                      {{1, 2}, random_matrix(3, 3, seed, 3)},
                      {{0, 2}, random_matrix(3, 3, seed, 4)}});
      const GameSequence s =
          gen_polymatrix(base, 200, PolymatrixDrift{{{{0, 1}, random_matrix(3, 3, seed, 5)}}, 1.0});
      tally(fam["polymatrix-3"], run_two_player(s, default_eta(s)));
    }
    for (double mu : {0.1, 1.0}) {
      CounterRng rng(seed, 100);
      std::vector<Game> games;
      for (int h = 0; h < 2; ++h) {
        games.push_back(QuadraticSaddle{random_matrix(3, 3, seed, 10 + h), mu,
                                        random_simplex_point(3, rng), random_simplex_point(3, rng)});
      }
      const double L = operator_lipschitz(gen_metalearning(games, 1));
      const double eta = std::min(1.0 / (8.0 * L), 1.0 / (2.0 * mu));
      const int m = static_cast<int>(std::ceil(2.0 / (eta * mu)));
      tally(fam[fmt("saddle-%g", mu)], run_two_player(gen_metalearning(games, m), eta));
    }
    {
      const GameSequence s = gen_identical_interest(gen_drift_powerlaw(A0, P, 1.0, 300));
      double max_norm = 0.0;
      for (int t = 1; t <= s.length(); ++t) max_norm = std::max(max_norm, spectral_norm(s.matrix_at(t)));
      tally(fam["potential"], run_two_player(s, 0.5 / max_norm, true));
    }
    {
      std::vector<NormalFormGame> games;
      for (int h = 0; h < 3; ++h) {
        games.push_back(NormalFormGame({2, 2}, {random_matrix(4, 1, seed, 20 + 2 * h).col(0),
                                                random_matrix(4, 1, seed, 21 + 2 * h).col(0)}));
      }
      std::vector<int> schedule;
      for (int t = 0; t < 300; ++t) schedule.push_back((t / 50) % 3);
      const CeRun run = solve_ce(games, schedule);
      tally(fam["mediator"], mediator_checks(run.trace, mediator_sequence(games, schedule)));
    }
  }
  bool ok = timer.seconds() < 120.0;
  int runs = 0;
  double worst = std::numeric_limits<double>::infinity();
  std::string missing;
  for (const auto& [name, f] : fam) {
    runs += f.runs;
    worst = std::min(worst, f.worst);
    if (f.worst < -kMarginTol) {
      ok = false;
      std::printf("  family %s: %s margin %.3e\n", name.c_str(), f.worst_name.c_str(), f.worst);
    }
    for (const std::string& req : required.at(name)) {
      if (!f.applicable.count(req)) missing += " " + name + ":" + req;
    }
  }
  if (!missing.empty()) ok = false;
  return {ok && runs == 100,
          fmt("%d runs, worst effective margin %.3e, %.1fs%s%s", runs, worst, timer.seconds(),
              missing.empty() ? "" : ", not applicable:", missing.c_str())};
}

// 4. Static rate on a 50x50 game.
Outcome static_rate() {
  Timer timer;
  const int T = 8000;
  const GameSequence seq = constant_sequence(MatrixGame{random_matrix(50, 50, 1, 0)}, T);
  const double eta = default_eta(seq);
  const Trace tr = run_dynamics(seq, {LearnerSpec::ogd(eta), LearnerSpec::ogd(eta)});
  const std::vector<double> path = running_second_order(tr);
  const std::vector<double> gaps = eq_gap_series(tr, seq);
  double sum_quarter = 0.0, sum_full = 0.0;
  for (int t = 0; t < T; ++t) {
    sum_full += gaps[t];
    if (t < T / 4) sum_quarter += gaps[t];
  }
  const double path_ratio = path[T - 1] / path[T / 4 - 1];
  const double gap_ratio = (sum_quarter / (T / 4)) / (sum_full / T);
  const bool ok = path_ratio <= 1.5 && gap_ratio >= 1.7 && timer.seconds() < 30.0;
  return {ok, fmt("path length ratio %.4f, average gap ratio %.2f, %.1fs", path_ratio, gap_ratio,
                  timer.seconds())};
}

// Exhaustive maximum over comparator sequences with at most K - 1 switches.
double kswitch_brute(const std::vector<Vec>& u, const std::vector<Vec>& x, int K) {
  const int T = static_cast<int>(u.size()), d = static_cast<int>(u[0].size());
  int total = 1;
  for (int t = 0; t < T; ++t) total *= d;
  double best = -std::numeric_limits<double>::infinity();
  for (int code = 0; code < total; ++code) {
    int c = code, prev = -1, switches = 0;
    double value = 0.0;
    for (int t = 0; t < T; ++t) {
      const int a = c % d;
      c /= d;
      if (t > 0 && a != prev) ++switches;
      prev = a;
      value += u[t][a] - x[t].dot(u[t]);
    }
    if (switches <= K - 1) best = std::max(best, value);
  }
  return best;
}

// 5. K-switch dynamic programming against enumeration.
Outcome kswitch_exactness() {
  Timer timer;
  CounterRng rng(5, 0);
  double err = 0.0;
  int cases = 0;
  for (int k = 0; k < 200; ++k) {
    const int T = 1 + k % 6, d = 1 + (k / 6) % 3;
    std::vector<Vec> u, x;
    for (int t = 0; t < T; ++t) {
      Vec v(d);
      for (int a = 0; a < d; ++a) v[a] = rng.uniform(-1.0, 1.0);
      u.push_back(v);
      x.push_back(random_simplex_point(d, rng));
    }
    for (int K = 1; K <= 3; ++K, ++cases) {
      err = std::max(err, std::abs(k_switch_dreg(u, x, K) - kswitch_brute(u, x, K)));
    }
  }
  const std::vector<Vec> u{vertex(2, 0), vertex(2, 1), vertex(2, 0)};
  const std::vector<Vec> x(3, uniform_point(2));
  const double w1 = k_switch_dreg(u, x, 1), w2 = k_switch_dreg(u, x, 2), w3 = k_switch_dreg(u, x, 3);
  const bool example = std::abs(w1 - 0.5) <= 1e-12 && std::abs(w2 - 0.5) <= 1e-12 &&
                       std::abs(w3 - 1.5) <= 1e-12;
  const bool ok = err <= 1e-12 && example && timer.seconds() < 10.0;
  return {ok, fmt("%d cases, max error %.2e, example (%.3g, %.3g, %.3g), %.2fs", cases, err, w1, w2,
                  w3, timer.seconds())};
}

// Largest expected gain of any player over all deviation maps, enumerated.
double deviation_map_brute(const NormalFormGame& g, const Vec& mu) {
  double best = 0.0;
  for (int i = 0; i < g.num_players(); ++i) {
    const int k = g.num_actions(i);
    int maps = 1;
    for (int a = 0; a < k; ++a) maps *= k;
    for (int code = 0; code < maps; ++code) {
      std::vector<int> phi(k);
      for (int a = 0, c = code; a < k; ++a, c /= k) phi[a] = c % k;
      double gain = 0.0;
      for (int p = 0; p < g.num_profiles(); ++p) {
        std::vector<int> acts = g.decode(p);
        const double before = g.utility(i, p);
        acts[i] = phi[acts[i]];
        gain += mu[p] * (g.utility(i, g.encode(acts)) - before);
      }
      best = std::max(best, gain);
    }
  }
  return best;
}

// 6. Correlated equilibrium machinery.
Outcome ce_machinery() {
  Timer timer;
  CounterRng rng(6, 0);
  double err = 0.0;
  for (int k = 0; k < 500; ++k) {
    const int n = 2 + k % 2;
    std::vector<int> counts;
    int profiles = 1;
    for (int i = 0; i < n; ++i) {
      counts.push_back(2 + static_cast<int>(rng.next() % 2));
      profiles *= counts.back();
    }
    std::vector<Vec> tables;
    for (int i = 0; i < n; ++i) tables.push_back(random_matrix(profiles, 1, 600 + k, i).col(0));
    const NormalFormGame g(counts, tables);
    Vec mu = random_simplex_point(profiles, rng);
    if (k % 5 == 0) mu = vertex(profiles, static_cast<int>(rng.next() % profiles));
    err = std::max(err, std::abs(ce_gap(g, mu) - deviation_map_brute(g, mu)));
  }
  const NormalFormGame pennies({2, 2}, {(Vec(4) << 1, -1, -1, 1).finished(), (Vec(4) << -1, 1, 1, -1).finished()});
  const NormalFormGame dilemma({2, 2}, {(Vec(4) << 3, 0, 5, 1).finished(), (Vec(4) << 3, 5, 0, 1).finished()});
  const CeRun mp = solve_ce(pennies, 5000);
  const CeRun pd = solve_ce(dilemma, 5000);
  const double gap_mp = ce_gap(pennies, mp.mu_avg), gap_pd = ce_gap(dilemma, pd.mu_avg);
  std::vector<NormalFormGame> games{dilemma, pennies};
  for (std::uint64_t s = 0; s < 2; ++s) {
    games.push_back(NormalFormGame({2, 2}, {random_matrix(4, 1, 60 + s, 0).col(0), random_matrix(4, 1, 60 + s, 1).col(0)}));
  }
  std::vector<int> schedule;
  for (int t = 0; t < 2000; ++t) schedule.push_back((t / 125) % 4);
  const CeRun drift = solve_ce(games, schedule);
  const CheckResult nonneg = mediator_checks(drift.trace, mediator_sequence(games, schedule)).front();
  const bool ok = err <= 1e-12 && gap_mp <= 1e-2 && gap_pd <= 1e-2 && nonneg.applicable &&
                  nonneg.effective() >= -kMarginTol && timer.seconds() < 30.0;
  return {ok, fmt("max decomposition error %.2e, ce gap pennies %.2e dilemma %.2e, drifting margin %.3e, %.1fs",
                  err, gap_mp, gap_pd, nonneg.effective(), timer.seconds())};
}

std::vector<int> json_ints(const nlohmann::json& j) { return j.get<std::vector<int>>(); }

// 7. Warm start across repeated games.
Outcome metalearning() {
  Timer timer;
  bool ok = true;
  std::string detail;
  for (const char* name : {"metalearn-zs", "metalearn-ce"}) {
    const RunSummary s = run_named(name, {"write_trace=false"}, "");
    const std::vector<int> it = json_ints(s.extra.at("iterations"));
    int later = 0;
    for (size_t h = 1; h < it.size(); ++h) later = std::max(later, it[h]);
    const bool good = it.size() == 10 && it[0] <= 500 && later <= 0.1 * it[0];
    ok = ok && good;
    detail += fmt("%s block1 %d later max %d; ", name, it[0], later);
  }
  const RunSummary control = run_named("metalearn-zs", {"write_trace=false", "games=random"}, "");
  std::string ctl;
  for (int v : json_ints(control.extra.at("iterations"))) ctl += fmt("%d ", v);
  std::printf("  control (unrelated games, not asserted): %s\n", ctl.c_str());
  return {ok, detail + fmt("%.1fs", timer.seconds())};
}

// 8. Strongly monotone saddle under every learner pair.
Outcome strong_convexity() {
  Timer timer;
  const int d = 4, T = 10000;
  CounterRng rng(1, 100);
  QuadraticSaddle g{random_matrix(d, d, 1, 0), 1.0, {}, {}};
  g.x0 = random_simplex_point(d, rng);
  g.y0 = random_simplex_point(d, rng);
  const GameSequence seq = constant_sequence(g, T);
  const double eta = std::min(1.0 / (8.0 * operator_lipschitz(seq)), 0.5);
  const NECertificate ne = ne_oracle(Game{g}, 1e-12);
  const std::vector<std::string> names{"ogd", "gd", "mwu", "omwu"};
  double worst = 0.0;
  std::string worst_pair;
  for (const std::string& a : names) {
    for (const std::string& b : names) {
      const Trace tr = run_dynamics(seq, {LearnerSpec::from_name(a, eta), LearnerSpec::from_name(b, eta)});
      double closest = std::numeric_limits<double>::infinity();
      for (int t = 1; t <= T; ++t) {
        const std::vector<Vec> z = tr.profile(t);
        closest = std::min(closest, std::sqrt((z[0] - ne.x_star()).squaredNorm() +
                                              (z[1] - ne.y_star()).squaredNorm()));
      }
      if (closest >= worst) {
        worst = closest;
        worst_pair = a + "/" + b;
      }
    }
  }
  return {worst <= 0.05 && ne.eps <= 1e-10,
          fmt("eta %.4f, largest min distance %.2e (%s), %.1fs", eta, worst, worst_pair.c_str(),
              timer.seconds())};
}

// 9. Averaged two-point play on matching pennies.
Outcome two_point() {
  Timer timer;
  const RunSummary s = run_named("twopoint", {"write_trace=false"}, "");
  const nlohmann::json& marks = s.series.at(0).at("marks");
  std::map<int, std::pair<double, double>> at;
  for (const nlohmann::json& m : marks) {
    at[m.at("t").get<int>()] = {m.at("t_gap").get<double>(), m.at("dreg").get<double>()};
  }
  const double g2 = at.at(100).first, g3 = at.at(1000).first, g4 = at.at(10000).first;
  const double ratio = at.at(10000).second / at.at(100).second;
  const bool ok = g3 <= 3.0 * g2 && g4 <= 3.0 * g3 && ratio <= 4.0;
  return {ok, fmt("t*gap %.3f %.3f %.3f, DReg ratio %.2f, %.1fs", g2, g3, g4, ratio, timer.seconds())};
}

// Column of a CSV file by header name.
std::vector<double> read_column(const fs::path& path, const std::string& column) {
  std::ifstream is(path);
  if (!is) throw IoError("cannot read " + path.string());
  std::string line;
  std::getline(is, line);
  std::vector<std::string> header;
  {
    std::stringstream ss(line);
    for (std::string cell; std::getline(ss, cell, ',');) header.push_back(cell);
  }
  const auto pos = std::find(header.begin(), header.end(), column);
  if (pos == header.end()) throw std::invalid_argument("missing column " + column);
  const size_t idx = pos - header.begin();
  std::vector<double> out;
  while (std::getline(is, line)) {
    std::stringstream ss(line);
    std::string cell;
    for (size_t k = 0; k <= idx; ++k) std::getline(ss, cell, ',');
    out.push_back(std::stod(cell));
  }
  return out;
}

bool sublinear(const std::vector<double>& cum) {
  const size_t T = cum.size();
  return cum[T - 1] / T <= 0.75 * cum[T / 2 - 1] / (T / 2);
}

// 10. Sweeps written to disk and read back.
Outcome sweeps() {
  Timer timer;
  const fs::path root = fs::temp_directory_path() / "tvg_acceptance_sweeps";
  fs::remove_all(root);
  std::vector<GridAxis> seeds{GridAxis{"seed", {}}};
  for (int s = 1; s <= 10; ++s) seeds[0].values.push_back(s);
  bool ok = true;
  std::string detail;

  ExperimentConfig pot = default_config("pot-gd");
  apply_override(pot, "alpha=0.1,0.2,0.5,2");
  apply_override(pot, "write_trace=false");
  pot.out_dir = (root / "pot-gd").string();
  const std::vector<SweepCell> pot_cells = sweep(pot, seeds, 0);
  double worst_summable = 0.0;
  std::string logged;
  for (const SweepCell& c : pot_cells) {
    if (!c.error.empty()) return {false, "pot-gd cell failed: " + c.error};
    const fs::path dir = root / "pot-gd" / fmt("cell_%03d", c.index);
    for (const char* alpha : {"0.1", "0.2", "0.5", "2"}) {
      const std::vector<double> cum = read_column(dir / fmt("alpha=%s.csv", alpha), "cum_gap_sq");
      const size_t T = cum.size();
      const double r = (cum[T - 1] / T) / (cum[T / 2 - 1] / (T / 2));
      // Potential variation sums t^-alpha, which is finite only for alpha > 1.
      if (std::stod(alpha) > 1.0) {
        worst_summable = std::max(worst_summable, r);
        ok = ok && sublinear(cum);
      } else if (r > 0.75) {
        logged += fmt(" seed %llu alpha %s ratio %.2f;",
                      static_cast<unsigned long long>(c.config.seed), alpha, r);
      }
    }
  }
  detail += fmt("pot-gd summable worst ratio %.3f; ", worst_summable);
  if (!logged.empty()) std::printf("  pot-gd non-summable settings above 0.75 (not asserted):%s\n", logged.c_str());

  ExperimentConfig zs = default_config("zs-ogd");
  apply_override(zs, "write_trace=false");
  zs.out_dir = (root / "zs-ogd").string();
  const std::vector<SweepCell> zs_cells = sweep(zs, seeds, 0);
  double worst_zs = 0.0;
  int ordered = 0;
  for (const SweepCell& c : zs_cells) {
    if (!c.error.empty()) return {false, "zs-ogd cell failed: " + c.error};
    const fs::path dir = root / "zs-ogd" / fmt("cell_%03d", c.index);
    std::map<std::string, double> final;
    for (const char* alpha : {"0.7", "1", "2"}) {
      const std::vector<double> cum = read_column(dir / fmt("alpha=%s.csv", alpha), "cum_gap_sq");
      const size_t T = cum.size();
      worst_zs = std::max(worst_zs, (cum[T - 1] / T) / (cum[T / 2 - 1] / (T / 2)));
      ok = ok && sublinear(cum);
      final[alpha] = cum.back();
    }
    ordered += final["2"] <= final["0.7"];
  }
  ok = ok && ordered >= 8;
  fs::remove_all(root);
  return {ok, detail + fmt("zs-ogd worst ratio %.3f, alpha 2 <= alpha 0.7 on %d/10 seeds, %.1fs", worst_zs,
                           ordered, timer.seconds())};
}

}  // namespace

int main() {
  const std::vector<std::pair<int, std::function<Outcome()>>> criteria{
      {1, closed_form_ne}, {2, alternating_variation}, {3, theorem_gates}, {4, static_rate},
      {5, kswitch_exactness}, {6, ce_machinery}, {7, metalearning}, {8, strong_convexity},
      {9, two_point}, {10, sweeps}};
  int failures = 0;
  for (const auto& [id, fn] : criteria) {
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += !o.pass;
    std::printf("%s criterion %d: %s\n", o.pass ? "PASS" : "FAIL", id, o.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
