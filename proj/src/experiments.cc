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


#include "tvg/experiments.h"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <thread>

#include "tvg/mediator.h"
#include "tvg/metrics.h"
#include "tvg/rng.h"
#include "tvg/sequences.h"

namespace tvg {

using nlohmann::json;
namespace fs = std::filesystem;

const std::vector<std::string>& zero_sum_columns() {
  static const std::vector<std::string> cols{"t",          "eq_gap",     "cum_gap_sq",
                                             "reg_x",      "reg_y",      "dreg_x_max",
                                             "dreg_y_max", "path2",      "v_a_running"};
  return cols;
}

std::vector<std::string> mediator_columns(int n) {
  std::vector<std::string> cols{"t", "ce_gap_last", "ce_gap_avg", "mediator_dreg"};
  for (int i = 1; i <= n; ++i) cols.push_back("reg_" + std::to_string(i));
  return cols;
}

const std::vector<std::string>& kswitch_columns() {
  static const std::vector<std::string> cols{"K", "kdreg_x", "kdreg_y", "sum", "bound"};
  return cols;
}

const std::vector<std::string>& twopoint_columns() {
  static const std::vector<std::string> cols{"t", "eq_gap", "t_gap", "dreg_x_max", "dreg_y_max"};
  return cols;
}

const std::vector<std::string>& blocks_columns() {
  static const std::vector<std::string> cols{"block", "iterations"};
  return cols;
}

const std::vector<std::string>& checks_columns() {
  static const std::vector<std::string> cols{"series", "name",   "player", "margin",
                                             "slack",  "applicable", "passed", "note"};
  return cols;
}

const std::vector<std::string>& trace_columns() {
  static const std::vector<std::string> cols{"t", "player", "game_index", "field", "values"};
  return cols;
}

namespace {

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

class CsvWriter {
 public:
  CsvWriter(const fs::path& path, const std::vector<std::string>& header)
      : path_(path), os_(path), width_(header.size()) {
    if (!os_) throw IoError("cannot open for writing: " + path.string());
    os_ << join(header, ",") << '\n';
  }

  void row(const std::vector<double>& values) {
    if (values.size() != width_) throw std::logic_error("csv row width mismatch");
    std::vector<std::string> cells;
    cells.reserve(values.size());
    for (double v : values) cells.push_back(num(v));
    os_ << join(cells, ",") << '\n';
  }

  void raw(const std::vector<std::string>& cells) { os_ << join(cells, ",") << '\n'; }

  ~CsvWriter() = default;

  void close() {
    os_.close();
    if (!os_) throw IoError("write failed: " + path_.string());
  }

 private:
  fs::path path_;
  std::ofstream os_;
  std::size_t width_;
};

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

void write_json(const fs::path& path, const json& j) {
  std::ofstream os(path);
  if (!os) throw IoError("cannot open for writing: " + path.string());
  os << j.dump(2) << '\n';
  if (!os) throw IoError("write failed: " + path.string());
}

std::vector<json> as_list(const json& v) {
  if (v.is_array()) return std::vector<json>(v.begin(), v.end());
  return {v};
}

std::string label_of(const std::string& key, const json& v) {
  if (v.is_string()) return key + "=" + v.get<std::string>();
  if (v.is_number()) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%g", v.get<double>());
    return key + "=" + buf;
  }
  return key + "=" + v.dump();
}

// Context shared by the experiment bodies.
struct Run {
  const ExperimentConfig& config;
  RunSummary& summary;
  fs::path dir;
  bool write = false;

  const json& param(const std::string& key) const { return config.params.at(key); }
  int integer(const std::string& key) const { return param(key).get<int>(); }
  double real(const std::string& key) const { return param(key).get<double>(); }
  bool flag(const std::string& key) const { return config.params.value(key, false); }
  std::string text(const std::string& key) const { return param(key).get<std::string>(); }

  fs::path file(const std::string& name) const { return dir / name; }

  void add_checks(const std::string& series, const std::vector<CheckResult>& checks) {
    for (const CheckResult& c : checks) summary.checks.push_back({series, c});
  }

  void write_trace(const std::string& label, const Trace& trace, json& info) {
    if (!write || !config.params.value("write_trace", true)) return;
    const fs::path csv = file(label + "_trace.csv");
    try {
      write_trace_csv(trace, csv.string());
    } catch (const std::runtime_error& e) {
      throw IoError(e.what());
    }
    write_json(file(label + "_trace.json"), trace_envelope(trace));
    info["trace"] = csv.filename().string();
  }
};

std::vector<double> cumulative(const std::vector<double>& v) {
  std::vector<double> out(v.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = (acc += v[i]);
  return out;
}

// Per-round rows of the two-player table; also returns the final values.
json two_player_series(Run& run, const std::string& label, const GameSequence& seq,
                       const Trace& trace, const std::vector<double>& va_inc) {
  const int T = trace.length();
  const std::vector<double> gaps = eq_gap_series(trace, seq);
  const std::vector<double> reg_x = running_external_regret(trace, 0);
  const std::vector<double> reg_y = running_external_regret(trace, 1);
  const std::vector<double> dx = running_max_dynamic_regret(trace, 0);
  const std::vector<double> dy = running_max_dynamic_regret(trace, 1);
  const std::vector<double> path2 = running_second_order(trace);
  const std::vector<double> va = cumulative(va_inc);
  std::vector<double> sq(T);
  for (int t = 0; t < T; ++t) sq[t] = gaps[t] * gaps[t];
  const std::vector<double> cum = cumulative(sq);
  json info{{"label", label}, {"rows", T}};
  if (run.write) {
    const std::string name = label + ".csv";
    CsvWriter csv(run.file(name), zero_sum_columns());
    for (int t = 0; t < T; ++t) {
      csv.row({static_cast<double>(t + 1), gaps[t], cum[t], reg_x[t], reg_y[t], dx[t], dy[t],
               path2[t], va[t]});
    }
    csv.close();
    info["csv"] = name;
  }
  info["final"] = {{"eq_gap", gaps.back()}, {"cum_gap_sq", cum.back()},
                   {"reg_x", reg_x.back()}, {"reg_y", reg_y.back()},
                   {"dreg_x_max", dx.back()}, {"dreg_y_max", dy.back()},
                   {"path2", path2.back()},  {"v_a", va.back()}};
  if (T >= 2) info["final"]["cum_gap_sq_half"] = cum[T / 2 - 1];
  run.write_trace(label, trace, info);
  return info;
}

std::vector<LearnerSpec> learners_for(const std::string& name, double eta, int n) {
  return std::vector<LearnerSpec>(n, LearnerSpec::from_name(name, eta));
}

// Identical-interest drift experiments.
void run_potential(Run& run, bool linear) {
  const int d = run.integer("d");
  const int T = run.integer("T");
  const double eta = run.real("eta");
  const std::string learner = run.text("learner");
  const Mat A0 = random_matrix(d, d, run.config.seed, 0);
  const Mat P = random_matrix(d, d, run.config.seed, 1);
  const std::string axis = linear ? "epsilon" : "alpha";
  for (const json& v : as_list(run.param(axis))) {
    const double value = v.get<double>();
    const GameSequence seq = gen_identical_interest(
        linear ? gen_drift_linear(A0, P, value, T) : gen_drift_powerlaw(A0, P, value, T));
    const Trace trace = run_dynamics(seq, learners_for(learner, eta, 2));
    const VariationReport report = variation_report(seq);
    const std::string label = label_of(axis, v);
    json info = two_player_series(run, label, seq, trace, matrix_variation_increments(seq));
    info[axis] = value;
    info["variation"] = report.to_json();
    run.summary.series.push_back(info);
    run.add_checks(label, standard_checks(trace, seq, report));
  }
}

void run_zs_ogd(Run& run) {
  const int d = run.integer("d");
  const int T = run.integer("T");
  const double eta = run.real("eta");
  const Mat A0 = random_matrix(d, d, run.config.seed, 0);
  const Mat P = random_matrix(d, d, run.config.seed, 1);
  for (const json& v : as_list(run.param("alpha"))) {
    const double alpha = v.get<double>();
    const GameSequence seq = gen_drift_powerlaw(A0, P, alpha, T, DriftBase::kOne);
    const Trace trace = run_dynamics(seq, learners_for(run.text("learner"), eta, 2));
    const VariationReport report = variation_report(seq);
    const std::string label = label_of("alpha", v);
    json info = two_player_series(run, label, seq, trace, matrix_variation_increments(seq));
    info["alpha"] = alpha;
    info["variation"] = report.to_json();
    run.summary.series.push_back(info);
    run.add_checks(label, standard_checks(trace, seq, report));
  }
}

void write_blocks(Run& run, const std::string& name, const std::vector<int>& iterations) {
  if (!run.write) return;
  CsvWriter csv(run.file(name), blocks_columns());
  for (std::size_t h = 0; h < iterations.size(); ++h) {
    csv.row({static_cast<double>(h + 1), static_cast<double>(iterations[h])});
  }
  csv.close();
}

json block_ratio(const std::vector<int>& it) {
  int later = 0;
  for (std::size_t h = 1; h < it.size(); ++h) later = std::max(later, it[h]);
  return it.size() > 1 ? json(static_cast<double>(later) / it.front()) : json(nullptr);
}

void run_metalearn_zs(Run& run) {
  const int d = run.integer("d");
  const int H = run.integer("H");
  const int m = run.integer("m");
  const std::string mode = run.text("games");
  if (mode != "copies" && mode != "random") {
    throw std::invalid_argument("metalearn-zs: games must be 'copies' or 'random'");
  }
  std::vector<Game> games;
  for (int h = 0; h < H; ++h) {
    games.push_back(MatrixGame{random_matrix(d, d, run.config.seed, mode == "copies" ? 0 : h)});
  }
  const GameSequence seq = gen_metalearning(games, m);
  const double eta = run.real("eta") > 0.0 ? run.real("eta") : default_eta(seq);
  const Trace trace = run_dynamics(seq, learners_for(run.text("learner"), eta, 2));
  const VariationReport report = variation_report(seq);
  const std::vector<int> it = iterations_to_eps(trace, seq, run.real("eps"));
  json info = two_player_series(run, "metalearn", seq, trace, matrix_variation_increments(seq));
  info["eta"] = eta;
  info["iterations"] = it;
  info["variation"] = report.to_json();
  write_blocks(run, "blocks.csv", it);
  if (run.write) info["blocks_csv"] = "blocks.csv";
  run.summary.series.push_back(info);
  run.summary.extra["iterations"] = it;
  run.summary.extra["later_to_first_ratio"] = block_ratio(it);
  run.add_checks("metalearn", standard_checks(trace, seq, report));
}

NormalFormGame random_normal_form(int players, int actions, std::uint64_t seed,
                                  std::uint64_t stream) {
  std::vector<int> counts(players, actions);
  int P = 1;
  for (int c : counts) P *= c;
  std::vector<Vec> tables;
  for (int i = 0; i < players; ++i) {
    tables.push_back(random_matrix(P, 1, seed, stream * 16 + i).col(0));
  }
  return NormalFormGame(counts, tables);
}

json mediator_series(Run& run, const std::string& label, const CeRun& ce, int n) {
  const int T = ce.trace.length();
  json info{{"label", label}, {"rows", T}, {"eta", ce.eta}};
  if (run.write) {
    CsvWriter csv(run.file(label + ".csv"), mediator_columns(n));
    for (int t = 0; t < T; ++t) {
      std::vector<double> row{static_cast<double>(t + 1), ce.gap_last[t], ce.gap_avg[t],
                              ce.mediator_dreg[t]};
      for (int i = 0; i < n; ++i) row.push_back(ce.player_regret[i][t]);
      csv.row(row);
    }
    csv.close();
    info["csv"] = label + ".csv";
    write_json(run.file(label + ".json"), ce.result_json());
    info["result"] = label + ".json";
  }
  info["final"] = {{"ce_gap_last", ce.gap_last.back()},
                   {"ce_gap_avg", ce.gap_avg.back()},
                   {"mediator_dreg", ce.mediator_dreg.back()}};
  info["mu_avg"] = vector_to_json(ce.mu_avg);
  run.write_trace(label, ce.trace, info);
  return info;
}

void run_metalearn_ce(Run& run) {
  const int n = run.integer("players");
  const int k = run.integer("actions");
  const int H = run.integer("H");
  const int m = run.integer("m");
  const std::string mode = run.text("games");
  if (mode != "copies" && mode != "random") {
    throw std::invalid_argument("metalearn-ce: games must be 'copies' or 'random'");
  }
  std::vector<NormalFormGame> games;
  for (int h = 0; h < H; ++h) {
    games.push_back(random_normal_form(n, k, run.config.seed, mode == "copies" ? 0 : h));
  }
  CeOptions opts;
  opts.eta = run.real("eta");
  opts.prediction = prediction_from_string(run.text("prediction"));
  const MetaCeResult meta = run_metalearning_ce(games, m, run.real("eps"), opts);
  json info = mediator_series(run, "metalearn_ce", meta.run, n);
  info["iterations"] = meta.iterations;
  info["similarity"] = meta.similarity;
  write_blocks(run, "blocks.csv", meta.iterations);
  if (run.write) info["blocks_csv"] = "blocks.csv";
  run.summary.series.push_back(info);
  run.summary.extra["iterations"] = meta.iterations;
  run.summary.extra["later_to_first_ratio"] = block_ratio(meta.iterations);
  run.summary.extra["similarity"] = meta.similarity;
  const GameSequence seq = mediator_sequence(games, meta.run.schedule);
  run.add_checks("metalearn_ce", mediator_checks(meta.run.trace, seq));
}

void run_strong_saddle(Run& run) {
  const int d = run.integer("d");
  const int H = run.integer("H");
  const double mu = run.real("mu");
  if (!(mu > 0.0)) throw std::invalid_argument("strong-saddle: mu must be > 0");
  std::vector<Game> games;
  CounterRng rng(run.config.seed, 100);
  for (int h = 0; h < H; ++h) {
    QuadraticSaddle g{random_matrix(d, d, run.config.seed, h), mu, {}, {}};
    g.x0 = random_simplex_point(d, rng);
    g.y0 = random_simplex_point(d, rng);
    games.push_back(g);
  }
  const double L = operator_lipschitz(gen_metalearning(games, 1));
  double eta = run.real("eta");
  if (eta <= 0.0) eta = std::min(1.0 / (8.0 * L), 1.0 / (2.0 * mu));
  int m = run.integer("m");
  if (m <= 0) m = static_cast<int>(std::ceil(2.0 / (eta * mu)));
  const GameSequence seq = gen_metalearning(games, m);
  const Trace trace = run_dynamics(seq, learners_for(run.text("learner"), eta, 2));
  const VariationReport report = variation_report(seq);
  json info = two_player_series(run, "saddle", seq, trace, matrix_variation_increments(seq));
  double closest = std::numeric_limits<double>::infinity();
  for (int t = 1; t <= trace.length(); ++t) {
    const std::vector<Vec> z = trace.profile(t);
    const NECertificate& c = report.certificates[t - 1];
    closest = std::min(closest, std::sqrt((z[0] - c.x_star()).squaredNorm() +
                                          (z[1] - c.y_star()).squaredNorm()));
  }
  info["eta"] = eta;
  info["m"] = m;
  info["min_dist_to_ne"] = closest;
  info["variation"] = report.to_json();
  run.summary.series.push_back(info);
  run.add_checks("saddle", standard_checks(trace, seq, report));
}

void run_kswitch(Run& run) {
  const int d = run.integer("d");
  const int T = run.integer("T");
  const GameSequence seq = constant_sequence(MatrixGame{random_matrix(d, d, run.config.seed, 0)}, T);
  const double eta = run.real("eta") > 0.0 ? run.real("eta") : default_eta(seq);
  const Trace trace = run_dynamics(seq, learners_for("ogd", eta, 2));
  const BoundConstants c = bound_constants(seq);
  std::vector<double> ks, kx, ky;
  json rows = json::array();
  std::unique_ptr<CsvWriter> csv;
  if (run.write) csv = std::make_unique<CsvWriter>(run.file("kswitch.csv"), kswitch_columns());
  for (const json& v : as_list(run.param("K"))) {
    const int K = v.get<int>();
    const double x = k_switch_dreg(trace, 0, K);
    const double y = k_switch_dreg(trace, 1, K);
    const CheckResult check = check_kswitch_theorem(trace, K, c);
    const double bound = check.applicable ? check.margin + x + y : std::nan("");
    if (csv) csv->row({static_cast<double>(K), x, y, x + y, bound});
    ks.push_back(K);
    kx.push_back(x);
    ky.push_back(y);
    rows.push_back({{"K", K}, {"kdreg_x", x}, {"kdreg_y", y}});
    run.summary.checks.push_back({"K=" + std::to_string(K), check});
  }
  if (csv) csv->close();
  json info{{"label", "kswitch"}, {"rows", rows.size()}, {"eta", eta}, {"values", rows}};
  if (run.write) info["csv"] = "kswitch.csv";
  const VariationReport report = variation_report(seq);
  run.write_trace("kswitch", trace, info);
  run.summary.series.push_back(info);
  run.summary.extra["exponent_x"] = log_log_slope(ks, kx);
  run.summary.extra["exponent_y"] = log_log_slope(ks, ky);
  run.add_checks("kswitch", standard_checks(trace, seq, report));
}

void run_twopoint(Run& run) {
  const int T = run.integer("T");
  const double eta = run.real("eta");
  Mat A(2, 2);
  A << 1, -1, -1, 1;
  const Vec x0 = vector_from_json(run.param("x0"));
  const Vec y0 = vector_from_json(run.param("y0"));
  check_simplex_point(x0, 1e-9, "twopoint x0");
  check_simplex_point(y0, 1e-9, "twopoint y0");
  const Trace trace = run_averaged_two_point(MatrixGame{A}, eta, T, std::make_pair(x0, y0));
  const GameSequence seq = constant_sequence(MatrixGame{A}, T);
  const std::vector<double> gaps = eq_gap_series(trace, seq);
  const std::vector<double> dx = running_max_dynamic_regret(trace, 0);
  const std::vector<double> dy = running_max_dynamic_regret(trace, 1);
  json info{{"label", "twopoint"}, {"rows", T}};
  if (run.write) {
    CsvWriter csv(run.file("twopoint.csv"), twopoint_columns());
    for (int t = 0; t < T; ++t) {
      csv.row({static_cast<double>(t + 1), gaps[t], (t + 1) * gaps[t], dx[t], dy[t]});
    }
    csv.close();
    info["csv"] = "twopoint.csv";
  }
  json marks = json::array();
  for (int t = 100; t <= T; t *= 10) {
    marks.push_back({{"t", t}, {"t_gap", t * gaps[t - 1]}, {"dreg", dx[t - 1] + dy[t - 1]}});
  }
  info["marks"] = marks;
  info["final"] = {{"eq_gap", gaps.back()}, {"dreg_x_max", dx.back()}, {"dreg_y_max", dy.back()}};
  run.write_trace("twopoint", trace, info);
  run.summary.series.push_back(info);
}

void run_alternating(Run& run) {
  const double delta = run.real("delta");
  const int T = run.integer("T");
  const GameSequence seq = gen_alternating_example(delta, T, run.flag("shifted"));
  const double eta = run.real("eta") > 0.0 ? run.real("eta") : default_eta(seq);
  const Trace trace = run_dynamics(seq, learners_for("ogd", eta, 2));
  const VariationReport report = variation_report(seq);
  const CertifiedVariation uniform = uniform_certificates(seq);
  json info = two_player_series(run, "alternating", seq, trace, matrix_variation_increments(seq));
  info["eta"] = eta;
  info["variation"] = report.to_json();
  info["uniform_certificates"] = {{"first_order", uniform.first_order},
                                  {"eps_sum", uniform.eps_sum}};
  run.summary.series.push_back(info);
  run.summary.extra["V_NE"] = report.V_NE;
  run.summary.extra["uniform_first_order"] = uniform.first_order;
  run.summary.extra["uniform_eps_sum"] = uniform.eps_sum;
  run.add_checks("alternating", standard_checks(trace, seq, report));
  VariationReport alt = report;
  alt.V_NE = uniform.first_order;
  alt.eps_sum = uniform.eps_sum;
  alt.certificates = uniform.certificates;
  CheckResult p = check_pathlength_theorem(trace, alt, eta, bound_constants(seq));
  p.name = "pathlength_uniform";
  CheckResult nn = check_nonnegativity(trace, seq, alt);
  nn.name = "nonnegativity_uniform";
  run.add_checks("alternating", {p, nn});
}

using Body = std::function<void(Run&)>;

struct Entry {
  ExperimentInfo info;
  Body body;
};

const std::vector<Entry>& entries() {
  static const std::vector<Entry> all = [] {
    std::vector<Entry> e;
    const json pot{{"d", 50}, {"T", 200}, {"eta", 0.1}, {"write_trace", true}};
    json gd = pot;
    gd["alpha"] = {0.1, 0.2, 0.5};
    gd["learner"] = "gd";
    e.push_back({{"pot-gd", "identical-interest power-law drift, gradient descent", gd, 1},
                 [](Run& r) { run_potential(r, false); }});
    json mwu = gd;
    mwu["learner"] = "mwu";
    e.push_back({{"pot-mwu", "identical-interest power-law drift, multiplicative weights", mwu, 1},
                 [](Run& r) { run_potential(r, false); }});
    json eps = pot;
    eps["epsilon"] = {0.1, 0.01, 0.001};
    eps["learner"] = "gd";
    e.push_back({{"pot-eps", "identical-interest linear drift, gradient descent", eps, 1},
                 [](Run& r) { run_potential(r, true); }});
    e.push_back({{"zs-ogd", "zero-sum power-law drift, optimistic gradient descent",
                  json{{"d", 10}, {"T", 1000}, {"eta", 0.01}, {"alpha", {0.7, 1.0, 2.0}},
                       {"learner", "ogd"}, {"write_trace", true}},
                  1},
                 run_zs_ogd});
    e.push_back({{"metalearn-zs", "zero-sum meta-learning over H blocks of m rounds",
                  json{{"d", 2}, {"H", 10}, {"m", 500}, {"eps", 1e-3}, {"games", "copies"},
                       {"eta", 0.0}, {"learner", "ogd"}, {"write_trace", true}},
                  1},
                 run_metalearn_zs});
    e.push_back({{"metalearn-ce", "mediator meta-learning of correlated equilibria",
                  json{{"players", 2}, {"actions", 2}, {"H", 10}, {"m", 500}, {"eps", 1e-3},
                       {"games", "copies"}, {"eta", 0.0}, {"prediction", "last_utility"},
                       {"write_trace", true}},
                  1},
                 run_metalearn_ce});
    e.push_back({{"strong-saddle", "strongly convex-concave meta-learning",
                  json{{"d", 4}, {"H", 5}, {"m", 0}, {"mu", 1.0}, {"eta", 0.0},
                       {"learner", "ogd"}, {"write_trace", true}},
                  1},
                 run_strong_saddle});
    e.push_back({{"kswitch", "K-switch dynamic regret in a static zero-sum game",
                  json{{"d", 5}, {"T", 2000}, {"K", {1, 2, 4, 8, 16, 32}}, {"eta", 0.0},
                       {"write_trace", true}},
                  1},
                 run_kswitch});
    e.push_back({{"twopoint", "averaged two-point play on matching pennies",
                  json{{"T", 10000}, {"eta", 0.1}, {"x0", {0.9, 0.1}}, {"y0", {0.2, 0.8}},
                       {"write_trace", true}},
                  1},
                 run_twopoint});
    e.push_back({{"alternating-2x2", "alternating diagonal 2x2 games",
                  json{{"delta", 1e-6}, {"T", 100}, {"eta", 0.0}, {"shifted", false},
                       {"write_trace", true}},
                  1},
                 run_alternating});
    return e;
  }();
  return all;
}

const Entry& find_entry(const std::string& name) {
  for (const Entry& e : entries()) {
    if (e.info.name == name) return e;
  }
  throw std::invalid_argument("unknown experiment: " + name);
}

}  // namespace

json ExperimentConfig::to_json() const {
  return {{"schema_version", schema_version}, {"name", name}, {"seed", seed},
          {"params", params},                 {"out_dir", out_dir}};
}

ExperimentConfig ExperimentConfig::from_json(const json& j) {
  ExperimentConfig c;
  c.schema_version = j.at("schema_version").get<int>();
  if (c.schema_version != kConfigSchemaVersion) {
    throw std::invalid_argument("config: unsupported schema_version " +
                                std::to_string(c.schema_version));
  }
  c.name = j.at("name").get<std::string>();
  if (!j.contains("seed")) throw std::invalid_argument("config: seed is mandatory");
  c.seed = j.at("seed").get<std::uint64_t>();
  ExperimentConfig defaults = default_config(c.name);
  c.params = defaults.params;
  const json params = j.value("params", json::object());
  for (const auto& [k, v] : params.items()) {
    if (!c.params.contains(k)) throw std::invalid_argument("config: unknown parameter " + k);
    c.params[k] = v;
  }
  c.out_dir = j.value("out_dir", std::string());
  return c;
}

bool RunSummary::passed() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const LabeledCheck& c) { return c.result.passed(); });
}

json RunSummary::to_json() const {
  json cj = json::array();
  for (const LabeledCheck& c : checks) {
    json j = c.result.to_json();
    j["series"] = c.series;
    cj.push_back(j);
  }
  return {{"schema_version", kConfigSchemaVersion},
          {"name", name},
          {"seed", seed},
          {"params", params},
          {"series", series},
          {"extra", extra},
          {"checks", cj},
          {"passed", passed()},
          {"wall_seconds", wall_seconds}};
}

const std::vector<ExperimentInfo>& experiment_registry() {
  static const std::vector<ExperimentInfo> infos = [] {
    std::vector<ExperimentInfo> out;
    for (const Entry& e : entries()) out.push_back(e.info);
    return out;
  }();
  return infos;
}

const ExperimentInfo& find_experiment(const std::string& name) { return find_entry(name).info; }

ExperimentConfig default_config(const std::string& name) {
  const ExperimentInfo& info = find_experiment(name);
  ExperimentConfig c;
  c.name = info.name;
  c.seed = info.default_seed;
  c.params = info.defaults;
  return c;
}

json parse_value(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error&) {
  }
  if (text.find(',') != std::string::npos) {
    json list = json::array();
    std::size_t start = 0;
    while (true) {
      const std::size_t pos = text.find(',', start);
      list.push_back(parse_value(text.substr(start, pos - start)));
      if (pos == std::string::npos) break;
      start = pos + 1;
    }
    return list;
  }
  return text;
}

void apply_override(ExperimentConfig& config, const std::string& assignment) {
  const std::size_t eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0) {
    throw std::invalid_argument("override must be key=value: " + assignment);
  }
  const std::string key = assignment.substr(0, eq);
  const json value = parse_value(assignment.substr(eq + 1));
  if (key == "seed") {
    if (!value.is_number_unsigned()) throw std::invalid_argument("seed must be a non-negative integer");
    config.seed = value.get<std::uint64_t>();
    return;
  }
  if (!config.params.contains(key)) {
    throw std::invalid_argument("unknown parameter for " + config.name + ": " + key);
  }
  config.params[key] = value;
}

std::string default_out_dir() {
  const char* env = std::getenv(kOutDirEnv);
  return env && *env ? std::string(env) : std::string("runs");
}

RunSummary run_experiment(const ExperimentConfig& config) {
  const Entry& entry = find_entry(config.name);
  const auto start = std::chrono::steady_clock::now();
  RunSummary summary;
  summary.name = config.name;
  summary.seed = config.seed;
  summary.params = config.params;
  Run run{config, summary, fs::path(config.out_dir), !config.out_dir.empty()};
  if (run.write) {
    std::error_code ec;
    fs::create_directories(run.dir, ec);
    if (ec || !fs::is_directory(run.dir)) {
      throw IoError("cannot create output directory: " + config.out_dir);
    }
    write_json(run.file("config.json"), config.to_json());
  }
  entry.body(run);
  summary.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (run.write) {
    CsvWriter csv(run.file("checks.csv"), checks_columns());
    for (const LabeledCheck& c : summary.checks) {
      const CheckResult& r = c.result;
      csv.raw({csv_quote(c.series), r.name, std::to_string(r.player), num(r.margin), num(r.slack),
               r.applicable ? "1" : "0", r.passed() ? "1" : "0", csv_quote(r.note)});
    }
    csv.close();
    write_json(run.file("summary.json"), summary.to_json());
  }
  return summary;
}

RunSummary run_named(const std::string& name, const std::vector<std::string>& overrides,
                     const std::string& out_dir, std::optional<std::uint64_t> seed) {
  ExperimentConfig config = default_config(name);
  for (const std::string& o : overrides) apply_override(config, o);
  if (seed) config.seed = *seed;
  config.out_dir = out_dir;
  return run_experiment(config);
}

std::vector<GridAxis> parse_grid(const std::vector<std::string>& specs) {
  std::vector<GridAxis> grid;
  for (const std::string& s : specs) {
    const std::size_t eq = s.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == s.size()) {
      throw std::invalid_argument("grid axis must be key=v1,v2,...: " + s);
    }
    GridAxis axis{s.substr(0, eq), {}};
    const json v = parse_value(s.substr(eq + 1));
    axis.values = as_list(v);
    for (const GridAxis& g : grid) {
      if (g.key == axis.key) throw std::invalid_argument("duplicate grid axis: " + axis.key);
    }
    grid.push_back(std::move(axis));
  }
  return grid;
}

std::vector<SweepCell> sweep(const ExperimentConfig& base, const std::vector<GridAxis>& grid,
                             int jobs) {
  std::size_t total = 1;
  bool seed_axis = false;
  for (const GridAxis& a : grid) {
    if (a.values.empty()) throw std::invalid_argument("grid axis has no values: " + a.key);
    total *= a.values.size();
    seed_axis = seed_axis || a.key == "seed";
  }
  std::vector<SweepCell> cells(total);
  for (std::size_t k = 0; k < total; ++k) {
    SweepCell& cell = cells[k];
    cell.index = static_cast<int>(k);
    cell.config = base;
    if (!seed_axis) cell.config.seed = derive_seed(base.seed, k);
    std::size_t rest = k;
    for (std::size_t a = grid.size(); a-- > 0;) {
      const GridAxis& axis = grid[a];
      const json& v = axis.values[rest % axis.values.size()];
      rest /= axis.values.size();
      const std::string text = v.is_string() ? v.get<std::string>() : v.dump();
      apply_override(cell.config, axis.key + "=" + text);
    }
    if (!base.out_dir.empty()) {
      char name[32];
      std::snprintf(name, sizeof(name), "cell_%03zu", k);
      cell.config.out_dir = (fs::path(base.out_dir) / name).string();
    }
  }
  if (jobs <= 0) jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  jobs = std::min<int>(jobs, static_cast<int>(total));
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t k; (k = next.fetch_add(1)) < total;) {
      try {
        cells[k].summary = run_experiment(cells[k].config);
      } catch (const IoError& e) {
        cells[k].error = e.what();
        cells[k].io_error = true;
      } catch (const std::exception& e) {
        cells[k].error = e.what();
      }
    }
  };
  std::vector<std::thread> pool;
  for (int j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();
  return cells;
}

void write_sweep_table(const std::vector<SweepCell>& cells, const std::vector<GridAxis>& grid,
                       const std::string& path) {
  std::vector<std::string> metrics;
  for (const SweepCell& c : cells) {
    if (!c.error.empty() || c.summary.series.empty()) continue;
    const json& s = c.summary.series.front();
    if (s.contains("final")) {
      for (const auto& [k, v] : s.at("final").items()) metrics.push_back(k);
    }
    break;
  }
  std::vector<std::string> header{"cell", "seed"};
  for (const GridAxis& a : grid) {
    if (a.key != "seed") header.push_back(a.key);
  }
  header.push_back("series");
  header.insert(header.end(), metrics.begin(), metrics.end());
  header.push_back("passed");
  header.push_back("error");
  CsvWriter csv(path, header);
  for (const SweepCell& c : cells) {
    std::vector<std::string> prefix{std::to_string(c.index), std::to_string(c.config.seed)};
    for (const GridAxis& a : grid) {
      if (a.key == "seed") continue;
      const json& v = c.config.params.at(a.key);
      prefix.push_back(csv_quote(v.is_string() ? v.get<std::string>() : v.dump()));
    }
    if (!c.error.empty()) {
      std::vector<std::string> row = prefix;
      row.push_back("");
      row.insert(row.end(), metrics.size(), "");
      row.push_back("0");
      row.push_back(csv_quote(c.error));
      csv.raw(row);
      continue;
    }
    for (const json& s : c.summary.series) {
      std::vector<std::string> row = prefix;
      row.push_back(csv_quote(s.value("label", std::string())));
      for (const std::string& m : metrics) {
        const json& f = s.value("final", json::object());
        row.push_back(f.contains(m) && f.at(m).is_number() ? num(f.at(m).get<double>()) : "");
      }
      row.push_back(c.summary.passed() ? "1" : "0");
      row.push_back("");
      csv.raw(row);
    }
  }
  csv.close();
}

std::vector<double> matrix_variation_increments(const GameSequence& seq) {
  const int T = seq.length();
  std::vector<double> inc(T, 0.0);
  Game prev = seq.game_at(1);
  for (int t = 2; t <= T; ++t) {
    if (seq.game_index(t) == seq.game_index(t - 1)) continue;
    Game cur = seq.game_at(t);
    if (seq.kind() == GameKind::kPolymatrix) {
      const auto& a = std::get<PolymatrixGame>(prev);
      const auto& b = std::get<PolymatrixGame>(cur);
      double s = 0.0;
      for (const auto& [key, B] : b.blocks()) {
        const auto it = a.blocks().find(key);
        const Mat diff = it == a.blocks().end() ? B : Mat(B - it->second);
        const double nrm = spectral_norm(diff);
        s += nrm * nrm;
      }
      for (const auto& [key, A] : a.blocks()) {
        if (!b.blocks().count(key)) {
          const double nrm = spectral_norm(A);
          s += nrm * nrm;
        }
      }
      inc[t - 1] = s;
    } else if (seq.kind() == GameKind::kNormalForm) {
      throw std::invalid_argument("matrix_variation_increments: normal-form sequences have no matrix");
    } else {
      const double nrm = spectral_norm(seq.matrix_at(t) - seq.matrix_at(t - 1));
      inc[t - 1] = nrm * nrm;
    }
    prev = std::move(cur);
  }
  return inc;
}

double log_log_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) throw std::invalid_argument("log_log_slope: size mismatch");
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] > 0.0 && y[i] > 0.0) {
      lx.push_back(std::log(x[i]));
      ly.push_back(std::log(y[i]));
    }
  }
  if (lx.size() < 2) return std::nan("");
  const double n = static_cast<double>(lx.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    mx += lx[i] / n;
    my += ly[i] / n;
  }
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxy += (lx[i] - mx) * (ly[i] - my);
    sxx += (lx[i] - mx) * (lx[i] - mx);
  }
  return sxx > 0.0 ? sxy / sxx : std::nan("");
}

}  // namespace tvg
