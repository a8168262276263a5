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


#include <filesystem>
#include <fstream>
#include <map>

#include "tvg/experiments.h"
#include "tvg/mediator.h"
#include "tvg/metrics.h"

namespace tvg {

using nlohmann::json;

namespace {

bool is_two_point(const Trace& trace) {
  const json& p = trace.sequence.value("params", json::object());
  return p.value("two_point", false);
}

Vec best_vertex(const Vec& u) {
  Eigen::Index a;
  u.maxCoeff(&a);
  return vertex(static_cast<int>(u.size()), static_cast<int>(a));
}

std::vector<Vec> best_response_comparators(const Trace& trace, int player) {
  std::vector<Vec> out;
  for (const Round& r : trace.rounds) out.push_back(best_vertex(r.players[player].u));
  return out;
}

std::vector<Vec> best_fixed_comparators(const Trace& trace, int player) {
  Vec total = Vec::Zero(trace.at(1, player).u.size());
  for (const Round& r : trace.rounds) total += r.players[player].u;
  return std::vector<Vec>(trace.length(), best_vertex(total));
}

CheckResult rvu_for(const Trace& trace, int player, const std::vector<Vec>& comps) {
  const LearnerSpec& l = trace.learners.at(player);
  CheckResult r = check_rvu_dynamic(trace, player, comps, l.eta, l.regularizer);
  return r;
}

}  // namespace

std::vector<CheckResult> standard_checks(const Trace& trace, const GameSequence& seq,
                                         const VariationReport& report) {
  std::vector<CheckResult> out;
  if (is_two_point(trace)) {
    CheckResult r;
    r.name = "two_point";
    r.applicable = false;
    r.note = "averaged play is not an online learner; no inequality applies";
    out.push_back(r);
    return out;
  }
  const int n = trace.num_players();
  const GameKind kind = seq.kind();
  for (int i = 0; i < n; ++i) {
    std::vector<Vec> comps;
    if (report.has_certificates) {
      for (int t = 0; t < trace.length(); ++t) comps.push_back(report.certificates[t].profile.at(i));
    } else {
      comps = best_response_comparators(trace, i);
    }
    out.push_back(rvu_for(trace, i, comps));
  }
  if (report.has_certificates) out.push_back(check_nonnegativity(trace, seq, report));
  const BoundConstants c = bound_constants(seq);
  if (kind == GameKind::kZeroSum || kind == GameKind::kPolymatrix) {
    out.push_back(check_pathlength_theorem(trace, report, trace.learners.front().eta, c));
  }
  if (kind == GameKind::kZeroSum) {
    out.push_back(check_individual_regret(trace, 0, report, trace.learners.front().eta, c));
    out.push_back(check_individual_regret(trace, 1, report, trace.learners.front().eta, c));
  }
  if (kind == GameKind::kSaddle) {
    out.push_back(check_strong_pathlength_theorem(trace, seq, report, trace.learners.front().eta));
    if (report.has_certificates) {
      out.push_back(check_strong_regret_lower(trace, seq, report.certificates));
    }
  }
  if (kind == GameKind::kIdenticalInterest) out.push_back(check_potential_pathlength(trace, seq));
  out.push_back(check_br_gap_bound(trace, seq));
  out.push_back(check_stability(trace));
  return out;
}

std::vector<CheckResult> mediator_checks(const Trace& trace, const GameSequence& seq) {
  const json& p = seq.descriptor().at("params");
  std::vector<NormalFormGame> games;
  for (const json& g : p.at("games")) games.push_back(std::get<NormalFormGame>(game_from_json(g)));
  const std::vector<int> schedule = p.at("schedule").get<std::vector<int>>();
  if (static_cast<int>(schedule.size()) != trace.length()) {
    throw std::invalid_argument("mediator_checks: schedule length != trace length");
  }
  std::map<int, std::pair<Vec, double>> ce;
  std::vector<Vec> comps;
  double slack = 0.0;
  const int n = trace.num_players() - 1;
  for (int g : schedule) {
    if (!ce.count(g)) {
      const Vec star = solve_ce_lp(games.at(g));
      ce[g] = {star, std::max(0.0, ce_certificate(games[g], star))};
    }
    comps.push_back(ce[g].first);
    slack += n * ce[g].second;
  }
  std::vector<CheckResult> out;
  out.push_back(check_mediator_nonnegativity(trace, comps, slack));
  out.push_back(rvu_for(trace, 0, comps));
  for (int i = 1; i <= n; ++i) out.push_back(rvu_for(trace, i, best_fixed_comparators(trace, i)));
  out.push_back(check_br_gap_bound(trace, seq));
  out.push_back(check_stability(trace));
  return out;
}

std::vector<CheckResult> check_stored_trace(const std::string& path) {
  Trace trace;
  try {
    trace = read_trace_csv(path);
  } catch (const std::runtime_error& e) {
    throw IoError(e.what());
  }
  std::filesystem::path env = path;
  env.replace_extension(".json");
  std::ifstream is(env);
  if (!is) throw IoError("missing trace envelope: " + env.string());
  json envelope;
  try {
    envelope = json::parse(is);
  } catch (const json::parse_error& e) {
    throw IoError("malformed trace envelope " + env.string() + ": " + e.what());
  }
  apply_envelope(envelope, trace);
  const json& desc = trace.sequence;
  if (desc.value("generator", std::string()) == "mediator") {
    const GameSequence seq = mediator_sequence_from_json(desc);
    return mediator_checks(trace, seq);
  }
  const GameSequence seq = sequence_from_json(desc);
  if (seq.length() != trace.length()) {
    throw std::invalid_argument("stored trace length does not match its sequence");
  }
  if (is_two_point(trace)) return standard_checks(trace, seq, VariationReport{});
  return standard_checks(trace, seq, variation_report(seq));
}

}  // namespace tvg
