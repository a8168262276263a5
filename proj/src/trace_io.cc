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

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "tvg/dynamics.h"

namespace tvg {

using nlohmann::json;

namespace {

constexpr const char* kTraceHeader = "t,player,game_index,field,values";

void write_vec(std::ostream& os, const Vec& v) {
  char buf[32];
  for (int i = 0; i < v.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%.17g", v[i]);
    if (i) os << ' ';
    os << buf;
  }
}

Vec parse_vec(const std::string& s) {
  std::vector<double> vals;
  const char* p = s.c_str();
  char* end = nullptr;
  while (*p) {
    while (*p == ' ') ++p;
    if (!*p) break;
    const double v = std::strtod(p, &end);
    if (end == p) throw std::runtime_error("trace csv: malformed number in '" + s + "'");
    vals.push_back(v);
    p = end;
  }
  return Eigen::Map<Vec>(vals.data(), static_cast<Eigen::Index>(vals.size()));
}

}  // namespace

void write_trace_csv(const Trace& trace, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open for writing: " + path);
  os << kTraceHeader << '\n';
  for (const Round& r : trace.rounds) {
    for (size_t i = 0; i < r.players.size(); ++i) {
      const PlayerRound& p = r.players[i];
      const std::pair<const char*, const Vec*> fields[] = {
          {"x", &p.x}, {"x_hat", &p.x_hat}, {"x_hat_next", &p.x_hat_next}, {"m", &p.m},
          {"u", &p.u}, {"aux", &p.aux},     {"aux_u", &p.aux_u}};
      for (const auto& [name, v] : fields) {
        if (v->size() == 0) continue;
        os << r.t << ',' << i << ',' << r.game_index << ',' << name << ',';
        write_vec(os, *v);
        os << '\n';
      }
    }
  }
  if (!os) throw std::runtime_error("write failed: " + path);
}

Trace read_trace_csv(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open trace: " + path);
  std::string line;
  if (!std::getline(is, line) || line != kTraceHeader) {
    throw std::runtime_error("trace csv: unexpected header in " + path);
  }
  Trace trace;
  int max_player = -1;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string t_s, p_s, g_s, field, values;
    if (!std::getline(ss, t_s, ',') || !std::getline(ss, p_s, ',') ||
        !std::getline(ss, g_s, ',') || !std::getline(ss, field, ',')) {
      throw std::runtime_error("trace csv: malformed row: " + line);
    }
    std::getline(ss, values);
    const int t = std::stoi(t_s);
    const int player = std::stoi(p_s);
    if (t < 1 || player < 0) throw std::runtime_error("trace csv: bad indices: " + line);
    if (t > trace.length()) {
      if (t != trace.length() + 1) throw std::runtime_error("trace csv: rounds out of order");
      trace.rounds.emplace_back();
      trace.rounds.back().t = t;
      trace.rounds.back().game_index = std::stoi(g_s);
    }
    Round& r = trace.rounds[t - 1];
    if (player >= static_cast<int>(r.players.size())) r.players.resize(player + 1);
    max_player = std::max(max_player, player);
    PlayerRound& p = r.players[player];
    Vec v = parse_vec(values);
    if (field == "x") p.x = v;
    else if (field == "x_hat") p.x_hat = v;
    else if (field == "x_hat_next") p.x_hat_next = v;
    else if (field == "m") p.m = v;
    else if (field == "u") p.u = v;
    else if (field == "aux") p.aux = v;
    else if (field == "aux_u") p.aux_u = v;
    else throw std::runtime_error("trace csv: unknown field " + field);
  }
  for (Round& r : trace.rounds) {
    if (static_cast<int>(r.players.size()) != max_player + 1) {
      throw std::runtime_error("trace csv: inconsistent player count");
    }
  }
  return trace;
}

json trace_envelope(const Trace& trace) {
  json learners = json::array();
  for (const LearnerSpec& l : trace.learners) {
    learners.push_back({{"name", l.name()},
                        {"regularizer", to_string(l.regularizer)},
                        {"prediction", to_string(l.prediction)},
                        {"eta", l.eta}});
  }
  return json{{"schema_version", 1}, {"seed", trace.seed},         {"T", trace.length()},
              {"learners", learners}, {"sequence", trace.sequence}};
}

void apply_envelope(const json& envelope, Trace& trace) {
  trace.learners.clear();
  for (const auto& l : envelope.at("learners")) {
    trace.learners.push_back({regularizer_from_string(l.at("regularizer").get<std::string>()),
                              prediction_from_string(l.at("prediction").get<std::string>()),
                              l.at("eta").get<double>()});
  }
  trace.seed = envelope.value("seed", std::uint64_t{0});
  trace.sequence = envelope.at("sequence");
  if (envelope.at("T").get<int>() != trace.length()) {
    throw std::runtime_error("trace envelope: T does not match the trace rows");
  }
  if (!trace.rounds.empty() &&
      static_cast<int>(trace.rounds.front().players.size()) != trace.num_players()) {
    throw std::runtime_error("trace envelope: learner count does not match the trace rows");
  }
}

}  // namespace tvg
