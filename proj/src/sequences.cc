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

#include "tvg/sequences.h"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace tvg {

using nlohmann::json;

GameSequence::GameSequence(GameKind kind, int T, Generator at, Indexer index, json descriptor)
    : kind_(kind), T_(T), at_(std::move(at)), index_(std::move(index)),
      descriptor_(std::move(descriptor)) {
  if (T_ < 1) throw std::invalid_argument("GameSequence: T must be >= 1");
  Game first = at_(1);
  if (kind_of(first) != kind_) throw std::invalid_argument("GameSequence: kind tag mismatch");
  dims_ = strategy_dims(first);
}

void GameSequence::check_round(int t) const {
  if (t < 1 || t > T_) {
    std::ostringstream msg;
    msg << "GameSequence: round " << t << " outside [1, " << T_ << "]";
    throw std::out_of_range(msg.str());
  }
}

Game GameSequence::game_at(int t) const {
  check_round(t);
  return at_(t);
}

int GameSequence::game_index(int t) const {
  check_round(t);
  return index_(t);
}

Mat GameSequence::matrix_at(int t) const {
  Game g = game_at(t);
  switch (kind_) {
    case GameKind::kZeroSum: return std::get<MatrixGame>(g).A;
    case GameKind::kIdenticalInterest: return std::get<IdenticalInterestGame>(g).A;
    case GameKind::kSaddle: return std::get<QuadraticSaddle>(g).A;
    default: throw std::logic_error("matrix_at: sequence kind has no single payoff matrix");
  }
}

GameSequence GameSequence::with_descriptor(json descriptor) const {
  GameSequence copy = *this;
  copy.descriptor_ = std::move(descriptor);
  return copy;
}

namespace {

int round_index(int t) { return t; }

json base_descriptor(const std::string& generator, GameKind kind, int T) {
  return json{{"generator", generator}, {"kind", to_string(kind)}, {"T", T}, {"params", json::object()}};
}

void check_same_shape(const Mat& A, const Mat& B, const char* what) {
  if (A.rows() != B.rows() || A.cols() != B.cols()) {
    throw std::invalid_argument(std::string(what) + ": shape mismatch between A0 and P");
  }
  if (!A.allFinite() || !B.allFinite()) {
    throw std::invalid_argument(std::string(what) + ": non-finite matrix entry");
  }
}

// Coefficients c_t with A^(t) = A0 + c_t P.
std::shared_ptr<const std::vector<double>> powerlaw_coefficients(double alpha, int T,
                                                                 DriftBase base) {
  auto c = std::make_shared<std::vector<double>>(T + 1, 0.0);
  double acc = 0.0;
  for (int t = 1; t <= T; ++t) {
    if (base == DriftBase::kZero || t >= 2) acc += std::pow(static_cast<double>(t), -alpha);
    (*c)[t] = acc;
  }
  return c;
}

}  // namespace

GameSequence constant_sequence(const Game& g, int T) {
  json d = base_descriptor("constant", kind_of(g), T);
  d["params"]["game"] = game_to_json(g);
  return GameSequence(kind_of(g), T, [g](int) { return g; }, [](int) { return 1; }, d);
}

GameSequence gen_drift_powerlaw(const Mat& A0, const Mat& P, double alpha, int T,
                                DriftBase base) {
  check_same_shape(A0, P, "gen_drift_powerlaw");
  if (!(alpha > 0.0)) throw std::invalid_argument("gen_drift_powerlaw: alpha must be > 0");
  if (T < 1) throw std::invalid_argument("gen_drift_powerlaw: T must be >= 1");
  auto coef = powerlaw_coefficients(alpha, T, base);
  json d = base_descriptor("drift_powerlaw", GameKind::kZeroSum, T);
  d["params"] = {{"A0", matrix_to_json(A0)}, {"P", matrix_to_json(P)}, {"alpha", alpha},
                 {"base", base == DriftBase::kZero ? "zero" : "one"}};
  const bool constant = P.isZero(0.0);
  return GameSequence(
      GameKind::kZeroSum, T,
      [A0, P, coef](int t) { return Game(MatrixGame{A0 + (*coef)[t] * P}); },
      constant ? GameSequence::Indexer([](int) { return 1; }) : GameSequence::Indexer(round_index),
      d);
}

GameSequence gen_drift_linear(const Mat& A0, const Mat& P, double eps, int T) {
  check_same_shape(A0, P, "gen_drift_linear");
  if (!std::isfinite(eps)) throw std::invalid_argument("gen_drift_linear: eps must be finite");
  if (T < 1) throw std::invalid_argument("gen_drift_linear: T must be >= 1");
  json d = base_descriptor("drift_linear", GameKind::kZeroSum, T);
  d["params"] = {{"A0", matrix_to_json(A0)}, {"P", matrix_to_json(P)}, {"epsilon", eps}};
  const bool constant = eps == 0.0 || P.isZero(0.0);
  return GameSequence(
      GameKind::kZeroSum, T,
      [A0, P, eps](int t) { return Game(MatrixGame{A0 + (eps * t) * P}); },
      constant ? GameSequence::Indexer([](int) { return 1; }) : GameSequence::Indexer(round_index),
      d);
}

GameSequence gen_alternating_example(double delta, int T, bool shifted) {
  if (!(delta > 0.0)) throw std::invalid_argument("gen_alternating_example: delta must be > 0");
  if (T < 4) throw std::invalid_argument("gen_alternating_example: T must be >= 4");
  json d = base_descriptor("alternating", GameKind::kZeroSum, T);
  d["params"] = {{"delta", delta}, {"shifted", shifted}};
  return GameSequence(
      GameKind::kZeroSum, T,
      [delta, shifted](int t) {
        Mat A = Mat::Zero(2, 2);
        if (t % 2 == 1) {
          A(0, 0) = 2 * delta;
          A(1, 1) = delta;
          if (shifted) A.array() += 1.0;
        } else {
          A(0, 0) = delta;
          A(1, 1) = 2 * delta;
        }
        return Game(MatrixGame{A});
      },
      round_index, d);
}

GameSequence gen_identical_interest(const GameSequence& seq) {
  if (seq.kind() != GameKind::kZeroSum) {
    throw std::invalid_argument("gen_identical_interest: input must be a zero-sum sequence");
  }
  json d = base_descriptor("identical_interest", GameKind::kIdenticalInterest, seq.length());
  d["params"]["inner"] = seq.descriptor();
  return GameSequence(
      GameKind::kIdenticalInterest, seq.length(),
      [seq](int t) { return Game(IdenticalInterestGame{std::get<MatrixGame>(seq.game_at(t)).A}); },
      [seq](int t) { return seq.game_index(t); }, d);
}

GameSequence gen_polymatrix(const PolymatrixGame& base, int T,
                            const std::optional<PolymatrixDrift>& drift) {
  if (T < 1) throw std::invalid_argument("gen_polymatrix: T must be >= 1");
  json d = base_descriptor("polymatrix", GameKind::kPolymatrix, T);
  d["params"]["game"] = game_to_json(base);
  if (!drift || drift->increments.empty()) {
    return GameSequence(GameKind::kPolymatrix, T, [base](int) { return Game(base); },
                        [](int) { return 1; }, d);
  }
  if (!(drift->alpha > 0.0)) throw std::invalid_argument("gen_polymatrix: alpha must be > 0");
  PolymatrixGame::Blocks inc;
  json inc_json = json::array();
  for (const auto& [key, P] : drift->increments) {
    const Mat& A = base.block(key.first, key.second);
    if (A.rows() != P.rows() || A.cols() != P.cols()) {
      throw std::invalid_argument("gen_polymatrix: drift increment shape mismatch");
    }
    inc[key] = P;
    inc[{key.second, key.first}] = -P.transpose();
    inc_json.push_back({{"i", key.first}, {"j", key.second}, {"P", matrix_to_json(P)}});
  }
  d["params"]["drift"] = {{"alpha", drift->alpha}, {"increments", inc_json}};
  auto coef = powerlaw_coefficients(drift->alpha, T, DriftBase::kZero);
  return GameSequence(
      GameKind::kPolymatrix, T,
      [base, inc, coef](int t) {
        PolymatrixGame::Blocks blocks = base.blocks();
        for (const auto& [key, P] : inc) blocks[key] += (*coef)[t] * P;
        return Game(PolymatrixGame(base.dims(), std::move(blocks), 1e-9));
      },
      round_index, d);
}

GameSequence gen_metalearning(const std::vector<Game>& base_games, int m) {
  if (base_games.empty()) throw std::invalid_argument("gen_metalearning: empty game list");
  if (m < 1) throw std::invalid_argument("gen_metalearning: m must be >= 1");
  const GameKind kind = kind_of(base_games.front());
  const std::vector<int> dims = strategy_dims(base_games.front());
  json games = json::array();
  for (const Game& g : base_games) {
    if (kind_of(g) != kind || strategy_dims(g) != dims) {
      throw std::invalid_argument("gen_metalearning: games must share kind and dimensions");
    }
    games.push_back(game_to_json(g));
  }
  const int H = static_cast<int>(base_games.size());
  json d = base_descriptor("metalearning", kind, m * H);
  d["params"] = {{"m", m}, {"games", games}};
  auto shared = std::make_shared<const std::vector<Game>>(base_games);
  return GameSequence(
      kind, m * H, [shared, m](int t) { return (*shared)[(t - 1) / m]; },
      [m](int t) { return (t - 1) / m + 1; }, d);
}

namespace {

DriftBase drift_base_from_string(const std::string& s) {
  if (s == "zero") return DriftBase::kZero;
  if (s == "one") return DriftBase::kOne;
  throw std::invalid_argument("unknown drift base: " + s);
}

}  // namespace

GameSequence sequence_from_json(const json& j) {
  const std::string gen = j.at("generator").get<std::string>();
  const int T = j.at("T").get<int>();
  const json& p = j.at("params");
  GameSequence seq = [&]() -> GameSequence {
    if (gen == "constant") return constant_sequence(game_from_json(p.at("game")), T);
    if (gen == "drift_powerlaw") {
      return gen_drift_powerlaw(matrix_from_json(p.at("A0")), matrix_from_json(p.at("P")),
                                p.at("alpha").get<double>(), T,
                                drift_base_from_string(p.value("base", std::string("zero"))));
    }
    if (gen == "drift_linear") {
      return gen_drift_linear(matrix_from_json(p.at("A0")), matrix_from_json(p.at("P")),
                              p.at("epsilon").get<double>(), T);
    }
    if (gen == "alternating") {
      return gen_alternating_example(p.at("delta").get<double>(), T,
                                     p.value("shifted", false));
    }
    if (gen == "identical_interest") return gen_identical_interest(sequence_from_json(p.at("inner")));
    if (gen == "polymatrix") {
      const Game g = game_from_json(p.at("game"));
      std::optional<PolymatrixDrift> drift;
      if (p.contains("drift")) {
        PolymatrixDrift dr;
        dr.alpha = p.at("drift").at("alpha").get<double>();
        for (const auto& e : p.at("drift").at("increments")) {
          dr.increments.push_back(
              {{e.at("i").get<int>(), e.at("j").get<int>()}, matrix_from_json(e.at("P"))});
        }
        drift = dr;
      }
      return gen_polymatrix(std::get<PolymatrixGame>(g), T, drift);
    }
    if (gen == "metalearning") {
      std::vector<Game> games;
      for (const auto& g : p.at("games")) games.push_back(game_from_json(g));
      GameSequence s = gen_metalearning(games, p.at("m").get<int>());
      if (s.length() != T) throw std::invalid_argument("metalearning descriptor: T != m*H");
      return s;
    }
    throw std::invalid_argument("unknown sequence generator: " + gen);
  }();
  return seq.with_descriptor(j);
}

}  // namespace tvg
