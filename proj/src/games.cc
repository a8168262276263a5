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

#include "tvg/games.h"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "tvg/rng.h"

namespace tvg {

using nlohmann::json;

NormalFormGame::NormalFormGame(std::vector<int> action_counts, std::vector<Vec> utilities)
    : counts_(std::move(action_counts)), utilities_(std::move(utilities)) {
  if (counts_.empty()) throw std::invalid_argument("NormalFormGame: no players");
  if (utilities_.size() != counts_.size()) {
    throw std::invalid_argument("NormalFormGame: one utility table per player required");
  }
  num_profiles_ = 1;
  for (int c : counts_) {
    if (c < 1) throw std::invalid_argument("NormalFormGame: action count must be >= 1");
    num_profiles_ *= c;
  }
  strides_.assign(counts_.size(), 1);
  for (int i = static_cast<int>(counts_.size()) - 2; i >= 0; --i) {
    strides_[i] = strides_[i + 1] * counts_[i + 1];
  }
  for (const Vec& u : utilities_) {
    if (u.size() != num_profiles_) {
      throw std::invalid_argument("NormalFormGame: utility table size != number of profiles");
    }
    if (!u.allFinite()) throw std::invalid_argument("NormalFormGame: non-finite utility");
  }
}

std::vector<int> NormalFormGame::decode(int profile) const {
  std::vector<int> a(counts_.size());
  for (size_t i = 0; i < counts_.size(); ++i) a[i] = (profile / strides_[i]) % counts_[i];
  return a;
}

int NormalFormGame::encode(const std::vector<int>& actions) const {
  if (actions.size() != counts_.size()) throw std::invalid_argument("encode: wrong arity");
  int k = 0;
  for (size_t i = 0; i < counts_.size(); ++i) {
    if (actions[i] < 0 || actions[i] >= counts_[i]) throw std::out_of_range("encode: action");
    k += actions[i] * strides_[i];
  }
  return k;
}

int NormalFormGame::action_of(int profile, int player) const {
  return (profile / strides_[player]) % counts_[player];
}

int NormalFormGame::with_action(int profile, int player, int action) const {
  return profile + (action - action_of(profile, player)) * strides_[player];
}

Vec NormalFormGame::action_values(int player, const std::vector<Vec>& profile) const {
  if (static_cast<int>(profile.size()) != num_players()) {
    throw std::invalid_argument("action_values: profile arity mismatch");
  }
  Vec values = Vec::Zero(counts_[player]);
  for (int k = 0; k < num_profiles_; ++k) {
    double w = 1.0;
    for (int j = 0; j < num_players(); ++j) {
      if (j != player) w *= profile[j][action_of(k, j)];
    }
    if (w != 0.0) values[action_of(k, player)] += w * utilities_[player][k];
  }
  return values;
}

double NormalFormGame::expected_utility(int player, const std::vector<Vec>& profile) const {
  return profile[player].dot(action_values(player, profile));
}

PolymatrixGame::PolymatrixGame(std::vector<int> dims, Blocks blocks, double tol)
    : dims_(std::move(dims)), blocks_(std::move(blocks)) {
  const int n = num_players();
  for (const auto& [key, A] : blocks_) {
    const auto [i, j] = key;
    if (i < 0 || j < 0 || i >= n || j >= n || i == j) {
      throw std::invalid_argument("PolymatrixGame: invalid edge");
    }
    if (A.rows() != dims_[i] || A.cols() != dims_[j]) {
      throw std::invalid_argument("PolymatrixGame: block shape does not match player dims");
    }
    auto mirror = blocks_.find({j, i});
    if (mirror == blocks_.end()) {
      throw std::invalid_argument("PolymatrixGame: missing mirrored block for an edge");
    }
    if ((A.transpose() + mirror->second).cwiseAbs().maxCoeff() > tol) {
      std::ostringstream msg;
      msg << "PolymatrixGame: antisymmetry violated on edge (" << i << "," << j << ")";
      throw std::invalid_argument(msg.str());
    }
  }
}

PolymatrixGame PolymatrixGame::from_edges(
    std::vector<int> dims, const std::vector<std::pair<std::pair<int, int>, Mat>>& edges) {
  Blocks blocks;
  for (const auto& [key, A] : edges) {
    blocks[key] = A;
    blocks[{key.second, key.first}] = -A.transpose();
  }
  return PolymatrixGame(std::move(dims), std::move(blocks));
}

PolymatrixGame PolymatrixGame::from_matrix_game(const Mat& A) {
  return from_edges({static_cast<int>(A.rows()), static_cast<int>(A.cols())}, {{{0, 1}, -A}});
}

const Mat& PolymatrixGame::block(int i, int j) const {
  auto it = blocks_.find({i, j});
  if (it == blocks_.end()) throw std::out_of_range("PolymatrixGame: no such edge");
  return it->second;
}

std::vector<int> PolymatrixGame::neighbors(int i) const {
  std::vector<int> out;
  for (const auto& [key, A] : blocks_) {
    if (key.first == i) out.push_back(key.second);
  }
  return out;
}

Vec PolymatrixGame::utility_gradient(int i, const std::vector<Vec>& profile) const {
  Vec g = Vec::Zero(dims_[i]);
  for (const auto& [key, A] : blocks_) {
    if (key.first == i) g.noalias() += A * profile[key.second];
  }
  return g;
}

Mat PolymatrixGame::joint_operator() const {
  std::vector<int> offset(dims_.size() + 1, 0);
  for (size_t i = 0; i < dims_.size(); ++i) offset[i + 1] = offset[i] + dims_[i];
  Mat M = Mat::Zero(offset.back(), offset.back());
  for (const auto& [key, A] : blocks_) {
    M.block(offset[key.first], offset[key.second], A.rows(), A.cols()) = A;
  }
  return M;
}

double QuadraticSaddle::value(const Vec& x, const Vec& y) const {
  return x.dot(A * y) + 0.5 * mu * (x - x0).squaredNorm() - 0.5 * mu * (y - y0).squaredNorm();
}

void QuadraticSaddle::validate() const {
  if (!(mu >= 0.0)) throw std::invalid_argument("QuadraticSaddle: mu must be >= 0");
  if (x0.size() != A.rows() || y0.size() != A.cols()) {
    throw std::invalid_argument("QuadraticSaddle: anchor dimensions do not match A");
  }
  check_simplex_point(x0, 1e-9, "anchor x0");
  check_simplex_point(y0, 1e-9, "anchor y0");
}

std::string to_string(GameKind k) {
  switch (k) {
    case GameKind::kZeroSum: return "zero-sum";
    case GameKind::kIdenticalInterest: return "identical-interest";
    case GameKind::kPolymatrix: return "polymatrix";
    case GameKind::kSaddle: return "saddle";
    case GameKind::kNormalForm: return "normal-form";
  }
  return "unknown";
}

GameKind game_kind_from_string(const std::string& s) {
  for (GameKind k : {GameKind::kZeroSum, GameKind::kIdenticalInterest, GameKind::kPolymatrix,
                     GameKind::kSaddle, GameKind::kNormalForm}) {
    if (to_string(k) == s) return k;
  }
  throw std::invalid_argument("unknown game kind: " + s);
}

GameKind kind_of(const Game& g) { return static_cast<GameKind>(g.index()); }

std::vector<int> strategy_dims(const Game& g) {
  switch (kind_of(g)) {
    case GameKind::kZeroSum: {
      const Mat& A = std::get<MatrixGame>(g).A;
      return {static_cast<int>(A.rows()), static_cast<int>(A.cols())};
    }
    case GameKind::kIdenticalInterest: {
      const Mat& A = std::get<IdenticalInterestGame>(g).A;
      return {static_cast<int>(A.rows()), static_cast<int>(A.cols())};
    }
    case GameKind::kPolymatrix:
      return std::get<PolymatrixGame>(g).dims();
    case GameKind::kSaddle: {
      const Mat& A = std::get<QuadraticSaddle>(g).A;
      return {static_cast<int>(A.rows()), static_cast<int>(A.cols())};
    }
    case GameKind::kNormalForm:
      return std::get<NormalFormGame>(g).action_counts();
  }
  return {};
}

std::vector<Vec> utilities(const Game& g, const std::vector<Vec>& profile) {
  const std::vector<int> dims = strategy_dims(g);
  if (profile.size() != dims.size()) throw std::invalid_argument("utilities: wrong player count");
  for (size_t i = 0; i < dims.size(); ++i) {
    if (profile[i].size() != dims[i]) throw std::invalid_argument("utilities: dimension mismatch");
  }
  switch (kind_of(g)) {
    case GameKind::kZeroSum: {
      const Mat& A = std::get<MatrixGame>(g).A;
      return {-(A * profile[1]), A.transpose() * profile[0]};
    }
    case GameKind::kIdenticalInterest: {
      const Mat& A = std::get<IdenticalInterestGame>(g).A;
      return {A * profile[1], A.transpose() * profile[0]};
    }
    case GameKind::kPolymatrix: {
      const auto& pg = std::get<PolymatrixGame>(g);
      std::vector<Vec> out;
      for (int i = 0; i < pg.num_players(); ++i) out.push_back(pg.utility_gradient(i, profile));
      return out;
    }
    case GameKind::kSaddle: {
      SaddleGradients s = eval_saddle_gradients(std::get<QuadraticSaddle>(g), profile[0], profile[1]);
      return {std::move(s.u_x), std::move(s.u_y)};
    }
    case GameKind::kNormalForm: {
      const auto& nf = std::get<NormalFormGame>(g);
      std::vector<Vec> out;
      for (int i = 0; i < nf.num_players(); ++i) out.push_back(nf.action_values(i, profile));
      return out;
    }
  }
  return {};
}

SaddleGradients eval_saddle_gradients(const QuadraticSaddle& g, const Vec& x, const Vec& y) {
  return {-(g.A * y + g.mu * (x - g.x0)), g.A.transpose() * x - g.mu * (y - g.y0)};
}

double potential(const Mat& A, const Vec& x, const Vec& y) { return x.dot(A * y); }

double potential_max(const Mat& A) { return A.cwiseAbs().maxCoeff(); }

double polymatrix_payoff(const PolymatrixGame& g, int i, const std::vector<Vec>& profile) {
  return profile[i].dot(g.utility_gradient(i, profile));
}

json matrix_to_json(const Mat& A) {
  std::vector<double> data;
  data.reserve(A.size());
  for (int i = 0; i < A.rows(); ++i)
    for (int j = 0; j < A.cols(); ++j) data.push_back(A(i, j));
  return json{{"rows", A.rows()}, {"cols", A.cols()}, {"data", data}};
}

Mat matrix_from_json(const json& j) {
  const int rows = j.at("rows").get<int>();
  const int cols = j.at("cols").get<int>();
  if (j.contains("seed")) {
    return random_matrix(rows, cols, j.at("seed").get<std::uint64_t>(),
                         j.value("stream", std::uint64_t{0}));
  }
  if (j.contains("identity") && j.at("identity").get<bool>()) {
    return Mat::Identity(rows, cols) * j.value("scale", 1.0);
  }
  const auto data = j.at("data").get<std::vector<double>>();
  if (static_cast<int>(data.size()) != rows * cols) {
    throw std::invalid_argument("matrix json: data length does not match rows*cols");
  }
  Mat A(rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) A(r, c) = data[r * cols + c];
  return A;
}

json vector_to_json(const Vec& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

Vec vector_from_json(const json& j) {
  const auto data = j.get<std::vector<double>>();
  return Eigen::Map<const Vec>(data.data(), static_cast<Eigen::Index>(data.size()));
}

json game_to_json(const Game& g) {
  json j;
  j["kind"] = to_string(kind_of(g));
  switch (kind_of(g)) {
    case GameKind::kZeroSum:
      j["A"] = matrix_to_json(std::get<MatrixGame>(g).A);
      break;
    case GameKind::kIdenticalInterest:
      j["A"] = matrix_to_json(std::get<IdenticalInterestGame>(g).A);
      break;
    case GameKind::kPolymatrix: {
      const auto& pg = std::get<PolymatrixGame>(g);
      j["dims"] = pg.dims();
      json edges = json::array();
      for (const auto& [key, A] : pg.blocks()) {
        if (key.first < key.second) {
          edges.push_back({{"i", key.first}, {"j", key.second}, {"A", matrix_to_json(A)}});
        }
      }
      j["edges"] = edges;
      break;
    }
    case GameKind::kSaddle: {
      const auto& s = std::get<QuadraticSaddle>(g);
      j["A"] = matrix_to_json(s.A);
      j["mu"] = s.mu;
      j["x0"] = vector_to_json(s.x0);
      j["y0"] = vector_to_json(s.y0);
      break;
    }
    case GameKind::kNormalForm: {
      const auto& nf = std::get<NormalFormGame>(g);
      j["action_counts"] = nf.action_counts();
      json tables = json::array();
      for (int i = 0; i < nf.num_players(); ++i) tables.push_back(vector_to_json(nf.utility_table(i)));
      j["utilities"] = tables;
      break;
    }
  }
  return j;
}

Game game_from_json(const json& j) {
  const GameKind kind = game_kind_from_string(j.at("kind").get<std::string>());
  switch (kind) {
    case GameKind::kZeroSum:
      return MatrixGame{matrix_from_json(j.at("A"))};
    case GameKind::kIdenticalInterest:
      return IdenticalInterestGame{matrix_from_json(j.at("A"))};
    case GameKind::kPolymatrix: {
      std::vector<std::pair<std::pair<int, int>, Mat>> edges;
      for (const auto& e : j.at("edges")) {
        edges.push_back({{e.at("i").get<int>(), e.at("j").get<int>()}, matrix_from_json(e.at("A"))});
      }
      return PolymatrixGame::from_edges(j.at("dims").get<std::vector<int>>(), edges);
    }
    case GameKind::kSaddle: {
      QuadraticSaddle s{matrix_from_json(j.at("A")), j.at("mu").get<double>(),
                        vector_from_json(j.at("x0")), vector_from_json(j.at("y0"))};
      s.validate();
      return s;
    }
    case GameKind::kNormalForm: {
      std::vector<Vec> tables;
      for (const auto& t : j.at("utilities")) tables.push_back(vector_from_json(t));
      return NormalFormGame(j.at("action_counts").get<std::vector<int>>(), std::move(tables));
    }
  }
  throw std::invalid_argument("game_from_json: unsupported kind");
}

}  // namespace tvg
