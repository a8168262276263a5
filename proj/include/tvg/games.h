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

#ifndef TVG_GAMES_H_
#define TVG_GAMES_H_

#include <map>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "json.hpp"
#include "tvg/geometry.h"

namespace tvg {

// Two-player zero-sum bilinear game. The row player minimizes x^T A y, so its
// utility gradient is -A y; the column player receives A^T x.
struct MatrixGame {
  Mat A;
};

// Both players receive x^T A y; the potential is the shared utility.
struct IdenticalInterestGame {
  Mat A;
};

class NormalFormGame {
 public:
  NormalFormGame() = default;
  // utilities[i][k] is player i's payoff at joint profile k, where profiles
  // are encoded with the last player's action varying fastest.
  NormalFormGame(std::vector<int> action_counts, std::vector<Vec> utilities);

  int num_players() const { return static_cast<int>(counts_.size()); }
  const std::vector<int>& action_counts() const { return counts_; }
  int num_actions(int player) const { return counts_.at(player); }
  int num_profiles() const { return num_profiles_; }

  double utility(int player, int profile) const { return utilities_[player][profile]; }
  const Vec& utility_table(int player) const { return utilities_.at(player); }

  std::vector<int> decode(int profile) const;
  int encode(const std::vector<int>& actions) const;
  int action_of(int profile, int player) const;
  int with_action(int profile, int player, int action) const;

  // Expected payoff of each pure action of `player` when the others play the
  // given mixed strategies.
  Vec action_values(int player, const std::vector<Vec>& profile) const;
  double expected_utility(int player, const std::vector<Vec>& profile) const;

 private:
  std::vector<int> counts_;
  std::vector<int> strides_;
  std::vector<Vec> utilities_;
  int num_profiles_ = 0;
};

// Zero-sum polymatrix game: player i receives sum_j A_{i,j} x_j over its
// neighbors, with A_{j,i} = -A_{i,j}^T on every edge.
class PolymatrixGame {
 public:
  using Blocks = std::map<std::pair<int, int>, Mat>;

  PolymatrixGame() = default;
  // `blocks` must contain both orientations of every edge.
  PolymatrixGame(std::vector<int> dims, Blocks blocks, double tol = 1e-12);

  // Fills the mirrored orientation of each (i, j, A_ij) entry.
  static PolymatrixGame from_edges(std::vector<int> dims,
                                   const std::vector<std::pair<std::pair<int, int>, Mat>>& edges);
  // Two-node path equivalent to the zero-sum matrix game with payoff A.
  static PolymatrixGame from_matrix_game(const Mat& A);

  int num_players() const { return static_cast<int>(dims_.size()); }
  const std::vector<int>& dims() const { return dims_; }
  const Blocks& blocks() const { return blocks_; }
  const Mat& block(int i, int j) const;
  std::vector<int> neighbors(int i) const;

  Vec utility_gradient(int i, const std::vector<Vec>& profile) const;
  // Block matrix M with stacked utilities u(z) = M z.
  Mat joint_operator() const;

 private:
  std::vector<int> dims_;
  Blocks blocks_;
};

// f(x, y) = x^T A y + mu/2 |x - x0|^2 - mu/2 |y - y0|^2; x minimizes, y
// maximizes.
struct QuadraticSaddle {
  Mat A;
  double mu = 0.0;
  Vec x0;
  Vec y0;

  double value(const Vec& x, const Vec& y) const;
  void validate() const;
};

using Game = std::variant<MatrixGame, IdenticalInterestGame, PolymatrixGame, QuadraticSaddle,
                          NormalFormGame>;

enum class GameKind { kZeroSum, kIdenticalInterest, kPolymatrix, kSaddle, kNormalForm };

std::string to_string(GameKind k);
GameKind game_kind_from_string(const std::string& s);
GameKind kind_of(const Game& g);

std::vector<int> strategy_dims(const Game& g);

// Utility gradients of every player at a joint profile.
std::vector<Vec> utilities(const Game& g, const std::vector<Vec>& profile);

struct SaddleGradients {
  Vec u_x;
  Vec u_y;
};
SaddleGradients eval_saddle_gradients(const QuadraticSaddle& g, const Vec& x, const Vec& y);

// Identical-interest potential x^T A y.
double potential(const Mat& A, const Vec& x, const Vec& y);
// Largest |x^T A y| over the simplices, attained at a vertex pair.
double potential_max(const Mat& A);

// Payoff of a polymatrix player at a joint profile.
double polymatrix_payoff(const PolymatrixGame& g, int i, const std::vector<Vec>& profile);

nlohmann::json matrix_to_json(const Mat& A);
Mat matrix_from_json(const nlohmann::json& j);
nlohmann::json vector_to_json(const Vec& v);
Vec vector_from_json(const nlohmann::json& j);

nlohmann::json game_to_json(const Game& g);
Game game_from_json(const nlohmann::json& j);

}  // namespace tvg

#endif  // TVG_GAMES_H_
