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

#ifndef TVG_SEQUENCES_H_
#define TVG_SEQUENCES_H_

#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "json.hpp"
#include "tvg/games.h"

namespace tvg {

// Which round holds the unperturbed matrix in a drifting sequence.
enum class DriftBase {
  kZero,  // A^(0) = A0, so A^(1) = A0 + P
  kOne,   // A^(1) = A0
};

// A finite sequence of games indexed 1..T. Immutable and safe to share
// between threads.
class GameSequence {
 public:
  using Generator = std::function<Game(int)>;
  using Indexer = std::function<int(int)>;

  GameSequence(GameKind kind, int T, Generator at, Indexer index, nlohmann::json descriptor);

  GameKind kind() const { return kind_; }
  int length() const { return T_; }
  Game game_at(int t) const;
  // Rounds with equal consecutive index are guaranteed to hold the same game.
  int game_index(int t) const;
  const nlohmann::json& descriptor() const { return descriptor_; }
  std::vector<int> dims() const { return dims_; }

  // Payoff matrix of zero-sum, identical-interest and saddle rounds.
  Mat matrix_at(int t) const;

  GameSequence with_descriptor(nlohmann::json descriptor) const;

 private:
  void check_round(int t) const;

  GameKind kind_;
  int T_;
  Generator at_;
  Indexer index_;
  nlohmann::json descriptor_;
  std::vector<int> dims_;
};

GameSequence constant_sequence(const Game& g, int T);

// A^(t) = A^(t-1) + P t^-alpha.
GameSequence gen_drift_powerlaw(const Mat& A0, const Mat& P, double alpha, int T,
                                DriftBase base = DriftBase::kZero);
// A^(t) = A^(t-1) + eps P with A^(0) = A0.
GameSequence gen_drift_linear(const Mat& A0, const Mat& P, double eps, int T);
// Odd rounds diag(2d, d) (shifted by +1 entrywise if requested), even rounds
// diag(d, 2d).
GameSequence gen_alternating_example(double delta, int T, bool shifted = false);
GameSequence gen_identical_interest(const GameSequence& seq);

struct PolymatrixDrift {
  // One orientation per edge; the mirrored increment is -P^T.
  std::vector<std::pair<std::pair<int, int>, Mat>> increments;
  double alpha = 1.0;
};
GameSequence gen_polymatrix(const PolymatrixGame& base, int T,
                            const std::optional<PolymatrixDrift>& drift = std::nullopt);

// H games each repeated m rounds; game_index(t) is the block number.
GameSequence gen_metalearning(const std::vector<Game>& base_games, int m);

// Builds a sequence from its JSON descriptor. Matrices are either inline
// ({rows, cols, data}) or seeded ({rows, cols, seed, stream}).
GameSequence sequence_from_json(const nlohmann::json& j);

}  // namespace tvg

#endif  // TVG_SEQUENCES_H_
