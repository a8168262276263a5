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

#ifndef TVG_EQUILIBRIUM_H_
#define TVG_EQUILIBRIUM_H_

#include <optional>
#include <vector>

#include "json.hpp"
#include "tvg/games.h"
#include "tvg/sequences.h"

namespace tvg {

// A joint profile together with its certified equilibrium gap.
struct NECertificate {
  std::vector<Vec> profile;
  double eps = 0.0;

  const Vec& x_star() const { return profile.at(0); }
  const Vec& y_star() const { return profile.at(1); }
};

struct ZeroSumSolution {
  Vec x;
  Vec y;
  double value = 0.0;  // min_x max_y x^T A y
  int pivots = 0;
};

// Exact equilibrium of min_x max_y x^T A y by the tableau simplex method with
// Bland's rule.
ZeroSumSolution solve_zero_sum_lp(const Mat& A);

// Eq gap of the profile, packaged as a certificate.
NECertificate certify(const Game& game, std::vector<Vec> profile);

// 2x2 interior games use the closed form. Other games are solved exactly by
// linear programming; if the certified gap still exceeds tol, static OGD with
// step 1/(4L) polishes the solution until the gap is at most tol or max_iters
// is reached. The achieved gap is always returned.
NECertificate ne_oracle_zero_sum(const Mat& A, double tol = 1e-9, int max_iters = 1000000);

// Static OGD from `warm` (uniform by default) until gap <= tol or max_iters;
// returns the best iterate seen. Works for every kind with linear or
// strongly monotone utilities.
NECertificate ne_oracle_ogd(const Game& game, double tol, int max_iters,
                            const std::optional<std::vector<Vec>>& warm = std::nullopt);

// Dispatches on the game kind.
NECertificate ne_oracle(const Game& game, double tol,
                        const std::optional<std::vector<Vec>>& warm = std::nullopt);

struct VariationReport {
  double V_A = 0.0;
  double W_A = 0.0;
  double V_NE = 0.0;
  double eps_sum = 0.0;
  double V_Phi = 0.0;
  double S_NE = 0.0;
  double V_grad_f = 0.0;
  bool has_certificates = false;
  // One certificate per round (rounds of the same block share a solution).
  std::vector<NECertificate> certificates;

  nlohmann::json to_json() const;
};

// Per-round variation measures of the sequence. NE certificates are
// computed for zero-sum, polymatrix and saddle kinds.
VariationReport variation_report(const GameSequence& seq, double tol = 1e-9);

// First-order variation and eps sum of a caller-chosen certificate family.
struct CertifiedVariation {
  double first_order = 0.0;
  double second_order = 0.0;
  double eps_sum = 0.0;
  std::vector<NECertificate> certificates;
};
CertifiedVariation certified_variation(const GameSequence& seq,
                                       const std::vector<std::vector<Vec>>& profiles);
// The uniform profile in every round.
CertifiedVariation uniform_certificates(const GameSequence& seq);

// Correlated equilibrium minimizing the largest deviation benefit, solved as a
// zero-sum game between the distribution and the stacked deviation columns.
Vec solve_ce_lp(const NormalFormGame& game);

}  // namespace tvg

#endif  // TVG_EQUILIBRIUM_H_
