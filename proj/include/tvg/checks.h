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

#ifndef TVG_CHECKS_H_
#define TVG_CHECKS_H_

#include <string>
#include <vector>

#include "json.hpp"
#include "tvg/dynamics.h"
#include "tvg/equilibrium.h"

namespace tvg {

inline constexpr double kMarginTol = 1e-9;

// Signed outcome of an inequality check. The inequality holds when
// margin + slack >= -tol; slack carries certified equilibrium error.
struct CheckResult {
  std::string name;
  int player = -1;
  double margin = 0.0;
  double slack = 0.0;
  bool applicable = true;
  std::string note;

  double effective() const { return margin + slack; }
  bool passed(double tol = kMarginTol) const { return !applicable || effective() >= -tol; }
  nlohmann::json to_json() const;
};

struct BoundConstants {
  double L = 0.0;       // max_t |M^(t)|_2 of the joint utility operator
  double D_Z = 0.0;     // diameter of the joint strategy set
  double Z_norm = 0.0;  // max Euclidean norm over the joint strategy set
  int n = 2;
};
BoundConstants bound_constants(const GameSequence& seq);

// RHS of the dynamic RVU bound minus the dynamic regret. Euclidean learners
// use D^2/2eta + (D/eta) sum |dc| + eta sum |u-m|^2 - (1/2eta) sum(...);
// entropic learners use the same argument with the Bregman terms evaluated
// along the trace.
CheckResult check_rvu_dynamic(const Trace& trace, int player, const std::vector<Vec>& comparators,
                              double eta, Regularizer reg);

// Second-order path length bound for OGD in time-varying bilinear or
// polymatrix games with certified equilibria (C = n eta / D_Z).
CheckResult check_pathlength_theorem(const Trace& trace, const VariationReport& report,
                                     double eta, const BoundConstants& c);

// Path length bound for strongly convex-concave meta-learning sequences.
CheckResult check_strong_pathlength_theorem(const Trace& trace, const GameSequence& seq,
                                            const VariationReport& report, double eta);

// Sum of dynamic regrets against certified equilibria; slack is the
// certificate error (n eps per round, 2 eps for the minimax form).
CheckResult check_nonnegativity(const Trace& trace, const GameSequence& seq,
                                const VariationReport& report);

// reg_x + reg_y - (mu/2) sum |z - z*|^2 for a static saddle.
CheckResult check_strong_regret_lower(const Trace& trace, const NECertificate& ne, double mu);
// Per-round comparators and moduli for saddle sequences.
CheckResult check_strong_regret_lower(const Trace& trace, const GameSequence& seq,
                                      const std::vector<NECertificate>& certificates);

// sum_t (Phi^t(z^{t+1}) - Phi^t(z^t)) - (1/2eta) sum |dz|^2 for GD in
// identical-interest sequences. Applicable when eta <= 1/|A^(t)|_2.
CheckResult check_potential_pathlength(const Trace& trace, const GameSequence& seq);

// Per-round best-response gap bound (D_i/eta)|x^+ - x^| + |u||x - x^+| for
// Euclidean learners; margin is the minimum slack over rounds and players.
CheckResult check_br_gap_bound(const Trace& trace, const GameSequence& seq);

// |x^(t+1) - x^(t)| <= 3 eta L with L the largest utility or prediction norm.
CheckResult check_stability(const Trace& trace);

// Sum of K-switch dynamic regrets <= (2K-1)/(2eta) sum D_i^2 + eta sum |u_i^1|^2
// in a static game with eta <= 1/(2|M|_2).
CheckResult check_kswitch_theorem(const Trace& trace, int K, const BoundConstants& c);

// External regret of the row player of a bilinear game against its
// variation-dependent bound (the column player is symmetric).
CheckResult check_individual_regret(const Trace& trace, int player, const VariationReport& report,
                                    double eta, const BoundConstants& c);

// Mediator dynamic regret against per-round correlated equilibria plus the
// players' external regrets. Player 0 of the trace is the mediator.
CheckResult check_mediator_nonnegativity(const Trace& trace, const std::vector<Vec>& ce_comparators,
                                         double certificate_slack);

}  // namespace tvg

#endif  // TVG_CHECKS_H_
