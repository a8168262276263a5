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


#ifndef TVG_EXPERIMENTS_H_
#define TVG_EXPERIMENTS_H_

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "tvg/checks.h"
#include "tvg/dynamics.h"
#include "tvg/equilibrium.h"

namespace tvg {

inline constexpr int kConfigSchemaVersion = 1;
inline constexpr const char* kOutDirEnv = "TVG_OUT_DIR";

// Raised when an artifact cannot be read or written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Fixed CSV headers.
const std::vector<std::string>& zero_sum_columns();
std::vector<std::string> mediator_columns(int n);
const std::vector<std::string>& kswitch_columns();
const std::vector<std::string>& twopoint_columns();
const std::vector<std::string>& blocks_columns();
const std::vector<std::string>& checks_columns();
const std::vector<std::string>& trace_columns();

struct ExperimentConfig {
  int schema_version = kConfigSchemaVersion;
  std::string name;
  std::uint64_t seed = 0;
  nlohmann::json params = nlohmann::json::object();
  std::string out_dir;  // empty: nothing is written

  nlohmann::json to_json() const;
  static ExperimentConfig from_json(const nlohmann::json& j);
};

struct LabeledCheck {
  std::string series;
  CheckResult result;
};

struct RunSummary {
  std::string name;
  std::uint64_t seed = 0;
  nlohmann::json params;
  nlohmann::json series = nlohmann::json::array();  // one object per CSV
  nlohmann::json extra = nlohmann::json::object();
  std::vector<LabeledCheck> checks;
  double wall_seconds = 0.0;

  bool passed() const;
  nlohmann::json to_json() const;
};

struct ExperimentInfo {
  std::string name;
  std::string description;
  nlohmann::json defaults;
  std::uint64_t default_seed = 0;
};

const std::vector<ExperimentInfo>& experiment_registry();
const ExperimentInfo& find_experiment(const std::string& name);
ExperimentConfig default_config(const std::string& name);

// Parses the right-hand side of key=value: JSON literals and comma
// separated lists are recognized, anything else is a string.
nlohmann::json parse_value(const std::string& text);
// Applies "key=value"; unknown keys are rejected.
void apply_override(ExperimentConfig& config, const std::string& assignment);

RunSummary run_experiment(const ExperimentConfig& config);
RunSummary run_named(const std::string& name, const std::vector<std::string>& overrides,
                     const std::string& out_dir, std::optional<std::uint64_t> seed = std::nullopt);

// Default output directory: $TVG_OUT_DIR or "runs".
std::string default_out_dir();

struct GridAxis {
  std::string key;
  std::vector<nlohmann::json> values;
};
// "key=v1,v2,..." per axis.
std::vector<GridAxis> parse_grid(const std::vector<std::string>& specs);

struct SweepCell {
  int index = 0;
  ExperimentConfig config;
  RunSummary summary;
  std::string error;
  bool io_error = false;
};

// Cross product of the axes (last axis fastest). Cell seeds are the value of
// a "seed" axis when present, otherwise derive_seed(base seed, cell index).
// Each cell writes to <out_dir>/cell_<index>.
std::vector<SweepCell> sweep(const ExperimentConfig& base, const std::vector<GridAxis>& grid,
                             int jobs = 0);
void write_sweep_table(const std::vector<SweepCell>& cells, const std::vector<GridAxis>& grid,
                       const std::string& path);

// Every checker that applies to the trace.
std::vector<CheckResult> standard_checks(const Trace& trace, const GameSequence& seq,
                                         const VariationReport& report);
// Checks of a mediator run: schedule-level CE comparators.
std::vector<CheckResult> mediator_checks(const Trace& trace, const GameSequence& seq);
// Reloads a trace CSV and its envelope and reruns the applicable checkers.
std::vector<CheckResult> check_stored_trace(const std::string& path);

// Per-round squared spectral variation |A^(t) - A^(t-1)|^2 (0 for t = 1),
// summed over ordered blocks for polymatrix games.
std::vector<double> matrix_variation_increments(const GameSequence& seq);

// Least-squares slope of log y against log x.
double log_log_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace tvg

#endif  // TVG_EXPERIMENTS_H_
