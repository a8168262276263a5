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


// Command-line front end for the experiment registry.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "tvg/experiments.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitViolation = 2;
constexpr int kExitIo = 3;

namespace fs = std::filesystem;
using nlohmann::json;

void print_checks(const std::vector<tvg::LabeledCheck>& checks, bool failures_only) {
  for (const tvg::LabeledCheck& c : checks) {
    const tvg::CheckResult& r = c.result;
    if (failures_only && r.passed()) continue;
    const char* status = !r.applicable ? "n/a " : (r.passed() ? "ok  " : "FAIL");
    std::printf("  %s %-14s %-24s", status, c.series.c_str(), r.name.c_str());
    if (r.player >= 0) std::printf(" player=%d", r.player);
    if (r.applicable) std::printf(" margin=%.6g slack=%.3g", r.margin, r.slack);
    if (!r.note.empty()) std::printf("  (%s)", r.note.c_str());
    std::printf("\n");
  }
}

int report(const tvg::RunSummary& s, const std::string& dir) {
  int applicable = 0, passed = 0;
  for (const tvg::LabeledCheck& c : s.checks) {
    if (!c.result.applicable) continue;
    ++applicable;
    passed += c.result.passed();
  }
  std::printf("%s seed=%llu checks=%d/%d wall=%.2fs out=%s\n", s.name.c_str(),
              static_cast<unsigned long long>(s.seed), passed, applicable, s.wall_seconds,
              dir.empty() ? "-" : dir.c_str());
  print_checks(s.checks, false);
  return s.passed() ? kExitOk : kExitViolation;
}

tvg::ExperimentConfig load_config(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw tvg::IoError("cannot read config: " + path);
  json j;
  try {
    j = json::parse(is);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument("malformed config " + path + ": " + e.what());
  }
  return tvg::ExperimentConfig::from_json(j);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Learning dynamics in time-varying games"};
  app.require_subcommand(1);

  std::string name;
  std::vector<std::string> sets;
  std::string out_dir;
  std::optional<std::uint64_t> seed;
  std::string config_path;
  std::vector<std::string> grid;
  int jobs = 0;
  std::string trace_path;

  CLI::App* list = app.add_subcommand("list", "List registered experiments");

  CLI::App* config = app.add_subcommand("config", "Print the default config of an experiment");
  config->add_option("name", name, "Experiment name")->required();

  CLI::App* run = app.add_subcommand("run", "Run a registered experiment");
  run->add_option("name", name, "Experiment name");
  run->add_option("--set", sets, "Parameter override key=value")->take_all();
  run->add_option("--out", out_dir, "Output directory (default $TVG_OUT_DIR or ./runs)");
  run->add_option("--seed", seed, "Seed override");
  run->add_option("--config", config_path, "Config JSON file");

  CLI::App* sweep = app.add_subcommand("sweep", "Run a parameter grid in parallel");
  sweep->add_option("name", name, "Experiment name")->required();
  sweep->add_option("--grid", grid, "Axis key=v1,v2,...")->required();
  sweep->add_option("--set", sets, "Parameter override key=value");
  sweep->add_option("--out", out_dir, "Output directory (default $TVG_OUT_DIR or ./runs)");
  sweep->add_option("--seed", seed, "Base seed");
  sweep->add_option("--jobs", jobs, "Worker threads (0 = hardware concurrency)");

  CLI::App* check = app.add_subcommand("check", "Rerun the checkers on a stored trace");
  check->add_option("trace", trace_path, "Trace CSV written by run")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*list) {
      for (const tvg::ExperimentInfo& e : tvg::experiment_registry()) {
        std::printf("%-16s %s\n", e.name.c_str(), e.description.c_str());
      }
      return kExitOk;
    }
    if (*config) {
      std::printf("%s\n", tvg::default_config(name).to_json().dump(2).c_str());
      return kExitOk;
    }
    const std::string root = out_dir.empty() ? tvg::default_out_dir() : out_dir;
    if (*run) {
      tvg::ExperimentConfig cfg;
      if (!config_path.empty()) {
        cfg = load_config(config_path);
        if (!name.empty() && name != cfg.name) {
          throw std::invalid_argument("experiment name differs from the config file");
        }
      } else if (!name.empty()) {
        cfg = tvg::default_config(name);
      } else {
        throw std::invalid_argument("run needs an experiment name or --config");
      }
      for (const std::string& s : sets) tvg::apply_override(cfg, s);
      if (seed) cfg.seed = *seed;
      if (!out_dir.empty() || cfg.out_dir.empty()) cfg.out_dir = (fs::path(root) / cfg.name).string();
      return report(tvg::run_experiment(cfg), cfg.out_dir);
    }
    if (*sweep) {
      tvg::ExperimentConfig cfg = tvg::default_config(name);
      for (const std::string& s : sets) tvg::apply_override(cfg, s);
      if (seed) cfg.seed = *seed;
      cfg.out_dir = (fs::path(root) / name / "sweep").string();
      const std::vector<tvg::GridAxis> axes = tvg::parse_grid(grid);
      const std::vector<tvg::SweepCell> cells = tvg::sweep(cfg, axes, jobs);
      const std::string table = (fs::path(cfg.out_dir) / "sweep.csv").string();
      tvg::write_sweep_table(cells, axes, table);
      int code = kExitOk;
      for (const tvg::SweepCell& c : cells) {
        if (!c.error.empty()) {
          std::printf("cell %d seed=%llu error: %s\n", c.index,
                      static_cast<unsigned long long>(c.config.seed), c.error.c_str());
          code = std::max(code, c.io_error ? kExitIo : kExitUsage);
          continue;
        }
        std::printf("cell %d seed=%llu passed=%d\n", c.index,
                    static_cast<unsigned long long>(c.config.seed), c.summary.passed() ? 1 : 0);
        if (!c.summary.passed()) {
          print_checks(c.summary.checks, true);
          code = std::max(code, kExitViolation);
        }
      }
      std::printf("table: %s\n", table.c_str());
      return code;
    }
    if (*check) {
      const std::vector<tvg::CheckResult> results = tvg::check_stored_trace(trace_path);
      std::vector<tvg::LabeledCheck> labeled;
      bool ok = true;
      for (const tvg::CheckResult& r : results) {
        labeled.push_back({fs::path(trace_path).stem().string(), r});
        ok = ok && r.passed();
      }
      print_checks(labeled, false);
      return ok ? kExitOk : kExitViolation;
    }
  } catch (const tvg::IoError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitIo;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  }
  return kExitUsage;
}
