// Copyright 2026 The randec Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "randec/experiments.h"

namespace {

using namespace randec;

struct CommonOpts {
  std::optional<std::uint64_t> seed;
  std::optional<int> n;
  std::optional<std::string> out;
  int threads = 1;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--seed", o.seed, "Override mc.master_seed");
  cmd->add_option("--n", o.n, "Override mc.n_realizations");
  cmd->add_option("--out", o.out, "Override outputs.csv_path");
  cmd->add_option("--threads", o.threads, "Worker threads for ensembles")
      ->check(CLI::Range(1, 256));
}

void apply_overrides(ScenarioConfig& cfg, const CommonOpts& o) {
  if (o.seed) cfg.mc.master_seed = *o.seed;
  if (o.n) {
    if (*o.n < 1) throw ConfigError("--n: must be >= 1");
    cfg.mc.n_realizations = *o.n;
  }
  if (o.out) cfg.outputs.csv_path = *o.out;
}

void emit(const OutputConfig& outputs, const std::string& csv, const std::string& report) {
  if (outputs.csv_path.empty()) {
    std::cout << csv;
  } else {
    write_text_file(outputs.csv_path, csv);
  }
  if (outputs.report_path.empty()) {
    std::cout << report;
  } else {
    write_text_file(outputs.report_path, report);
  }
}

int cmd_simulate(const std::string& path, const CommonOpts& o) {
  ScenarioConfig cfg = load_scenario_file(path);
  apply_overrides(cfg, o);
  const ScenarioResult res = run_scenario(cfg, o.threads);
  emit(cfg.outputs, csv_header() + csv_row(cfg, res), scenario_report_text(cfg, res));
  return 0;
}

int cmd_sweep(const std::string& path, const CommonOpts& o) {
  SweepConfig cfg = load_sweep_file(path);
  apply_overrides(cfg.base, o);
  const SweepOutcome out = run_sweep(cfg, o.threads);
  std::string csv = csv_header();
  for (const auto& row : out.rows) csv += csv_row(row.config, row.result);
  emit(cfg.base.outputs, csv, sweep_report_text(cfg, out));
  return 0;
}

int cmd_verify_group(const std::string& arg) {
  const GroupVerification v = verify_group_details(parse_group_argument(arg));
  std::cout << group_report_text(v);
  return v.closed ? 0 : 1;
}

int cmd_compare(const std::string& path, const CommonOpts& o) {
  ScenarioConfig cfg = load_scenario_file(path);
  apply_overrides(cfg, o);
  const CompareOutcome out = run_compare(cfg, o.threads);
  std::string csv = csv_header();
  for (const auto& row : out.rows) csv += csv_row(row.config, row.result);
  emit(cfg.outputs, csv, compare_report_text(cfg, out));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Decoupling control simulation for finite-dimensional open quantum systems"};
  app.require_subcommand(1);

  std::string simulate_path;
  std::string sweep_path;
  std::string group_arg;
  std::string compare_path;
  CommonOpts simulate_opts, sweep_opts, compare_opts;

  CLI::App* simulate = app.add_subcommand("simulate", "Run one scenario end to end");
  simulate->add_option("config", simulate_path, "Scenario JSON file")->required();
  add_common(simulate, simulate_opts);

  CLI::App* sweep = app.add_subcommand("sweep", "Run a scenario across a swept parameter");
  sweep->add_option("config", sweep_path, "Sweep JSON file")->required();
  add_common(sweep, sweep_opts);

  CLI::App* verify = app.add_subcommand("verify-group", "Check closure and irreducibility");
  verify->add_option("group", group_arg, "Builtin name (pauli_1..pauli_3) or JSON file")
      ->required();

  CLI::App* compare = app.add_subcommand("compare", "Free vs cyclic vs random on one spec");
  compare->add_option("config", compare_path, "Scenario JSON file")->required();
  add_common(compare, compare_opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (simulate->parsed()) return cmd_simulate(simulate_path, simulate_opts);
    if (sweep->parsed()) return cmd_sweep(sweep_path, sweep_opts);
    if (verify->parsed()) return cmd_verify_group(group_arg);
    if (compare->parsed()) return cmd_compare(compare_path, compare_opts);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const UnsupportedConfiguration& e) {
    std::cerr << "unsupported configuration: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid request: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
