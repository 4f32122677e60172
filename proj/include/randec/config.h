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

#ifndef RANDEC_CONFIG_H_
#define RANDEC_CONFIG_H_

#include <optional>
#include <string>
#include <vector>

#include "randec/control_protocols.h"
#include "randec/errors.h"
#include "randec/propagation_engine.h"
#include "randec/system_model.h"

namespace randec {

// Scenario and sweep descriptions live in JSON files; the parsers here turn
// them into validated domain objects, translating every construction failure
// into a ConfigError that names the offending field.

struct McConfig {
  int n_realizations = 1000;
  std::uint64_t master_seed = 0;
};

struct OutputConfig {
  std::string csv_path;     // empty: stdout only
  std::string report_path;  // empty: stdout only
};

struct ScenarioConfig {
  std::string scenario_id;
  OpenSystemSpec system;
  std::string group_label;
  ProtocolSpec protocol;
  McConfig mc;
  IntegratorConfig integrator;
  std::optional<PureState> pi_s;  // empty requests worst-case maximization
  DensityOperator env_state;
  OutputConfig outputs;
};

enum class SweepVariable { DeltaT, Horizon, CouplingNorm, NRealizations };

struct SweepConfig {
  ScenarioConfig base;
  SweepVariable variable;
  std::vector<double> values;  // nonempty, positive, strictly monotone
};

struct NamedGroup {
  DecouplingGroup group;
  std::string label;
};

// origin is used in diagnostics (typically the file path).
ScenarioConfig parse_scenario_json(const std::string& text, const std::string& origin);
ScenarioConfig load_scenario_file(const std::string& path);

SweepConfig parse_sweep_json(const std::string& text, const std::string& origin);
SweepConfig load_sweep_file(const std::string& path);

// Accepts a builtin group name (pauli_1, pauli_2, pauli_3) or a path to a
// JSON file with {"group": name} or {"elements": [matrix, ...]}.
NamedGroup parse_group_argument(const std::string& name_or_path);

// Scenario obtained by setting the sweep variable to one value. Coupling
// norm sweeps rescale every coupling so the largest environment operator
// norm equals the value; realization-count sweeps require integral values.
ScenarioConfig scenario_for_value(const SweepConfig& cfg, double value);

}  // namespace randec

#endif  // RANDEC_CONFIG_H_
