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

#ifndef RANDEC_EXPERIMENTS_H_
#define RANDEC_EXPERIMENTS_H_

#include <optional>
#include <string>
#include <vector>

#include "randec/config.h"
#include "randec/metrics_and_bounds.h"
#include "randec/monte_carlo.h"

namespace randec {

// One full scenario evaluation: strength estimate, ensemble (or worst-case
// probing plus a targeted rerun at the maximizer), error report, timing.
struct ScenarioResult {
  ErrorReport report;
  StrengthBound strength;
  std::optional<PureState> maximizer;  // set in worst-case mode
  double wall_time_s;
};

ScenarioResult run_scenario(const ScenarioConfig& cfg, int threads = 1);

// CSV emission. Every float is rendered with %.17g so reruns are
// byte-identical; timing never enters the CSV. bound_value is left empty
// when 4 T delta_t k^2 >= 1 and bound_applicable is 0.
std::string csv_header();
std::string csv_row(const ScenarioConfig& cfg, const ScenarioResult& res);

// Human-readable companion to the CSV row; includes wall time.
std::string scenario_report_text(const ScenarioConfig& cfg, const ScenarioResult& res);

struct SweepRow {
  ScenarioConfig config;
  ScenarioResult result;
};

struct SweepOutcome {
  std::vector<SweepRow> rows;
  // Least-squares slope of log epsilon vs log delta_t over rows whose error
  // clears 10 standard errors; only fitted for delta_t sweeps with at least
  // two qualifying rows. slope_note explains an absent value.
  std::optional<double> slope;
  std::string slope_note;
};

SweepOutcome run_sweep(const SweepConfig& cfg, int threads = 1);
std::string sweep_report_text(const SweepConfig& cfg, const SweepOutcome& out);

struct GroupVerification {
  std::string label;
  int size;
  double closure_residual;
  bool closed;
  bool irreducible;  // meaningful only when closed
};

GroupVerification verify_group_details(const NamedGroup& named);
std::string group_report_text(const GroupVerification& v);

// Free, cyclic, and random protocols on one spec at identical delta_t and
// horizon. The cyclic row is omitted (with a note) for time-dependent
// systems, where cycle averaging has no decoupling meaning.
struct CompareOutcome {
  std::vector<SweepRow> rows;
  std::string note;
};

CompareOutcome run_compare(const ScenarioConfig& cfg, int threads = 1);
std::string compare_report_text(const ScenarioConfig& cfg, const CompareOutcome& out);

// Writes content exactly as given (binary stream, LF endings preserved).
void write_text_file(const std::string& path, const std::string& content);

}  // namespace randec

#endif  // RANDEC_EXPERIMENTS_H_
