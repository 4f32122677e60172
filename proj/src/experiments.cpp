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

#include "randec/experiments.h"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "randec/rng.h"

namespace randec {
namespace {

// Grid resolution for the interaction strength estimate. Exact for constant
// envelopes regardless of the grid.
constexpr int kStrengthGridPoints = 2049;

// Salt separating the optimizer's restart stream from the path streams.
constexpr std::uint64_t kOptimizerSalt = 1000003;

std::string fmt_g17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt_short(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

const char* kind_name(ProtocolKind k) {
  switch (k) {
    case ProtocolKind::Free:
      return "free";
    case ProtocolKind::Cyclic:
      return "cyclic";
    case ProtocolKind::Random:
      return "random";
  }
  return "unknown";
}

const char* scheme_name(IntegrationScheme s) {
  return s == IntegrationScheme::Midpoint ? "midpoint" : "exact_piecewise";
}

double elapsed_s(std::chrono::steady_clock::time_point start) {
  const auto d = std::chrono::steady_clock::now() - start;
  return std::chrono::duration<double>(d).count();
}

}  // namespace

ScenarioResult run_scenario(const ScenarioConfig& cfg, int threads) {
  const auto start = std::chrono::steady_clock::now();
  const StrengthBound strength =
      estimate_k(cfg.system, cfg.protocol.horizon(), kStrengthGridPoints);

  double epsilon = 0.0;
  double epsilon_stderr = 0.0;
  std::optional<PureState> maximizer;

  if (cfg.pi_s.has_value()) {
    const auto ens = run_ensemble(cfg.system, cfg.protocol, *cfg.pi_s, cfg.env_state,
                                  cfg.mc.n_realizations, cfg.mc.master_seed, cfg.integrator,
                                  threads);
    epsilon = error_probability(ens.mean_state, *cfg.pi_s);
    epsilon_stderr = ens.initial_error_stderr;
  } else {
    // Reconstruct the averaged channel from probe inputs sharing the master
    // seed (hence the same path ensemble), maximize over pure states, then
    // rerun at the maximizer for an honest scalar standard error.
    const ChannelProbe probe = [&](const PureState& pi) {
      return run_ensemble(cfg.system, cfg.protocol, pi, cfg.env_state, cfg.mc.n_realizations,
                          cfg.mc.master_seed, cfg.integrator, threads)
          .mean_state;
    };
    WorstCaseOptions opt;
    opt.seed = derive_stream(cfg.mc.master_seed, kOptimizerSalt);
    const auto wc = worst_case_error(probe, cfg.system.d_s(), opt);
    const auto ens = run_ensemble(cfg.system, cfg.protocol, wc.maximizer, cfg.env_state,
                                  cfg.mc.n_realizations, cfg.mc.master_seed, cfg.integrator,
                                  threads);
    epsilon = error_probability(ens.mean_state, wc.maximizer);
    epsilon_stderr = ens.initial_error_stderr;
    maximizer = wc.maximizer;
  }

  ErrorReport report = make_error_report(epsilon, epsilon_stderr, cfg.pi_s,
                                         cfg.protocol.horizon(), cfg.protocol.delta_t(),
                                         strength.k);
  return ScenarioResult{std::move(report), strength, std::move(maximizer), elapsed_s(start)};
}

std::string csv_header() {
  return "scenario_id,d_S,d_E,protocol,group,delta_t,T,k,n_realizations,master_seed,"
         "epsilon_mean,epsilon_stderr,bound_value,bound_applicable\n";
}

std::string csv_row(const ScenarioConfig& cfg, const ScenarioResult& res) {
  std::ostringstream out;
  out << cfg.scenario_id << ',' << cfg.system.d_s() << ',' << cfg.system.d_e() << ','
      << kind_name(cfg.protocol.kind()) << ',' << cfg.group_label << ','
      << fmt_g17(cfg.protocol.delta_t()) << ',' << fmt_g17(cfg.protocol.horizon()) << ','
      << fmt_g17(res.strength.k) << ',' << cfg.mc.n_realizations << ',' << cfg.mc.master_seed
      << ',' << fmt_g17(res.report.epsilon_mean) << ',' << fmt_g17(res.report.epsilon_stderr)
      << ',' << (res.report.bound_value ? fmt_g17(*res.report.bound_value) : std::string())
      << ',' << (res.report.bound_value ? 1 : 0) << '\n';
  return out.str();
}

std::string scenario_report_text(const ScenarioConfig& cfg, const ScenarioResult& res) {
  const double q = 4.0 * cfg.protocol.horizon() * cfg.protocol.delta_t() * res.strength.k *
                   res.strength.k;
  std::ostringstream out;
  out << "scenario " << cfg.scenario_id << "\n"
      << "  system: d_S=" << cfg.system.d_s() << ", d_E=" << cfg.system.d_e() << ", "
      << (cfg.system.time_independent() ? "time-independent" : "time-dependent") << "\n"
      << "  protocol: " << kind_name(cfg.protocol.kind()) << " over " << cfg.group_label
      << ", delta_t=" << fmt_short(cfg.protocol.delta_t())
      << ", T=" << fmt_short(cfg.protocol.horizon()) << " (" << cfg.protocol.num_intervals()
      << " intervals), seed=" << cfg.protocol.seed() << "\n"
      << "  integrator: " << scheme_name(cfg.integrator.scheme) << ", "
      << cfg.integrator.substeps_per_interval << " substeps/interval\n"
      << "  ensemble: n=" << cfg.mc.n_realizations << ", master_seed=" << cfg.mc.master_seed
      << "\n"
      << "  strength: k=" << fmt_short(res.strength.k) << " (grid " << res.strength.grid_points
      << " over [0, " << fmt_short(res.strength.horizon) << "])\n";
  if (res.maximizer.has_value()) {
    out << "  initial state: worst-case maximizer over pure states\n";
  } else {
    out << "  initial state: fixed\n";
  }
  out << "  epsilon: " << fmt_short(res.report.epsilon_mean) << " +/- "
      << fmt_short(res.report.epsilon_stderr) << "\n";
  if (res.report.bound_value.has_value()) {
    out << "  bound: " << fmt_short(*res.report.bound_value) << " (q=" << fmt_short(q) << ")\n";
  } else {
    out << "  bound: inapplicable (q=" << fmt_short(q) << " >= 1)\n";
  }
  out << "  wall_time_s: " << fmt_short(res.wall_time_s) << "\n";
  return out.str();
}

SweepOutcome run_sweep(const SweepConfig& cfg, int threads) {
  SweepOutcome out;
  for (double value : cfg.values) {
    ScenarioConfig scenario = scenario_for_value(cfg, value);
    ScenarioResult result = run_scenario(scenario, threads);
    out.rows.push_back(SweepRow{std::move(scenario), std::move(result)});
  }

  if (cfg.variable != SweepVariable::DeltaT) {
    out.slope_note = "slope: only fitted for delta_t sweeps";
    return out;
  }

  std::vector<double> xs;
  std::vector<double> ys;
  for (const auto& row : out.rows) {
    const double eps = row.result.report.epsilon_mean;
    const double se = row.result.report.epsilon_stderr;
    if (eps > 10.0 * se && eps > 0.0) {
      xs.push_back(std::log(row.config.protocol.delta_t()));
      ys.push_back(std::log(eps));
    }
  }
  if (xs.size() < 2) {
    out.slope_note = "slope undefined: fewer than two rows with epsilon > 10 stderr";
    return out;
  }

  double x_mean = 0.0;
  double y_mean = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    x_mean += xs[i];
    y_mean += ys[i];
  }
  x_mean /= double(xs.size());
  y_mean /= double(xs.size());
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - x_mean) * (ys[i] - y_mean);
    sxx += (xs[i] - x_mean) * (xs[i] - x_mean);
  }
  out.slope = sxy / sxx;
  out.slope_note = "slope fitted over " + std::to_string(xs.size()) + " of " +
                   std::to_string(out.rows.size()) + " rows";
  return out;
}

std::string sweep_report_text(const SweepConfig& cfg, const SweepOutcome& out) {
  std::ostringstream text;
  text << "sweep over " << out.rows.size() << " values\n";
  for (const auto& row : out.rows) {
    text << "----\n" << scenario_report_text(row.config, row.result);
  }
  text << "----\n";
  if (out.slope.has_value()) {
    text << "log-log slope of epsilon vs delta_t: " << fmt_short(*out.slope) << " ("
         << out.slope_note << ")\n";
  } else {
    text << out.slope_note << "\n";
  }
  (void)cfg;
  return text.str();
}

GroupVerification verify_group_details(const NamedGroup& named) {
  const GroupReport rep = verify_group(named.group);
  const bool irr = rep.closed ? is_irreducible(named.group) : false;
  return GroupVerification{named.label, named.group.size(), rep.worst_residual, rep.closed, irr};
}

std::string group_report_text(const GroupVerification& v) {
  std::ostringstream out;
  out << "group " << v.label << "\n"
      << "  elements: " << v.size << "\n"
      << "  closure residual: " << fmt_short(v.closure_residual) << " (tolerance "
      << fmt_short(kClosureTol) << ")\n"
      << "  closed: " << (v.closed ? "yes" : "no") << "\n";
  if (v.closed) {
    out << "  irreducible: " << (v.irreducible ? "yes" : "no") << "\n";
  } else {
    out << "  irreducible: not evaluated (group not closed)\n";
  }
  return out.str();
}

CompareOutcome run_compare(const ScenarioConfig& cfg, int threads) {
  CompareOutcome out;
  const ProtocolSpec& base = cfg.protocol;

  for (ProtocolKind kind : {ProtocolKind::Free, ProtocolKind::Cyclic, ProtocolKind::Random}) {
    if (kind == ProtocolKind::Cyclic && !cfg.system.time_independent()) {
      out.note = "cyclic row omitted: cycle-based decoupling applies to time-independent "
                 "systems only";
      continue;
    }
    ScenarioConfig variant = cfg;
    variant.protocol = ProtocolSpec(kind, base.group(), base.delta_t(), base.horizon(),
                                    base.seed(),
                                    kind == ProtocolKind::Cyclic ? base.cyclic_order()
                                                                 : std::vector<int>{});
    ScenarioResult result = run_scenario(variant, threads);
    out.rows.push_back(SweepRow{std::move(variant), std::move(result)});
  }
  return out;
}

std::string compare_report_text(const ScenarioConfig& cfg, const CompareOutcome& out) {
  std::ostringstream text;
  text << "protocol comparison for scenario " << cfg.scenario_id << "\n";
  for (const auto& row : out.rows) {
    text << "  " << kind_name(row.config.protocol.kind()) << ": epsilon="
         << fmt_short(row.result.report.epsilon_mean) << " +/- "
         << fmt_short(row.result.report.epsilon_stderr) << "\n";
  }
  if (!out.note.empty()) text << "  note: " << out.note << "\n";
  return text.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ConfigError(path + ": cannot open for writing");
  out << content;
  if (!out) throw std::runtime_error(path + ": write failed");
}

}  // namespace randec
