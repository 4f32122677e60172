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

#include "randec/config.h"

#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace randec {
namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
  throw ConfigError(path + ": " + msg);
}

void check_keys(const json& j, const std::string& path,
                std::initializer_list<const char*> allowed) {
  for (const auto& item : j.items()) {
    bool known = false;
    for (const char* key : allowed) {
      if (item.key() == key) {
        known = true;
        break;
      }
    }
    if (!known) fail(path + "." + item.key(), "unknown field");
  }
}

const json& require(const json& j, const std::string& path, const char* key) {
  if (!j.is_object()) fail(path, "expected an object");
  const auto it = j.find(key);
  if (it == j.end()) fail(path + "." + key, "missing required field");
  return *it;
}

double as_double(const json& j, const std::string& path) {
  if (!j.is_number()) fail(path, "expected a number");
  return j.get<double>();
}

int as_int(const json& j, const std::string& path) {
  if (!j.is_number_integer()) fail(path, "expected an integer");
  const std::int64_t v = j.get<std::int64_t>();
  if (v < INT32_MIN || v > INT32_MAX) fail(path, "integer out of range");
  return static_cast<int>(v);
}

std::uint64_t as_seed(const json& j, const std::string& path) {
  if (j.is_number_unsigned()) return j.get<std::uint64_t>();
  if (j.is_number_integer()) {
    const std::int64_t v = j.get<std::int64_t>();
    if (v < 0) fail(path, "seed must be nonnegative");
    return static_cast<std::uint64_t>(v);
  }
  fail(path, "expected an integer seed");
}

std::string as_string(const json& j, const std::string& path) {
  if (!j.is_string()) fail(path, "expected a string");
  return j.get<std::string>();
}

Complex parse_entry(const json& j, const std::string& path) {
  if (j.is_number()) return Complex(j.get<double>(), 0.0);
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return Complex(j[0].get<double>(), j[1].get<double>());
  }
  fail(path, "expected a number or an [re, im] pair");
}

CVector parse_vector(const json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) fail(path, "expected a nonempty array");
  CVector v(static_cast<int>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    v(static_cast<int>(i)) = parse_entry(j[i], path + "[" + std::to_string(i) + "]");
  }
  return v;
}

CMatrix parse_matrix(const json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) fail(path, "expected a nonempty array of rows");
  const std::size_t rows = j.size();
  std::size_t cols = 0;
  CMatrix m;
  for (std::size_t r = 0; r < rows; ++r) {
    const std::string row_path = path + "[" + std::to_string(r) + "]";
    const json& row = j[r];
    if (!row.is_array() || row.empty()) fail(row_path, "expected a nonempty row array");
    if (r == 0) {
      cols = row.size();
      m.resize(static_cast<int>(rows), static_cast<int>(cols));
    } else if (row.size() != cols) {
      fail(row_path, "ragged matrix rows");
    }
    for (std::size_t c = 0; c < cols; ++c) {
      m(static_cast<int>(r), static_cast<int>(c)) =
          parse_entry(row[c], row_path + "[" + std::to_string(c) + "]");
    }
  }
  return m;
}

CMatrix builtin_operator(const std::string& name, const std::string& path) {
  if (name == "sigma_x") return pauli_x();
  if (name == "sigma_y") return pauli_y();
  if (name == "sigma_z") return pauli_z();
  if (name == "identity") return identity_matrix(2);
  fail(path, "unknown operator name '" + name +
                 "' (expected sigma_x, sigma_y, sigma_z, identity, or a matrix literal)");
}

CMatrix parse_operator_matrix(const json& j, const std::string& path) {
  if (j.is_string()) return builtin_operator(j.get<std::string>(), path);
  return parse_matrix(j, path);
}

Envelope parse_envelope(const json& j, const std::string& path) {
  try {
    if (j.is_number()) return Envelope::constant(j.get<double>());
    if (!j.is_object()) fail(path, "expected a number or an envelope object");
    const std::string kind = as_string(require(j, path, "kind"), path + ".kind");
    if (kind == "constant") {
      check_keys(j, path, {"kind", "value"});
      return Envelope::constant(as_double(require(j, path, "value"), path + ".value"));
    }
    if (kind == "sinusoid") {
      check_keys(j, path, {"kind", "amplitude", "frequency"});
      return Envelope::sinusoid(as_double(require(j, path, "amplitude"), path + ".amplitude"),
                                as_double(require(j, path, "frequency"), path + ".frequency"));
    }
    if (kind == "piecewise_linear") {
      check_keys(j, path, {"kind", "times", "values"});
      const json& jt = require(j, path, "times");
      const json& jv = require(j, path, "values");
      if (!jt.is_array() || !jv.is_array()) fail(path, "times and values must be arrays");
      if (jt.size() != jv.size()) fail(path, "times and values must have equal length");
      std::vector<std::pair<double, double>> table;
      for (std::size_t i = 0; i < jt.size(); ++i) {
        table.emplace_back(as_double(jt[i], path + ".times[" + std::to_string(i) + "]"),
                           as_double(jv[i], path + ".values[" + std::to_string(i) + "]"));
      }
      return Envelope::piecewise_linear(std::move(table));
    }
    fail(path + ".kind", "unknown envelope kind '" + kind + "'");
  } catch (const std::invalid_argument& e) {
    fail(path, e.what());
  }
}

CMatrix sigma_z_chain(const std::vector<double>& freqs) {
  const int n = static_cast<int>(freqs.size());
  const int dim = 1 << n;
  CMatrix h = CMatrix::Zero(dim, dim);
  for (int target = 0; target < n; ++target) {
    CMatrix term = CMatrix::Ones(1, 1);
    for (int q = 0; q < n; ++q) {
      term = kron(term, q == target ? pauli_z() : identity_matrix(2));
    }
    h += freqs[target] * term;
  }
  return h;
}

CMatrix parse_env_hamiltonian(const json& j, const std::string& path, int d_e) {
  if (j.is_string() && j.get<std::string>() == "zeros") {
    return CMatrix::Zero(d_e, d_e);
  }
  if (j.is_object()) {
    check_keys(j, path, {"spin_bath_z"});
    const json& sb = require(j, path, "spin_bath_z");
    check_keys(sb, path + ".spin_bath_z", {"frequencies"});
    const json& jf = require(sb, path + ".spin_bath_z", "frequencies");
    if (!jf.is_array() || jf.empty()) {
      fail(path + ".spin_bath_z.frequencies", "expected a nonempty array");
    }
    std::vector<double> freqs;
    for (std::size_t i = 0; i < jf.size(); ++i) {
      freqs.push_back(
          as_double(jf[i], path + ".spin_bath_z.frequencies[" + std::to_string(i) + "]"));
    }
    if ((1 << freqs.size()) != d_e) {
      fail(path + ".spin_bath_z", "2^len(frequencies) must equal d_e");
    }
    return sigma_z_chain(freqs);
  }
  return parse_matrix(j, path);
}

OpenSystemSpec parse_system(const json& j, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");

  if (j.contains("spin_bath")) {
    check_keys(j, path, {"spin_bath"});
    const std::string sb_path = path + ".spin_bath";
    const json& sb = j["spin_bath"];
    check_keys(sb, sb_path,
               {"seed", "n_env_qubits", "coupling_norms", "env_frequencies", "omega0"});
    const std::uint64_t seed = as_seed(require(sb, sb_path, "seed"), sb_path + ".seed");
    const int n_env = as_int(require(sb, sb_path, "n_env_qubits"), sb_path + ".n_env_qubits");
    const json& jn = require(sb, sb_path, "coupling_norms");
    const json& jf = require(sb, sb_path, "env_frequencies");
    if (!jn.is_array()) fail(sb_path + ".coupling_norms", "expected an array");
    if (!jf.is_array()) fail(sb_path + ".env_frequencies", "expected an array");
    std::vector<double> norms;
    for (std::size_t i = 0; i < jn.size(); ++i) {
      norms.push_back(as_double(jn[i], sb_path + ".coupling_norms[" + std::to_string(i) + "]"));
    }
    std::vector<double> freqs;
    for (std::size_t i = 0; i < jf.size(); ++i) {
      freqs.push_back(as_double(jf[i], sb_path + ".env_frequencies[" + std::to_string(i) + "]"));
    }
    double omega0 = 1.0;
    if (sb.contains("omega0")) omega0 = as_double(sb["omega0"], sb_path + ".omega0");
    try {
      return build_spin_bath(seed, n_env, norms, freqs, omega0);
    } catch (const std::invalid_argument& e) {
      fail(sb_path, e.what());
    }
  }

  check_keys(j, path, {"d_s", "d_e", "system_terms", "env_hamiltonian", "couplings"});
  const int d_s = as_int(require(j, path, "d_s"), path + ".d_s");
  const int d_e = as_int(require(j, path, "d_e"), path + ".d_e");
  if (d_s < 2) fail(path + ".d_s", "system dimension must be >= 2");
  if (d_e < 1) fail(path + ".d_e", "environment dimension must be >= 1");

  std::vector<SystemTerm> terms;
  if (j.contains("system_terms")) {
    const json& jt = j["system_terms"];
    if (!jt.is_array()) fail(path + ".system_terms", "expected an array");
    for (std::size_t i = 0; i < jt.size(); ++i) {
      const std::string tp = path + ".system_terms[" + std::to_string(i) + "]";
      check_keys(jt[i], tp, {"op", "envelope"});
      const CMatrix op = parse_operator_matrix(require(jt[i], tp, "op"), tp + ".op");
      try {
        terms.push_back({Operator::hermitian(op), parse_envelope(require(jt[i], tp, "envelope"),
                                                                 tp + ".envelope")});
      } catch (const std::invalid_argument& e) {
        fail(tp, e.what());
      }
    }
  }

  CMatrix env_h = CMatrix::Zero(d_e, d_e);
  if (j.contains("env_hamiltonian")) {
    env_h = parse_env_hamiltonian(j["env_hamiltonian"], path + ".env_hamiltonian", d_e);
  }

  std::vector<Coupling> couplings;
  if (j.contains("couplings")) {
    const json& jc = j["couplings"];
    if (!jc.is_array()) fail(path + ".couplings", "expected an array");
    for (std::size_t i = 0; i < jc.size(); ++i) {
      const std::string cp = path + ".couplings[" + std::to_string(i) + "]";
      check_keys(jc[i], cp, {"system_op", "envelope", "env_op"});
      const CMatrix sys_op = parse_operator_matrix(require(jc[i], cp, "system_op"),
                                                   cp + ".system_op");
      const CMatrix env_op = parse_operator_matrix(require(jc[i], cp, "env_op"), cp + ".env_op");
      try {
        couplings.push_back({Operator::hermitian(sys_op),
                             parse_envelope(require(jc[i], cp, "envelope"), cp + ".envelope"),
                             Operator::hermitian(env_op)});
      } catch (const std::invalid_argument& e) {
        fail(cp, e.what());
      }
    }
  }

  try {
    return OpenSystemSpec(d_s, d_e, std::move(terms), Operator::hermitian(env_h),
                          std::move(couplings));
  } catch (const std::invalid_argument& e) {
    fail(path, e.what());
  }
}

NamedGroup parse_group(const json& j, const std::string& path) {
  if (j.is_string()) {
    const std::string name = j.get<std::string>();
    if (name == "pauli_1") return {pauli_group(1), name};
    if (name == "pauli_2") return {pauli_group(2), name};
    if (name == "pauli_3") return {pauli_group(3), name};
    fail(path, "unknown group '" + name + "' (expected pauli_1, pauli_2, pauli_3)");
  }
  if (j.is_object()) {
    check_keys(j, path, {"elements"});
    const json& je = require(j, path, "elements");
    if (!je.is_array() || je.empty()) fail(path + ".elements", "expected a nonempty array");
    std::vector<Operator> elements;
    for (std::size_t i = 0; i < je.size(); ++i) {
      const std::string ep = path + ".elements[" + std::to_string(i) + "]";
      try {
        elements.push_back(Operator::unitary(parse_operator_matrix(je[i], ep)));
      } catch (const std::invalid_argument& e) {
        fail(ep, e.what());
      }
    }
    try {
      return {DecouplingGroup::from_elements(std::move(elements)),
              "custom_" + std::to_string(je.size())};
    } catch (const std::invalid_argument& e) {
      fail(path + ".elements", e.what());
    }
  }
  fail(path, "expected a group name or {\"elements\": [...]}");
}

struct ParsedProtocol {
  ProtocolSpec protocol;
  std::string group_label;
};

ParsedProtocol parse_protocol(const json& j, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
  check_keys(j, path, {"kind", "group", "delta_t", "horizon", "seed", "cyclic_order"});

  const std::string kind_name = as_string(require(j, path, "kind"), path + ".kind");
  ProtocolKind kind;
  if (kind_name == "free") {
    kind = ProtocolKind::Free;
  } else if (kind_name == "cyclic") {
    kind = ProtocolKind::Cyclic;
  } else if (kind_name == "random") {
    kind = ProtocolKind::Random;
  } else {
    fail(path + ".kind", "expected free, cyclic, or random");
  }

  NamedGroup group = j.contains("group") ? parse_group(j["group"], path + ".group")
                                         : NamedGroup{pauli_group(1), "pauli_1"};
  const double delta_t = as_double(require(j, path, "delta_t"), path + ".delta_t");
  const double horizon = as_double(require(j, path, "horizon"), path + ".horizon");
  const std::uint64_t seed = j.contains("seed") ? as_seed(j["seed"], path + ".seed") : 0;

  std::vector<int> order;
  if (j.contains("cyclic_order")) {
    const json& jo = j["cyclic_order"];
    if (!jo.is_array()) fail(path + ".cyclic_order", "expected an array");
    for (std::size_t i = 0; i < jo.size(); ++i) {
      order.push_back(as_int(jo[i], path + ".cyclic_order[" + std::to_string(i) + "]"));
    }
  }

  try {
    ProtocolSpec spec(kind, group.group, delta_t, horizon, seed, order);
    if (kind == ProtocolKind::Cyclic && spec.num_intervals() % group.group.size() != 0) {
      fail(path, "cyclic protocols need an interval count divisible by the group size");
    }
    return {std::move(spec), std::move(group.label)};
  } catch (const std::invalid_argument& e) {
    fail(path, e.what());
  }
}

DensityOperator parse_env_state(const json* j, const std::string& path, int d_e) {
  try {
    if (j == nullptr || (j->is_string() && j->get<std::string>() == "ground")) {
      CMatrix rho = CMatrix::Zero(d_e, d_e);
      rho(0, 0) = 1.0;
      return DensityOperator::from_matrix(rho);
    }
    if (j->is_string() && j->get<std::string>() == "maximally_mixed") {
      return DensityOperator::from_matrix(CMatrix(identity_matrix(d_e) / double(d_e)));
    }
    if (j->is_string()) fail(path, "expected ground, maximally_mixed, or a matrix literal");
    const CMatrix m = parse_matrix(*j, path);
    if (m.rows() != d_e) fail(path, "environment state dimension mismatch");
    return DensityOperator::from_matrix(m);
  } catch (const std::invalid_argument& e) {
    fail(path, e.what());
  }
}

std::optional<PureState> parse_pi_s(const json* j, const std::string& path, int d_s) {
  if (j == nullptr || (j->is_string() && j->get<std::string>() == "worst")) {
    if (d_s > 4) {
      fail(path, "worst-case maximization is limited to d_s <= 4; give an explicit state");
    }
    return std::nullopt;
  }
  const CVector v = parse_vector(*j, path);
  if (v.size() != d_s) fail(path, "initial state dimension mismatch");
  try {
    return PureState::normalized(v);
  } catch (const std::invalid_argument& e) {
    fail(path, e.what());
  }
}

McConfig parse_mc(const json* j, const std::string& path) {
  McConfig mc;
  if (j == nullptr) return mc;
  check_keys(*j, path, {"n_realizations", "master_seed"});
  if (j->contains("n_realizations")) {
    mc.n_realizations = as_int((*j)["n_realizations"], path + ".n_realizations");
    if (mc.n_realizations < 1) fail(path + ".n_realizations", "must be >= 1");
  }
  if (j->contains("master_seed")) {
    mc.master_seed = as_seed((*j)["master_seed"], path + ".master_seed");
  }
  return mc;
}

IntegratorConfig parse_integrator(const json* j, const std::string& path) {
  IntegratorConfig cfg;
  if (j == nullptr) return cfg;
  check_keys(*j, path, {"substeps_per_interval", "scheme"});
  if (j->contains("substeps_per_interval")) {
    cfg.substeps_per_interval =
        as_int((*j)["substeps_per_interval"], path + ".substeps_per_interval");
    if (cfg.substeps_per_interval < 1) fail(path + ".substeps_per_interval", "must be >= 1");
  }
  if (j->contains("scheme")) {
    const std::string s = as_string((*j)["scheme"], path + ".scheme");
    if (s == "midpoint") {
      cfg.scheme = IntegrationScheme::Midpoint;
    } else if (s == "exact_piecewise") {
      cfg.scheme = IntegrationScheme::ExactPiecewise;
    } else {
      fail(path + ".scheme", "expected midpoint or exact_piecewise");
    }
  }
  return cfg;
}

OutputConfig parse_outputs(const json* j, const std::string& path) {
  OutputConfig out;
  if (j == nullptr) return out;
  check_keys(*j, path, {"csv_path", "report_path"});
  if (j->contains("csv_path")) out.csv_path = as_string((*j)["csv_path"], path + ".csv_path");
  if (j->contains("report_path")) {
    out.report_path = as_string((*j)["report_path"], path + ".report_path");
  }
  return out;
}

ScenarioConfig parse_scenario(const json& j, const std::string& path) {
  if (!j.is_object()) fail(path, "expected a scenario object");
  check_keys(j, path,
             {"scenario_id", "system", "protocol", "mc", "integrator", "pi_s", "env_state",
              "outputs"});

  const std::string id = as_string(require(j, path, "scenario_id"), path + ".scenario_id");
  if (id.empty()) fail(path + ".scenario_id", "must be nonempty");
  if (id.find_first_of(",\"\n\r") != std::string::npos) {
    fail(path + ".scenario_id", "must not contain commas, quotes, or newlines");
  }

  OpenSystemSpec system = parse_system(require(j, path, "system"), path + ".system");
  ParsedProtocol protocol = parse_protocol(require(j, path, "protocol"), path + ".protocol");
  if (protocol.protocol.group().dim() != system.d_s()) {
    fail(path + ".protocol.group", "group dimension must match d_s");
  }

  const json* jmc = j.contains("mc") ? &j["mc"] : nullptr;
  const json* jint = j.contains("integrator") ? &j["integrator"] : nullptr;
  const json* jpi = j.contains("pi_s") ? &j["pi_s"] : nullptr;
  const json* jenv = j.contains("env_state") ? &j["env_state"] : nullptr;
  const json* jout = j.contains("outputs") ? &j["outputs"] : nullptr;

  McConfig mc = parse_mc(jmc, path + ".mc");
  IntegratorConfig integrator = parse_integrator(jint, path + ".integrator");
  std::optional<PureState> pi_s = parse_pi_s(jpi, path + ".pi_s", system.d_s());
  DensityOperator env_state = parse_env_state(jenv, path + ".env_state", system.d_e());
  OutputConfig outputs = parse_outputs(jout, path + ".outputs");

  return ScenarioConfig{id,
                        std::move(system),
                        std::move(protocol.group_label),
                        std::move(protocol.protocol),
                        mc,
                        integrator,
                        std::move(pi_s),
                        std::move(env_state),
                        std::move(outputs)};
}

json parse_json_text(const std::string& text, const std::string& origin) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(origin + ": " + e.what());
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(path + ": cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

ScenarioConfig parse_scenario_json(const std::string& text, const std::string& origin) {
  return parse_scenario(parse_json_text(text, origin), origin);
}

ScenarioConfig load_scenario_file(const std::string& path) {
  return parse_scenario_json(read_file(path), path);
}

SweepConfig parse_sweep_json(const std::string& text, const std::string& origin) {
  const json j = parse_json_text(text, origin);
  if (!j.is_object()) throw ConfigError(origin + ": expected a sweep object");
  check_keys(j, origin, {"base", "sweep_variable", "values"});

  ScenarioConfig base = parse_scenario(require(j, origin, "base"), origin + ".base");

  const std::string var_path = origin + ".sweep_variable";
  const std::string var = as_string(require(j, origin, "sweep_variable"), var_path);
  SweepVariable variable;
  if (var == "delta_t") {
    variable = SweepVariable::DeltaT;
  } else if (var == "horizon") {
    variable = SweepVariable::Horizon;
  } else if (var == "coupling_norm") {
    variable = SweepVariable::CouplingNorm;
  } else if (var == "n_realizations") {
    variable = SweepVariable::NRealizations;
  } else {
    fail(var_path, "expected delta_t, horizon, coupling_norm, or n_realizations");
  }

  const std::string vals_path = origin + ".values";
  const json& jv = require(j, origin, "values");
  if (!jv.is_array() || jv.empty()) fail(vals_path, "expected a nonempty array");
  std::vector<double> values;
  for (std::size_t i = 0; i < jv.size(); ++i) {
    values.push_back(as_double(jv[i], vals_path + "[" + std::to_string(i) + "]"));
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] <= 0) fail(vals_path, "values must be positive");
    if (variable == SweepVariable::NRealizations &&
        (std::abs(values[i] - std::llround(values[i])) > 1e-9 || values[i] < 1)) {
      fail(vals_path, "realization counts must be positive integers");
    }
  }
  if (values.size() > 1) {
    const bool increasing = values[1] > values[0];
    for (std::size_t i = 1; i < values.size(); ++i) {
      const bool step_up = values[i] > values[i - 1];
      if (values[i] == values[i - 1] || step_up != increasing) {
        fail(vals_path, "values must be strictly monotone");
      }
    }
  }
  if (variable == SweepVariable::CouplingNorm && base.system.couplings().empty()) {
    fail(origin, "coupling_norm sweeps need at least one coupling");
  }

  return SweepConfig{std::move(base), variable, std::move(values)};
}

SweepConfig load_sweep_file(const std::string& path) {
  return parse_sweep_json(read_file(path), path);
}

NamedGroup parse_group_argument(const std::string& name_or_path) {
  if (name_or_path == "pauli_1" || name_or_path == "pauli_2" || name_or_path == "pauli_3") {
    return parse_group(json(name_or_path), name_or_path);
  }
  const json j = parse_json_text(read_file(name_or_path), name_or_path);
  if (j.is_object() && j.contains("group")) {
    return parse_group(j["group"], name_or_path + ".group");
  }
  return parse_group(j, name_or_path);
}

ScenarioConfig scenario_for_value(const SweepConfig& cfg, double value) {
  ScenarioConfig out = cfg.base;
  const ProtocolSpec& p = cfg.base.protocol;
  try {
    switch (cfg.variable) {
      case SweepVariable::DeltaT:
        out.protocol = ProtocolSpec(p.kind(), p.group(), value, p.horizon(), p.seed(),
                                    p.cyclic_order());
        break;
      case SweepVariable::Horizon:
        out.protocol = ProtocolSpec(p.kind(), p.group(), p.delta_t(), value, p.seed(),
                                    p.cyclic_order());
        break;
      case SweepVariable::NRealizations:
        out.mc.n_realizations = static_cast<int>(std::llround(value));
        break;
      case SweepVariable::CouplingNorm: {
        const auto& spec = cfg.base.system;
        double max_norm = 0.0;
        for (const auto& c : spec.couplings()) {
          max_norm = std::max(max_norm, two_norm(c.env_op.mat()));
        }
        if (max_norm <= 0) {
          throw ConfigError("coupling_norm sweep: couplings have zero norm");
        }
        const double factor = value / max_norm;
        std::vector<Coupling> scaled;
        for (const auto& c : spec.couplings()) {
          scaled.push_back({c.system_op, c.envelope,
                            Operator::hermitian(CMatrix(factor * c.env_op.mat()))});
        }
        out.system = OpenSystemSpec(spec.d_s(), spec.d_e(), spec.system_terms(),
                                    spec.env_hamiltonian(), std::move(scaled));
        break;
      }
    }
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("sweep value ") + std::to_string(value) + ": " + e.what());
  }
  return out;
}

}  // namespace randec
