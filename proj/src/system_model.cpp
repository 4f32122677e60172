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

#include "randec/system_model.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "randec/rng.h"

namespace randec {

namespace {

constexpr double kTracelessTol = 1e-12;
constexpr double kEnvelopeTimeTol = 1e-12;
constexpr double kConstantSafety = 1.0;
constexpr double kTimeDependentSafety = 1.05;
constexpr int kMaxBathQubits = 5;  // d_E = 2^n capped at 32

Operator strip_trace(const Operator& op) {
  const int d = op.dim();
  const double tr = op.mat().trace().real();
  if (std::abs(tr) <= kTracelessTol) return op;
  CMatrix m = op.mat() - (tr / d) * CMatrix::Identity(d, d);
  return Operator::hermitian(std::move(m));
}

}  // namespace

Envelope Envelope::constant(double amplitude) {
  Envelope e;
  e.kind_ = Kind::Constant;
  e.amplitude_ = amplitude;
  return e;
}

Envelope Envelope::sinusoid(double amplitude, double frequency) {
  Envelope e;
  e.kind_ = Kind::Sinusoid;
  e.amplitude_ = amplitude;
  e.frequency_ = frequency;
  return e;
}

Envelope Envelope::piecewise_linear(std::vector<std::pair<double, double>> table) {
  if (table.size() < 2) {
    throw std::invalid_argument("Envelope::piecewise_linear: need at least two breakpoints");
  }
  for (std::size_t i = 1; i < table.size(); ++i) {
    if (!(table[i].first > table[i - 1].first)) {
      throw std::invalid_argument("Envelope::piecewise_linear: breakpoints must strictly increase");
    }
  }
  Envelope e;
  e.kind_ = Kind::PiecewiseLinear;
  e.table_ = std::move(table);
  return e;
}

double Envelope::value(double t) const {
  switch (kind_) {
    case Kind::Constant:
      return amplitude_;
    case Kind::Sinusoid:
      return amplitude_ * std::sin(frequency_ * t);
    case Kind::PiecewiseLinear: {
      if (t < table_.front().first - kEnvelopeTimeTol || t > table_.back().first + kEnvelopeTimeTol) {
        throw std::invalid_argument("Envelope::value: time outside the tabulated range");
      }
      t = std::clamp(t, table_.front().first, table_.back().first);
      auto it = std::upper_bound(table_.begin(), table_.end(), t,
                                 [](double x, const auto& p) { return x < p.first; });
      if (it == table_.begin()) return table_.front().second;
      if (it == table_.end()) return table_.back().second;
      const auto& [t1, v1] = *(it - 1);
      const auto& [t2, v2] = *it;
      const double w = (t - t1) / (t2 - t1);
      return v1 + w * (v2 - v1);
    }
  }
  throw std::logic_error("Envelope::value: unreachable");
}

OpenSystemSpec::OpenSystemSpec(int d_s, int d_e, std::vector<SystemTerm> system_terms,
                               Operator env_hamiltonian, std::vector<Coupling> couplings)
    : d_s_(d_s),
      d_e_(d_e),
      system_terms_(std::move(system_terms)),
      env_hamiltonian_(std::move(env_hamiltonian)),
      couplings_(std::move(couplings)) {
  if (d_s_ < 1 || d_e_ < 1) {
    throw std::invalid_argument("OpenSystemSpec: dimensions must be positive");
  }
  if (!env_hamiltonian_.hermitian_tagged() || env_hamiltonian_.dim() != d_e_) {
    throw std::invalid_argument("OpenSystemSpec: env Hamiltonian must be Hermitian of dim d_E");
  }
  for (auto& term : system_terms_) {
    if (!term.op.hermitian_tagged() || term.op.dim() != d_s_) {
      throw std::invalid_argument("OpenSystemSpec: system terms must be Hermitian of dim d_S");
    }
    term.op = strip_trace(term.op);
  }
  for (const auto& c : couplings_) {
    if (!c.system_op.hermitian_tagged() || c.system_op.dim() != d_s_) {
      throw std::invalid_argument("OpenSystemSpec: coupling system factor must be Hermitian of dim d_S");
    }
    if (!c.env_op.hermitian_tagged() || c.env_op.dim() != d_e_) {
      throw std::invalid_argument("OpenSystemSpec: coupling env factor must be Hermitian of dim d_E");
    }
    if (std::abs(c.system_op.mat().trace()) > kTracelessTol) {
      throw std::invalid_argument("OpenSystemSpec: coupling system factor must be traceless");
    }
  }

  const CMatrix eye_s = CMatrix::Identity(d_s_, d_s_);
  const CMatrix eye_e = CMatrix::Identity(d_e_, d_e_);
  lifted_system_.reserve(system_terms_.size());
  for (const auto& term : system_terms_) {
    lifted_system_.push_back(kron(term.op.mat(), eye_e));
  }
  lifted_couplings_.reserve(couplings_.size());
  for (const auto& c : couplings_) {
    lifted_couplings_.push_back(kron(c.system_op.mat(), c.env_op.mat()));
  }
  lifted_env_ = kron(eye_s, env_hamiltonian_.mat());
}

bool OpenSystemSpec::time_independent() const {
  for (const auto& term : system_terms_) {
    if (!term.envelope.is_constant()) return false;
  }
  for (const auto& c : couplings_) {
    if (!c.envelope.is_constant()) return false;
  }
  return true;
}

CMatrix OpenSystemSpec::interaction_matrix_at(double t) const {
  CMatrix h = CMatrix::Zero(joint_dim(), joint_dim());
  for (std::size_t i = 0; i < system_terms_.size(); ++i) {
    h += system_terms_[i].envelope.value(t) * lifted_system_[i];
  }
  for (std::size_t a = 0; a < couplings_.size(); ++a) {
    h += couplings_[a].envelope.value(t) * lifted_couplings_[a];
  }
  return h;
}

CMatrix OpenSystemSpec::drift_matrix_at(double t) const {
  return interaction_matrix_at(t) + lifted_env_;
}

Operator drift_at(const OpenSystemSpec& spec, double t) {
  return Operator::hermitian(spec.drift_matrix_at(t));
}

Operator interaction_at(const OpenSystemSpec& spec, double t) {
  return Operator::hermitian(spec.interaction_matrix_at(t));
}

StrengthBound estimate_k(const OpenSystemSpec& spec, double horizon, int grid_points) {
  if (!(horizon > 0.0)) {
    throw std::invalid_argument("estimate_k: horizon must be positive");
  }
  if (grid_points < 2) {
    throw std::invalid_argument("estimate_k: need at least two grid points");
  }
  double peak = 0.0;
  for (int i = 0; i < grid_points; ++i) {
    const double t = horizon * static_cast<double>(i) / (grid_points - 1);
    peak = std::max(peak, two_norm(spec.interaction_matrix_at(t)));
  }
  const double safety = spec.time_independent() ? kConstantSafety : kTimeDependentSafety;
  return {peak * safety, grid_points, horizon};
}

OpenSystemSpec build_spin_bath(std::uint64_t spec_seed, int n_env_qubits,
                               const std::vector<double>& coupling_norms,
                               const std::vector<double>& env_frequencies,
                               double omega0) {
  if (n_env_qubits < 1 || n_env_qubits > kMaxBathQubits) {
    throw std::invalid_argument("build_spin_bath: bath size out of range");
  }
  if (coupling_norms.size() != 3) {
    throw std::invalid_argument("build_spin_bath: need one norm per axis (x, y, z)");
  }
  if (static_cast<int>(env_frequencies.size()) != n_env_qubits) {
    throw std::invalid_argument("build_spin_bath: need one frequency per bath qubit");
  }
  for (double nrm : coupling_norms) {
    if (nrm < 0.0) throw std::invalid_argument("build_spin_bath: coupling norms must be >= 0");
  }

  const int d_e = 1 << n_env_qubits;

  // H_E = sum_j freq_j sigma_z on qubit j (qubit 0 is the slow index).
  CMatrix h_env = CMatrix::Zero(d_e, d_e);
  for (int j = 0; j < n_env_qubits; ++j) {
    CMatrix lifted = CMatrix::Identity(1, 1);
    for (int q = 0; q < n_env_qubits; ++q) {
      lifted = kron(lifted, q == j ? pauli_z() : identity_matrix(2));
    }
    h_env += env_frequencies[j] * lifted;
  }

  std::vector<SystemTerm> system_terms;
  system_terms.push_back({Operator::hermitian(pauli_z()), Envelope::constant(omega0)});

  const CMatrix sigma[3] = {pauli_x(), pauli_y(), pauli_z()};
  std::vector<Coupling> couplings;
  for (int a = 0; a < 3; ++a) {
    if (coupling_norms[a] == 0.0) continue;
    // Independent stream per axis; dropped axes do not shift the others.
    CounterRng rng(spec_seed, static_cast<std::uint64_t>(a));
    CMatrix g(d_e, d_e);
    std::uint64_t c = 0;
    for (int i = 0; i < d_e; ++i) {
      for (int j = 0; j < d_e; ++j) {
        const double re = rng.gaussian(c++);
        const double im = rng.gaussian(c++);
        g(i, j) = Complex(re, im);
      }
    }
    CMatrix b = 0.5 * (g + g.adjoint().eval());
    const double nrm = two_norm(b);
    if (nrm == 0.0) {
      throw std::runtime_error("build_spin_bath: degenerate random draw");
    }
    b *= coupling_norms[a] / nrm;
    couplings.push_back({Operator::hermitian(sigma[a]), Envelope::constant(1.0),
                         Operator::hermitian(std::move(b))});
  }

  return OpenSystemSpec(2, d_e, std::move(system_terms), Operator::hermitian(std::move(h_env)),
                        std::move(couplings));
}

}  // namespace randec
