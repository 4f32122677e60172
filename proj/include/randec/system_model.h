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

#ifndef RANDEC_SYSTEM_MODEL_H
#define RANDEC_SYSTEM_MODEL_H

#include <cstdint>
#include <vector>

#include "randec/operator_core.h"

namespace randec {

// Scalar time profile multiplying one Hamiltonian term.
class Envelope {
 public:
  enum class Kind { Constant, Sinusoid, PiecewiseLinear };

  static Envelope constant(double amplitude);
  // amplitude * sin(frequency * t)
  static Envelope sinusoid(double amplitude, double frequency);
  // Linear interpolation through (t_i, v_i) with strictly increasing t_i.
  static Envelope piecewise_linear(std::vector<std::pair<double, double>> table);

  double value(double t) const;
  Kind kind() const { return kind_; }
  bool is_constant() const { return kind_ == Kind::Constant; }
  double amplitude() const { return amplitude_; }
  double frequency() const { return frequency_; }
  const std::vector<std::pair<double, double>>& table() const { return table_; }

 private:
  Envelope() = default;

  Kind kind_ = Kind::Constant;
  double amplitude_ = 0.0;
  double frequency_ = 0.0;
  std::vector<std::pair<double, double>> table_;
};

// One system-only drift term A(t) = envelope(t) * op, op Hermitian on S.
struct SystemTerm {
  Operator op;
  Envelope envelope;
};

// One interaction term envelope(t) * J (x) B with J traceless Hermitian on S
// and B Hermitian on E.
struct Coupling {
  Operator system_op;
  Envelope envelope;
  Operator env_op;
};

// H_0(t) = H_S(t) (x) I_E + I_S (x) H_E + sum_a J_a(t) (x) B_a.
// System terms are stripped of their trace part at construction so that
// H_S is traceless; couplings must come in traceless already.
class OpenSystemSpec {
 public:
  OpenSystemSpec(int d_s, int d_e, std::vector<SystemTerm> system_terms,
                 Operator env_hamiltonian, std::vector<Coupling> couplings);

  int d_s() const { return d_s_; }
  int d_e() const { return d_e_; }
  int joint_dim() const { return d_s_ * d_e_; }
  const std::vector<SystemTerm>& system_terms() const { return system_terms_; }
  const Operator& env_hamiltonian() const { return env_hamiltonian_; }
  const std::vector<Coupling>& couplings() const { return couplings_; }

  bool time_independent() const;

  // Cached I_S (x) H_E; drift_at(t) is computed as
  // interaction_matrix_at(t) + env_identity_term() so the identity
  // drift - interaction = I_S (x) H_E holds term by term.
  const CMatrix& env_identity_term() const { return lifted_env_; }

  // Raw (untagged) evaluations used by hot loops.
  CMatrix interaction_matrix_at(double t) const;
  CMatrix drift_matrix_at(double t) const;

 private:
  int d_s_;
  int d_e_;
  std::vector<SystemTerm> system_terms_;
  Operator env_hamiltonian_;
  std::vector<Coupling> couplings_;

  // Lifted to the joint space once at construction.
  std::vector<CMatrix> lifted_system_;
  std::vector<CMatrix> lifted_couplings_;
  CMatrix lifted_env_;
};

// Tagged full/interaction Hamiltonians at time t.
Operator drift_at(const OpenSystemSpec& spec, double t);
Operator interaction_at(const OpenSystemSpec& spec, double t);

struct StrengthBound {
  double k;
  int grid_points;
  double horizon;
};

// k = max_t ||interaction_at(t)||_2 sampled on a uniform grid over
// [0, horizon] (endpoints included), times a safety factor: 1.0 when every
// envelope is constant, 1.05 otherwise.
StrengthBound estimate_k(const OpenSystemSpec& spec, double horizon, int grid_points);

// Single qubit with H_S = omega0 sigma_z coupled to n_env_qubits bath spins:
// H_E = sum_j freq_j sigma_z^(j), couplings sigma_a (x) B_a for a = x, y, z
// where B_a is a seeded random Hermitian rescaled to coupling_norms[a].
// Zero-norm couplings are dropped. Deterministic in spec_seed.
OpenSystemSpec build_spin_bath(std::uint64_t spec_seed, int n_env_qubits,
                               const std::vector<double>& coupling_norms,
                               const std::vector<double>& env_frequencies,
                               double omega0 = 1.0);

}  // namespace randec

#endif  // RANDEC_SYSTEM_MODEL_H
