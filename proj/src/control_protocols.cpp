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

#include "randec/control_protocols.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "randec/errors.h"
#include "randec/rng.h"

namespace randec {

namespace {

// Conjugated system-side factor g^dag A g, symmetrized to keep the Hermitian
// tag honest against roundoff.
CMatrix conjugate_by(const CMatrix& g, const CMatrix& a) {
  CMatrix c = g.adjoint() * a * g;
  return 0.5 * (c + c.adjoint().eval());
}

}  // namespace

ProtocolSpec::ProtocolSpec(ProtocolKind kind, DecouplingGroup group, double delta_t, double horizon,
                           std::uint64_t seed, std::vector<int> cyclic_order)
    : kind_(kind),
      group_(std::move(group)),
      delta_t_(delta_t),
      horizon_(horizon),
      num_intervals_(0),
      seed_(seed),
      cyclic_order_(std::move(cyclic_order)) {
  if (!(delta_t_ > 0.0)) {
    throw std::invalid_argument("ProtocolSpec: delta_t must be positive");
  }
  if (!(horizon_ > 0.0)) {
    throw std::invalid_argument("ProtocolSpec: horizon must be positive");
  }
  const long long m = std::llround(horizon_ / delta_t_);
  if (m < 1) {
    throw std::invalid_argument("ProtocolSpec: horizon shorter than one interval");
  }
  num_intervals_ = static_cast<int>(m);
  horizon_ = delta_t_ * static_cast<double>(num_intervals_);

  if (!cyclic_order_.empty()) {
    if (kind_ != ProtocolKind::Cyclic) {
      throw std::invalid_argument("ProtocolSpec: traversal order only applies to cyclic protocols");
    }
    std::vector<int> sorted = cyclic_order_;
    std::sort(sorted.begin(), sorted.end());
    for (int i = 0; i < static_cast<int>(sorted.size()); ++i) {
      if (sorted[i] != i) {
        throw std::invalid_argument("ProtocolSpec: traversal order must permute 0..|G|-1");
      }
    }
    if (static_cast<int>(cyclic_order_.size()) != group_.size()) {
      throw std::invalid_argument("ProtocolSpec: traversal order must cover the whole group");
    }
  }
}

ControlPath::ControlPath(DecouplingGroup group, double delta_t, std::vector<int> element_indices)
    : group_(std::move(group)), delta_t_(delta_t), indices_(std::move(element_indices)) {
  if (!(delta_t_ > 0.0)) {
    throw std::invalid_argument("ControlPath: delta_t must be positive");
  }
  if (indices_.empty()) {
    throw std::invalid_argument("ControlPath: need at least one interval");
  }
  for (int idx : indices_) {
    if (idx < 0 || idx >= group_.size()) {
      throw std::invalid_argument("ControlPath: element index out of range");
    }
  }
}

std::vector<double> ControlPath::jump_times() const {
  std::vector<double> times(indices_.size());
  for (std::size_t j = 0; j < indices_.size(); ++j) {
    times[j] = delta_t_ * static_cast<double>(j);
  }
  return times;
}

int ControlPath::interval_at(double t) const {
  const double tol = 1e-12 * horizon();
  if (t < -tol || t > horizon() + tol) {
    throw std::invalid_argument("ControlPath: time outside [0, horizon]");
  }
  const int j = static_cast<int>(std::floor(t / delta_t_));
  return std::clamp(j, 0, num_intervals() - 1);
}

const Operator& ControlPath::element_at(double t) const {
  return group_.element(indices_[interval_at(t)]);
}

ControlPath make_path(const ProtocolSpec& spec) {
  const int m = spec.num_intervals();
  const int g = spec.group().size();
  std::vector<int> indices(m, 0);

  switch (spec.kind()) {
    case ProtocolKind::Free:
      break;
    case ProtocolKind::Cyclic: {
      if (m % g != 0) {
        throw std::invalid_argument("make_path: cyclic protocol needs M divisible by |G|");
      }
      for (int j = 0; j < m; ++j) {
        const int pos = j % g;
        indices[j] = spec.cyclic_order().empty() ? pos : spec.cyclic_order()[pos];
      }
      break;
    }
    case ProtocolKind::Random: {
      const CounterRng rng(spec.seed());
      for (int j = 0; j < m; ++j) {
        indices[j] = static_cast<int>(rng.uniform_index(static_cast<std::uint64_t>(j),
                                                        static_cast<std::uint32_t>(g)));
      }
      break;
    }
  }
  return ControlPath(spec.group(), spec.delta_t(), std::move(indices));
}

Operator control_unitary_at(const ControlPath& path, double t) {
  return path.element_at(t);
}

Operator logical_hamiltonian_at(const OpenSystemSpec& spec, const ControlPath& path, double t) {
  if (path.group().dim() != spec.d_s()) {
    throw std::invalid_argument("logical_hamiltonian_at: group acts on the wrong dimension");
  }
  const CMatrix& g = path.element_at(t).mat();
  const CMatrix eye_e = CMatrix::Identity(spec.d_e(), spec.d_e());

  CMatrix sys = CMatrix::Zero(spec.d_s(), spec.d_s());
  for (const auto& term : spec.system_terms()) {
    sys += term.envelope.value(t) * conjugate_by(g, term.op.mat());
  }
  CMatrix h = kron(sys, eye_e) + spec.env_identity_term();
  for (const auto& c : spec.couplings()) {
    h += c.envelope.value(t) * kron(conjugate_by(g, c.system_op.mat()), c.env_op.mat());
  }
  return Operator::hermitian(std::move(h));
}

Operator logical_interaction_hamiltonian_at(const OpenSystemSpec& spec, const ControlPath& path,
                                            double t) {
  if (path.group().dim() != spec.d_s()) {
    throw std::invalid_argument("logical_interaction_hamiltonian_at: group acts on the wrong dimension");
  }
  const CMatrix& g = path.element_at(t).mat();
  const CMatrix u_env = hermitian_exp(spec.env_hamiltonian().mat(), t);
  const CMatrix eye_e = CMatrix::Identity(spec.d_e(), spec.d_e());

  CMatrix sys = CMatrix::Zero(spec.d_s(), spec.d_s());
  for (const auto& term : spec.system_terms()) {
    sys += term.envelope.value(t) * conjugate_by(g, term.op.mat());
  }
  CMatrix h = kron(sys, eye_e);
  for (const auto& c : spec.couplings()) {
    const CMatrix b_rot = conjugate_by(u_env, c.env_op.mat());
    h += c.envelope.value(t) * kron(conjugate_by(g, c.system_op.mat()), b_rot);
  }
  return Operator::hermitian(std::move(h));
}

Operator leading_average_hamiltonian(const OpenSystemSpec& spec, const ControlPath& path) {
  if (!spec.time_independent()) {
    throw UnsupportedConfiguration(
        "leading_average_hamiltonian: cycle averaging needs a time-independent system");
  }
  if (path.group().dim() != spec.d_s()) {
    throw std::invalid_argument("leading_average_hamiltonian: group acts on the wrong dimension");
  }
  const int m = path.num_intervals();
  const double w = 1.0 / static_cast<double>(m);
  const CMatrix eye_e = CMatrix::Identity(spec.d_e(), spec.d_e());

  CMatrix sys_bar = CMatrix::Zero(spec.d_s(), spec.d_s());
  std::vector<CMatrix> cpl_bar(spec.couplings().size(),
                               CMatrix::Zero(spec.d_s(), spec.d_s()));
  for (int j = 0; j < m; ++j) {
    const CMatrix& g = path.group().element(path.element_index(j)).mat();
    for (const auto& term : spec.system_terms()) {
      sys_bar += w * term.envelope.value(0.0) * conjugate_by(g, term.op.mat());
    }
    for (std::size_t a = 0; a < spec.couplings().size(); ++a) {
      const auto& c = spec.couplings()[a];
      cpl_bar[a] += w * c.envelope.value(0.0) * conjugate_by(g, c.system_op.mat());
    }
  }

  CMatrix h = kron(sys_bar, eye_e) + spec.env_identity_term();
  for (std::size_t a = 0; a < spec.couplings().size(); ++a) {
    h += kron(cpl_bar[a], spec.couplings()[a].env_op.mat());
  }
  return Operator::hermitian(std::move(h));
}

}  // namespace randec
