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

#include "randec/propagation_engine.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace randec {

namespace {

// Assembles frame Hamiltonians with per-element caching of the conjugated,
// lifted terms. The physical frame ignores the control element entirely.
class FrameEvaluator {
 public:
  FrameEvaluator(const OpenSystemSpec& spec, const ControlPath& path, Frame frame)
      : spec_(spec), path_(path), frame_(frame) {
    if (path_.group().dim() != spec_.d_s()) {
      throw std::invalid_argument("propagate: group acts on the wrong dimension");
    }
    if (frame_ == Frame::LogicalInteraction) {
      env_eig_.emplace(spec_.env_hamiltonian().mat());
      if (env_eig_->info() != Eigen::Success) {
        throw std::runtime_error("propagate: env eigendecomposition failed");
      }
    }
    cache_.resize(path_.group().size());
  }

  CMatrix operator()(int interval, double t) const {
    if (frame_ == Frame::Physical) {
      return spec_.drift_matrix_at(t);
    }
    const int elem = path_.element_index(interval);
    const ElementTerms& terms = element_terms(elem);

    CMatrix h;
    if (spec_.time_independent()) {
      h = terms.static_no_env;
    } else {
      h = CMatrix::Zero(spec_.joint_dim(), spec_.joint_dim());
      for (std::size_t i = 0; i < terms.sys.size(); ++i) {
        h += spec_.system_terms()[i].envelope.value(t) * terms.sys[i];
      }
      for (std::size_t a = 0; a < terms.cpl.size(); ++a) {
        h += spec_.couplings()[a].envelope.value(t) * terms.cpl[a];
      }
    }

    if (frame_ == Frame::Logical) {
      return h + spec_.env_identity_term();
    }
    // Interaction frame: conjugate by I (x) U_E(t). The system-only parts are
    // invariant under this, so conjugating the whole env-free sum is exact.
    const CMatrix u_env_lifted = kron(CMatrix::Identity(spec_.d_s(), spec_.d_s()), env_unitary(t));
    CMatrix rotated = u_env_lifted.adjoint() * h * u_env_lifted;
    return 0.5 * (rotated + rotated.adjoint().eval());
  }

 private:
  struct ElementTerms {
    bool ready = false;
    std::vector<CMatrix> sys;  // (g^dag A_i g) (x) I_E
    std::vector<CMatrix> cpl;  // (g^dag J_a g) (x) B_a
    CMatrix static_no_env;     // full env-free sum for time-independent specs
  };

  const ElementTerms& element_terms(int elem) const {
    ElementTerms& slot = cache_[elem];
    if (slot.ready) return slot;
    const CMatrix& g = path_.group().element(elem).mat();
    const CMatrix eye_e = CMatrix::Identity(spec_.d_e(), spec_.d_e());
    for (const auto& term : spec_.system_terms()) {
      CMatrix c = g.adjoint() * term.op.mat() * g;
      c = 0.5 * (c + c.adjoint().eval());
      slot.sys.push_back(kron(c, eye_e));
    }
    for (const auto& c : spec_.couplings()) {
      CMatrix s = g.adjoint() * c.system_op.mat() * g;
      s = 0.5 * (s + s.adjoint().eval());
      slot.cpl.push_back(kron(s, c.env_op.mat()));
    }
    if (spec_.time_independent()) {
      CMatrix h = CMatrix::Zero(spec_.joint_dim(), spec_.joint_dim());
      for (std::size_t i = 0; i < slot.sys.size(); ++i) {
        h += spec_.system_terms()[i].envelope.value(0.0) * slot.sys[i];
      }
      for (std::size_t a = 0; a < slot.cpl.size(); ++a) {
        h += spec_.couplings()[a].envelope.value(0.0) * slot.cpl[a];
      }
      slot.static_no_env = std::move(h);
    }
    slot.ready = true;
    return slot;
  }

  CMatrix env_unitary(double t) const {
    const auto& lam = env_eig_->eigenvalues();
    CVector phases(lam.size());
    for (Eigen::Index i = 0; i < lam.size(); ++i) {
      phases(i) = std::exp(Complex(0.0, -lam(i) * t));
    }
    return env_eig_->eigenvectors() * phases.asDiagonal() * env_eig_->eigenvectors().adjoint();
  }

  const OpenSystemSpec& spec_;
  const ControlPath& path_;
  Frame frame_;
  std::optional<Eigen::SelfAdjointEigenSolver<CMatrix>> env_eig_;
  mutable std::vector<ElementTerms> cache_;
};

}  // namespace

Operator propagate_range(const OpenSystemSpec& spec, const ControlPath& path, Frame frame,
                         const IntegratorConfig& cfg, double t_begin, double t_end) {
  if (cfg.substeps_per_interval < 1) {
    throw std::invalid_argument("propagate: need at least one substep per interval");
  }
  const double horizon = path.horizon();
  const double tol = 1e-12 * horizon;
  if (t_begin < -tol || t_end > horizon + tol || !(t_begin < t_end)) {
    throw std::invalid_argument("propagate: invalid time range");
  }

  const FrameEvaluator hamiltonian(spec, path, frame);
  const int d = spec.joint_dim();
  const CMatrix eye_e = CMatrix::Identity(spec.d_e(), spec.d_e());
  CMatrix u = CMatrix::Identity(d, d);

  const double dt = path.delta_t();
  const int j_first = path.interval_at(std::max(t_begin, 0.0));
  for (int j = j_first; j < path.num_intervals(); ++j) {
    const double lo = dt * static_cast<double>(j);
    const double seg_lo = std::max(lo, t_begin);
    const double seg_hi = std::min(dt * static_cast<double>(j + 1), t_end);
    if (!(seg_hi > seg_lo)) {
      if (seg_lo >= t_end) break;
      continue;
    }

    // Entering interval j at its boundary: apply the bang-bang kick.
    if (frame == Frame::Physical && seg_lo == lo) {
      const CMatrix& g_now = path.group().element(path.element_index(j)).mat();
      const CMatrix g_prev = (j == 0) ? CMatrix(CMatrix::Identity(spec.d_s(), spec.d_s()))
                                      : path.group().element(path.element_index(j - 1)).mat();
      u = kron(CMatrix(g_now * g_prev.adjoint()), eye_e) * u;
    }

    const double h_step = (seg_hi - seg_lo) / cfg.substeps_per_interval;
    for (int s = 0; s < cfg.substeps_per_interval; ++s) {
      const double t_eval = cfg.scheme == IntegrationScheme::Midpoint
                                ? seg_lo + (static_cast<double>(s) + 0.5) * h_step
                                : seg_lo + static_cast<double>(s) * h_step;
      u = hermitian_exp(hamiltonian(j, t_eval), h_step) * u;
    }
  }
  return Operator::unitary(std::move(u));
}

Operator propagate(const OpenSystemSpec& spec, const ControlPath& path, Frame frame,
                   const IntegratorConfig& cfg) {
  return propagate_range(spec, path, frame, cfg, 0.0, path.horizon());
}

double verify_frame_relation(const OpenSystemSpec& spec, const ControlPath& path,
                             const IntegratorConfig& cfg) {
  const double t_final = path.horizon();
  const CMatrix u_phys = propagate(spec, path, Frame::Physical, cfg).mat();
  const CMatrix u_log = propagate(spec, path, Frame::Logical, cfg).mat();
  const CMatrix u_int = propagate(spec, path, Frame::LogicalInteraction, cfg).mat();

  const CMatrix u_c = kron(path.element_at(t_final).mat(),
                           CMatrix(CMatrix::Identity(spec.d_e(), spec.d_e())));
  const CMatrix u_env = kron(CMatrix(CMatrix::Identity(spec.d_s(), spec.d_s())),
                             hermitian_exp(spec.env_hamiltonian().mat(), t_final));

  const double dev_logical = two_norm(CMatrix(u_phys - u_c * u_log));
  const double dev_interaction = two_norm(CMatrix(u_phys - u_c * u_env * u_int));
  return std::max(dev_logical, dev_interaction);
}

DensityOperator evolve_reduced_logical_state(const OpenSystemSpec& spec, const ControlPath& path,
                                             const PureState& initial,
                                             const DensityOperator& env_state,
                                             const IntegratorConfig& cfg) {
  if (initial.dim() != spec.d_s()) {
    throw std::invalid_argument("evolve_reduced_logical_state: initial state has wrong dimension");
  }
  if (env_state.dim() != spec.d_e()) {
    throw std::invalid_argument("evolve_reduced_logical_state: env state has wrong dimension");
  }
  const CMatrix u = propagate(spec, path, Frame::Logical, cfg).mat();
  const CMatrix joint0 = kron(initial.projector(), env_state.mat());
  CMatrix reduced = partial_trace_env(CMatrix(u * joint0 * u.adjoint()), spec.d_s(), spec.d_e());
  reduced = 0.5 * (reduced + reduced.adjoint().eval());
  return DensityOperator::from_matrix(reduced);
}

std::optional<LogicalIntervalTable> LogicalIntervalTable::try_build(const OpenSystemSpec& spec,
                                                                    const DecouplingGroup& group,
                                                                    double delta_t,
                                                                    const IntegratorConfig& cfg) {
  if (!spec.time_independent()) return std::nullopt;
  if (group.dim() != spec.d_s()) {
    throw std::invalid_argument("LogicalIntervalTable: group acts on the wrong dimension");
  }
  if (!(delta_t > 0.0) || cfg.substeps_per_interval < 1) {
    throw std::invalid_argument("LogicalIntervalTable: bad interval configuration");
  }

  const CMatrix eye_e = CMatrix::Identity(spec.d_e(), spec.d_e());
  std::vector<CMatrix> props;
  props.reserve(group.size());
  for (int e = 0; e < group.size(); ++e) {
    const CMatrix& g = group.element(e).mat();
    CMatrix sys = CMatrix::Zero(spec.d_s(), spec.d_s());
    for (const auto& term : spec.system_terms()) {
      CMatrix c = g.adjoint() * term.op.mat() * g;
      sys += term.envelope.value(0.0) * 0.5 * (c + c.adjoint().eval());
    }
    CMatrix h = kron(sys, eye_e) + spec.env_identity_term();
    for (const auto& c : spec.couplings()) {
      CMatrix s = g.adjoint() * c.system_op.mat() * g;
      s = 0.5 * (s + s.adjoint().eval());
      h += c.envelope.value(0.0) * kron(s, c.env_op.mat());
    }

    if (cfg.scheme == IntegrationScheme::ExactPiecewise) {
      props.push_back(hermitian_exp(h, delta_t));
    } else {
      const CMatrix w = hermitian_exp(h, delta_t / cfg.substeps_per_interval);
      CMatrix u = CMatrix::Identity(h.rows(), h.cols());
      for (int s = 0; s < cfg.substeps_per_interval; ++s) u = w * u;
      props.push_back(std::move(u));
    }
  }
  return LogicalIntervalTable(std::move(props));
}

}  // namespace randec
