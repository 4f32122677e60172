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

#ifndef RANDEC_PROPAGATION_ENGINE_H
#define RANDEC_PROPAGATION_ENGINE_H

#include <optional>
#include <vector>

#include "randec/control_protocols.h"

namespace randec {

enum class Frame { Physical, Logical, LogicalInteraction };

enum class IntegrationScheme {
  // One exponential per substep with H frozen at the substep start. Exact
  // when the frame Hamiltonian is constant on each substep (time-independent
  // spec in the physical or logical frame).
  ExactPiecewise,
  // Exponential midpoint rule, second order for smooth time dependence.
  Midpoint,
};

struct IntegratorConfig {
  int substeps_per_interval = 16;
  IntegrationScheme scheme = IntegrationScheme::Midpoint;
};

// Time-ordered propagator of the chosen frame over [t_begin, t_end].
// The physical frame applies the bang-bang kick (g_j g_{j-1}^dag) (x) I_E at
// every interval boundary it crosses (with g_{-1} = I at t = 0), so that
// U_physical(T) = (U_c(T) (x) I_E) U_logical(T) up to integrator error.
Operator propagate(const OpenSystemSpec& spec, const ControlPath& path, Frame frame,
                   const IntegratorConfig& cfg);
Operator propagate_range(const OpenSystemSpec& spec, const ControlPath& path, Frame frame,
                         const IntegratorConfig& cfg, double t_begin, double t_end);

// Max deviation over the two frame identities at t = horizon:
// || U - (U_c (x) I) U_logical || and || U - (U_c (x) I)(I (x) U_E) U_interaction ||.
double verify_frame_relation(const OpenSystemSpec& spec, const ControlPath& path,
                             const IntegratorConfig& cfg);

// tr_E[ U_logical (|psi><psi| (x) rho_E) U_logical^dag ] at the path horizon.
DensityOperator evolve_reduced_logical_state(const OpenSystemSpec& spec, const ControlPath& path,
                                             const PureState& initial,
                                             const DensityOperator& env_state,
                                             const IntegratorConfig& cfg);

// Precomputed per-element logical-frame interval propagators. Valid only for
// time-independent specs, where the logical Hamiltonian on an interval
// depends on the control element alone; realizations then reduce to matrix
// products from this table. Built once, read from many threads.
class LogicalIntervalTable {
 public:
  static std::optional<LogicalIntervalTable> try_build(const OpenSystemSpec& spec,
                                                       const DecouplingGroup& group,
                                                       double delta_t,
                                                       const IntegratorConfig& cfg);

  const CMatrix& propagator(int element_index) const { return props_.at(element_index); }
  int joint_dim() const { return static_cast<int>(props_.front().rows()); }
  int group_size() const { return static_cast<int>(props_.size()); }

 private:
  explicit LogicalIntervalTable(std::vector<CMatrix> props) : props_(std::move(props)) {}

  std::vector<CMatrix> props_;
};

}  // namespace randec

#endif  // RANDEC_PROPAGATION_ENGINE_H
