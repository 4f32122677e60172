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

#ifndef RANDEC_CONTROL_PROTOCOLS_H
#define RANDEC_CONTROL_PROTOCOLS_H

#include <cstdint>
#include <vector>

#include "randec/decoupling_groups.h"
#include "randec/system_model.h"

namespace randec {

enum class ProtocolKind { Free, Cyclic, Random };

// Bang-bang schedule description. The horizon is normalized at construction
// to an integer number of intervals: M = round(horizon / delta_t),
// horizon = M * delta_t.
class ProtocolSpec {
 public:
  ProtocolSpec(ProtocolKind kind, DecouplingGroup group, double delta_t, double horizon,
               std::uint64_t seed = 0, std::vector<int> cyclic_order = {});

  ProtocolKind kind() const { return kind_; }
  const DecouplingGroup& group() const { return group_; }
  double delta_t() const { return delta_t_; }
  double horizon() const { return horizon_; }
  int num_intervals() const { return num_intervals_; }
  std::uint64_t seed() const { return seed_; }
  const std::vector<int>& cyclic_order() const { return cyclic_order_; }

 private:
  ProtocolKind kind_;
  DecouplingGroup group_;
  double delta_t_;
  double horizon_;
  int num_intervals_;
  std::uint64_t seed_;
  std::vector<int> cyclic_order_;
};

// Concrete piecewise-constant control trajectory: element index per interval.
// U_c(t) is right continuous; at t = horizon it returns the last interval's
// element.
class ControlPath {
 public:
  ControlPath(DecouplingGroup group, double delta_t, std::vector<int> element_indices);

  const DecouplingGroup& group() const { return group_; }
  double delta_t() const { return delta_t_; }
  double horizon() const { return delta_t_ * static_cast<double>(indices_.size()); }
  int num_intervals() const { return static_cast<int>(indices_.size()); }
  int element_index(int interval) const { return indices_.at(interval); }
  const std::vector<int>& element_indices() const { return indices_; }
  std::vector<double> jump_times() const;

  // Interval containing time t in [0, horizon]; throws outside.
  int interval_at(double t) const;
  const Operator& element_at(double t) const;

 private:
  DecouplingGroup group_;
  double delta_t_;
  std::vector<int> indices_;
};

// Path realization. Free: identity everywhere. Cyclic: repeats the traversal
// order (default: stored element order); M must be a multiple of |G|.
// Random: i.i.d. uniform draws; draw j comes from the counter stream
// (spec.seed, j), and ensemble code passes spec.seed = derived(master, r).
ControlPath make_path(const ProtocolSpec& spec);

Operator control_unitary_at(const ControlPath& path, double t);

// Toggled-frame Hamiltonians. "logical": conjugate the system-side factors of
// H_S and J_a by U_c(t), keep I (x) H_E. "logical interaction": additionally
// conjugate the bath factors B_a by U_E(t) = exp(-i H_E t) and drop I (x) H_E.
Operator logical_hamiltonian_at(const OpenSystemSpec& spec, const ControlPath& path, double t);
Operator logical_interaction_hamiltonian_at(const OpenSystemSpec& spec, const ControlPath& path,
                                            double t);

// Zeroth-order cycle average of the logical Hamiltonian over the path:
// sum over intervals of conjugated terms, weighted delta_t / horizon.
// Requires a time-independent spec (throws UnsupportedConfiguration).
Operator leading_average_hamiltonian(const OpenSystemSpec& spec, const ControlPath& path);

}  // namespace randec

#endif  // RANDEC_CONTROL_PROTOCOLS_H
