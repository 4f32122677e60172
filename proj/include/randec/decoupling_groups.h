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

#ifndef RANDEC_DECOUPLING_GROUPS_H
#define RANDEC_DECOUPLING_GROUPS_H

#include <vector>

#include "randec/operator_core.h"

namespace randec {

// Residual tolerance for projective closure: for every pair (i, j) some k
// must satisfy | |tr(g_k^dag g_i g_j)| - d | <= this.
inline constexpr double kClosureTol = 1e-8;
// Twirls of matrix units must land on (tr/d) I within this for a group to
// count as irreducible.
inline constexpr double kIrreducibilityTol = 1e-9;

// Finite list of unitaries with the identity first. Construction checks the
// identity slot and unitary tags; projective closure is checked separately
// by verify_group so that candidate (possibly non-closed) element sets can
// still be inspected.
class DecouplingGroup {
 public:
  static DecouplingGroup from_elements(std::vector<Operator> elements);

  int size() const { return static_cast<int>(elements_.size()); }
  int dim() const { return elements_.front().dim(); }
  const Operator& element(int i) const { return elements_.at(i); }
  const std::vector<Operator>& elements() const { return elements_; }

 private:
  explicit DecouplingGroup(std::vector<Operator> elements) : elements_(std::move(elements)) {}

  std::vector<Operator> elements_;
};

// n-qubit Pauli group modulo phase: all tensor words over {I, X, Y, Z},
// identity first, lexicographic in (I, X, Y, Z) with the first qubit as the
// most significant digit. n in [1, 3].
DecouplingGroup pauli_group(int n_qubits);

struct GroupReport {
  bool closed;
  // max over pairs of min over candidates of | |tr| - d |.
  double worst_residual;
};

// Exhaustive projective-closure check over all element pairs.
GroupReport verify_group(const DecouplingGroup& g);

// Group average (1/|G|) sum_l g_l^dag X g_l.
CMatrix twirl(const DecouplingGroup& g, const CMatrix& x);
Operator twirl(const DecouplingGroup& g, const Operator& x);

// True iff the twirl of every matrix unit collapses to (tr/d) I, i.e. the
// group acts irreducibly and the twirl is the trace map. Requires a closed
// group; throws std::invalid_argument otherwise.
bool is_irreducible(const DecouplingGroup& g);

}  // namespace randec

#endif  // RANDEC_DECOUPLING_GROUPS_H
