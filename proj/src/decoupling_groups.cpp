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

#include "randec/decoupling_groups.h"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace randec {

DecouplingGroup DecouplingGroup::from_elements(std::vector<Operator> elements) {
  if (elements.empty()) {
    throw std::invalid_argument("DecouplingGroup: need at least one element");
  }
  const int d = elements.front().dim();
  for (const auto& e : elements) {
    if (!e.unitary_tagged()) {
      throw std::invalid_argument("DecouplingGroup: elements must carry the Unitary tag");
    }
    if (e.dim() != d) {
      throw std::invalid_argument("DecouplingGroup: elements must share one dimension");
    }
  }
  if ((elements.front().mat() - CMatrix::Identity(d, d)).cwiseAbs().maxCoeff() > 1e-12) {
    throw std::invalid_argument("DecouplingGroup: first element must be the identity");
  }
  return DecouplingGroup(std::move(elements));
}

DecouplingGroup pauli_group(int n_qubits) {
  if (n_qubits < 1 || n_qubits > 3) {
    throw std::invalid_argument("pauli_group: qubit count out of range");
  }
  const CMatrix letters[4] = {identity_matrix(2), pauli_x(), pauli_y(), pauli_z()};
  const int count = 1 << (2 * n_qubits);  // 4^n words
  std::vector<Operator> elems;
  elems.reserve(count);
  for (int word = 0; word < count; ++word) {
    CMatrix m = CMatrix::Identity(1, 1);
    // First qubit is the most significant base-4 digit.
    for (int q = n_qubits - 1; q >= 0; --q) {
      const int digit = (word >> (2 * q)) & 3;
      m = kron(m, letters[digit]);
    }
    elems.push_back(Operator::unitary(std::move(m)));
  }
  return DecouplingGroup::from_elements(std::move(elems));
}

GroupReport verify_group(const DecouplingGroup& g) {
  const int n = g.size();
  const int d = g.dim();
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const CMatrix prod = g.element(i).mat() * g.element(j).mat();
      double best = std::numeric_limits<double>::infinity();
      for (int k = 0; k < n; ++k) {
        const Complex tr = (g.element(k).mat().adjoint() * prod).trace();
        best = std::min(best, std::abs(std::abs(tr) - static_cast<double>(d)));
        if (best == 0.0) break;
      }
      worst = std::max(worst, best);
    }
  }
  return {worst <= kClosureTol, worst};
}

CMatrix twirl(const DecouplingGroup& g, const CMatrix& x) {
  if (x.rows() != g.dim() || x.cols() != g.dim()) {
    throw std::invalid_argument("twirl: operator dimension does not match the group");
  }
  CMatrix acc = CMatrix::Zero(g.dim(), g.dim());
  for (const auto& e : g.elements()) {
    acc += e.mat().adjoint() * x * e.mat();
  }
  return acc / static_cast<double>(g.size());
}

Operator twirl(const DecouplingGroup& g, const Operator& x) {
  CMatrix t = twirl(g, x.mat());
  if (x.hermitian_tagged()) {
    t = 0.5 * (t + t.adjoint().eval());
    return Operator::hermitian(std::move(t));
  }
  return Operator::general(std::move(t));
}

bool is_irreducible(const DecouplingGroup& g) {
  if (!verify_group(g).closed) {
    throw std::invalid_argument("is_irreducible: group is not closed");
  }
  const int d = g.dim();
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      CMatrix unit = CMatrix::Zero(d, d);
      unit(i, j) = Complex(1.0, 0.0);
      const CMatrix t = twirl(g, unit);
      const CMatrix expect = (i == j ? 1.0 / d : 0.0) * CMatrix::Identity(d, d);
      if (two_norm(CMatrix(t - expect)) > kIrreducibilityTol) return false;
    }
  }
  return true;
}

}  // namespace randec
