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

#include "randec/operator_core.h"

#include <cmath>
#include <stdexcept>
#include <string>

namespace randec {

namespace {

void require_square(const CMatrix& m, const char* who) {
  if (m.rows() == 0 || m.rows() != m.cols()) {
    throw std::invalid_argument(std::string(who) + ": matrix must be square and nonempty");
  }
}

double hermiticity_deviation(const CMatrix& m) {
  return (m - m.adjoint().eval()).cwiseAbs().maxCoeff();
}

}  // namespace

Operator Operator::general(CMatrix m) {
  require_square(m, "Operator::general");
  return Operator(std::move(m), OperatorTag::General);
}

Operator Operator::hermitian(CMatrix m) {
  require_square(m, "Operator::hermitian");
  const double scale = m.cwiseAbs().maxCoeff();
  if (hermiticity_deviation(m) > kHermitianTol * scale) {
    throw std::invalid_argument("Operator::hermitian: matrix is not Hermitian within tolerance");
  }
  return Operator(std::move(m), OperatorTag::Hermitian);
}

Operator Operator::unitary(CMatrix m) {
  require_square(m, "Operator::unitary");
  const CMatrix gram = m.adjoint() * m;
  const CMatrix defect = gram - CMatrix::Identity(m.rows(), m.cols());
  if (two_norm(defect) > kUnitaryTol) {
    throw std::invalid_argument("Operator::unitary: matrix is not unitary within tolerance");
  }
  return Operator(std::move(m), OperatorTag::Unitary);
}

PureState::PureState(CVector amplitudes) : amp_(std::move(amplitudes)) {
  if (amp_.size() == 0) throw std::invalid_argument("PureState: empty amplitude vector");
  if (std::abs(amp_.squaredNorm() - 1.0) > kStateNormTol) {
    throw std::invalid_argument("PureState: amplitudes are not normalized");
  }
}

PureState PureState::normalized(const CVector& v) {
  const double n = v.norm();
  if (n == 0.0) throw std::invalid_argument("PureState::normalized: zero vector");
  return PureState(v / n);
}

DensityOperator::DensityOperator(Operator hermitian_op) : op_(std::move(hermitian_op)) {
  if (!op_.hermitian_tagged()) {
    throw std::invalid_argument("DensityOperator: operator must carry the Hermitian tag");
  }
  const Complex tr = op_.mat().trace();
  if (std::abs(tr - Complex(1.0, 0.0)) > kTraceOneTol) {
    throw std::invalid_argument("DensityOperator: trace differs from one");
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> es(op_.mat(), Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -kPositivityTol) {
    throw std::invalid_argument("DensityOperator: negative eigenvalue beyond tolerance");
  }
}

DensityOperator DensityOperator::from_matrix(const CMatrix& m) {
  return DensityOperator(Operator::hermitian(m));
}

CMatrix identity_matrix(int d) {
  if (d < 1) throw std::invalid_argument("identity_matrix: dimension must be positive");
  return CMatrix::Identity(d, d);
}

CMatrix pauli_x() {
  CMatrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

CMatrix pauli_y() {
  CMatrix m(2, 2);
  m << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0);
  return m;
}

CMatrix pauli_z() {
  CMatrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  const auto ar = a.rows(), ac = a.cols(), br = b.rows(), bc = b.cols();
  CMatrix out(ar * br, ac * bc);
  for (Eigen::Index i = 0; i < ar; ++i) {
    for (Eigen::Index j = 0; j < ac; ++j) {
      out.block(i * br, j * bc, br, bc) = a(i, j) * b;
    }
  }
  return out;
}

Operator tensor_product(const Operator& a, const Operator& b) {
  CMatrix m = kron(a.mat(), b.mat());
  if (a.tag() == OperatorTag::Hermitian && b.tag() == OperatorTag::Hermitian) {
    return Operator::hermitian(std::move(m));
  }
  if (a.tag() == OperatorTag::Unitary && b.tag() == OperatorTag::Unitary) {
    return Operator::unitary(std::move(m));
  }
  return Operator::general(std::move(m));
}

CMatrix partial_trace_env(const CMatrix& joint, int d_s, int d_e) {
  if (d_s < 1 || d_e < 1 || joint.rows() != Eigen::Index(d_s) * d_e || joint.rows() != joint.cols()) {
    throw std::invalid_argument("partial_trace_env: dimension mismatch");
  }
  CMatrix out = CMatrix::Zero(d_s, d_s);
  for (int i = 0; i < d_s; ++i) {
    for (int j = 0; j < d_s; ++j) {
      Complex acc(0.0, 0.0);
      for (int e = 0; e < d_e; ++e) {
        acc += joint(Eigen::Index(i) * d_e + e, Eigen::Index(j) * d_e + e);
      }
      out(i, j) = acc;
    }
  }
  return out;
}

DensityOperator partial_trace_env(const DensityOperator& joint, int d_s, int d_e) {
  CMatrix reduced = partial_trace_env(joint.mat(), d_s, d_e);
  // The reduction of a Hermitian matrix is Hermitian; symmetrize away the
  // last bits of floating-point asymmetry before revalidating.
  reduced = 0.5 * (reduced + reduced.adjoint().eval());
  return DensityOperator::from_matrix(reduced);
}

CMatrix hermitian_exp(const CMatrix& h, double t) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
  if (es.info() != Eigen::Success) {
    throw std::runtime_error("hermitian_exp: eigendecomposition failed");
  }
  const auto& lam = es.eigenvalues();
  CVector phases(lam.size());
  for (Eigen::Index i = 0; i < lam.size(); ++i) {
    phases(i) = std::exp(Complex(0.0, -lam(i) * t));
  }
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

Operator hermitian_propagator(const Operator& h, double t) {
  if (!h.hermitian_tagged()) {
    throw std::invalid_argument("hermitian_propagator: generator must carry the Hermitian tag");
  }
  return Operator::unitary(hermitian_exp(h.mat(), t));
}

double two_norm(const CMatrix& a) {
  if (a.size() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<CMatrix> es(a.adjoint() * a, Eigen::EigenvaluesOnly);
  const double top = es.eigenvalues().maxCoeff();
  return top > 0.0 ? std::sqrt(top) : 0.0;
}

std::pair<double, double> rank1_trace_bound_check(const CVector& v) {
  if (v.size() == 0 || v.norm() == 0.0) {
    throw std::invalid_argument("rank1_trace_bound_check: vector must be nonzero");
  }
  CVector e1 = CVector::Zero(v.size());
  e1(0) = Complex(1.0, 0.0);
  const CMatrix a = v * e1.adjoint();
  return {std::abs(a.trace()), two_norm(a)};
}

}  // namespace randec
