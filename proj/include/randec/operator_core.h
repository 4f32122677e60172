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

#ifndef RANDEC_OPERATOR_CORE_H
#define RANDEC_OPERATOR_CORE_H

#include <complex>
#include <utility>

#include <Eigen/Dense>

namespace randec {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;

// Construction-time validation tolerances.
inline constexpr double kHermitianTol = 1e-12;   // relative to largest |entry|
inline constexpr double kUnitaryTol = 1e-10;     // on ||U^dag U - I||_2
inline constexpr double kTraceOneTol = 1e-10;    // density operator trace
inline constexpr double kPositivityTol = 1e-10;  // density eigenvalue slack
inline constexpr double kStateNormTol = 1e-12;   // pure state normalization

enum class OperatorTag { General, Hermitian, Unitary };

// Immutable dense complex square matrix with a role tag. Tagged constructors
// validate the claimed structure and throw std::invalid_argument on failure.
class Operator {
 public:
  static Operator general(CMatrix m);
  static Operator hermitian(CMatrix m);
  static Operator unitary(CMatrix m);

  const CMatrix& mat() const { return mat_; }
  OperatorTag tag() const { return tag_; }
  int dim() const { return static_cast<int>(mat_.rows()); }

  bool hermitian_tagged() const { return tag_ == OperatorTag::Hermitian; }
  bool unitary_tagged() const { return tag_ == OperatorTag::Unitary; }

 private:
  Operator(CMatrix m, OperatorTag tag) : mat_(std::move(m)), tag_(tag) {}

  CMatrix mat_;
  OperatorTag tag_;
};

// Normalized state vector; sum_i |a_i|^2 = 1 within kStateNormTol.
class PureState {
 public:
  explicit PureState(CVector amplitudes);

  // Convenience for callers that hold an unnormalized direction.
  static PureState normalized(const CVector& v);

  const CVector& amplitudes() const { return amp_; }
  int dim() const { return static_cast<int>(amp_.size()); }
  CMatrix projector() const { return amp_ * amp_.adjoint(); }

 private:
  CVector amp_;
};

// Hermitian, unit-trace, positive semidefinite (within kPositivityTol).
class DensityOperator {
 public:
  explicit DensityOperator(Operator hermitian_op);
  static DensityOperator from_matrix(const CMatrix& m);

  const CMatrix& mat() const { return op_.mat(); }
  const Operator& op() const { return op_; }
  int dim() const { return op_.dim(); }

 private:
  Operator op_;
};

// Frequently used constants.
CMatrix identity_matrix(int d);
CMatrix pauli_x();
CMatrix pauli_y();
CMatrix pauli_z();

// Kronecker product with the fixed index convention: left (system) factor is
// the slow index, right (environment) factor the fast one.
CMatrix kron(const CMatrix& a, const CMatrix& b);
Operator tensor_product(const Operator& a, const Operator& b);

// Trace over the fast (environment) factor of a (d_S*d_E)-dim operator.
CMatrix partial_trace_env(const CMatrix& joint, int d_s, int d_e);
DensityOperator partial_trace_env(const DensityOperator& joint, int d_s, int d_e);

// exp(-i h t) for Hermitian h, through the eigendecomposition of h.
CMatrix hermitian_exp(const CMatrix& h, double t);
Operator hermitian_propagator(const Operator& h, double t);

// Operator 2-norm: largest singular value, computed as
// sqrt(max eig(A^dag A)).
double two_norm(const CMatrix& a);

// For nonzero v, forms the rank-1 operator A = |v><e_1| used in the trace
// bound |tr A| <= ||A||_2 and returns {|tr A|, ||A||_2} = {|v_1|, ||v||}.
std::pair<double, double> rank1_trace_bound_check(const CVector& v);

}  // namespace randec

#endif  // RANDEC_OPERATOR_CORE_H
