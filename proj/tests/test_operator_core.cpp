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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "helpers.h"
#include "randec/operator_core.h"

using namespace randec;
using randec::testing::max_abs_diff;
using randec::testing::random_complex_matrix;
using randec::testing::random_density_matrix;
using randec::testing::random_hermitian;
using randec::testing::random_unitary;

TEST_CASE("tagged construction validates structure") {
  CHECK_NOTHROW(Operator::hermitian(pauli_x()));
  CHECK_NOTHROW(Operator::unitary(pauli_y()));

  CMatrix bad = pauli_x();
  bad(0, 1) = Complex(1.0, 1e-6);
  CHECK_THROWS_AS(Operator::hermitian(bad), std::invalid_argument);

  CMatrix stretched = 1.5 * pauli_x();
  CHECK_THROWS_AS(Operator::unitary(stretched), std::invalid_argument);

  // Tiny relative asymmetry stays within the Hermitian gate.
  CMatrix almost = pauli_z();
  almost(0, 1) = Complex(0.0, 1e-14);
  almost(1, 0) = Complex(0.0, -1e-14 * (1.0 + 1e-13));
  CHECK_NOTHROW(Operator::hermitian(almost));
}

TEST_CASE("pure states and density operators validate") {
  CVector plus(2);
  plus << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  CHECK_NOTHROW(PureState{plus});
  CHECK_THROWS_AS(PureState{CVector(CVector::Ones(2))}, std::invalid_argument);

  CHECK_NOTHROW(DensityOperator::from_matrix(0.5 * identity_matrix(2)));
  // Unit trace but indefinite.
  CMatrix indefinite(2, 2);
  indefinite << 1.5, 0.0, 0.0, -0.5;
  CHECK_THROWS_AS(DensityOperator::from_matrix(indefinite), std::invalid_argument);
  // Hermitian, positive, wrong trace.
  CHECK_THROWS_AS(DensityOperator::from_matrix(identity_matrix(2)), std::invalid_argument);
}

TEST_CASE("tensor product fixed examples") {
  const CMatrix ix = kron(identity_matrix(2), pauli_x());
  CMatrix expect_ix = CMatrix::Zero(4, 4);
  expect_ix(0, 1) = 1;
  expect_ix(1, 0) = 1;
  expect_ix(2, 3) = 1;
  expect_ix(3, 2) = 1;
  CHECK(max_abs_diff(ix, expect_ix) == 0.0);

  const CMatrix zi = kron(pauli_z(), identity_matrix(2));
  CVector diag(4);
  diag << 1, 1, -1, -1;
  CHECK(max_abs_diff(zi, CMatrix(diag.asDiagonal())) == 0.0);
}

TEST_CASE("tensor product mixed-product identity") {
  for (std::uint64_t s = 0; s < 20; ++s) {
    const CMatrix a = random_complex_matrix(100 + s, 2, 2);
    const CMatrix b = random_complex_matrix(200 + s, 3, 3);
    const CMatrix c = random_complex_matrix(300 + s, 2, 2);
    const CMatrix d = random_complex_matrix(400 + s, 3, 3);
    const CMatrix lhs = kron(a, b) * kron(c, d);
    const CMatrix rhs = kron(CMatrix(a * c), CMatrix(b * d));
    const double scale = rhs.cwiseAbs().maxCoeff();
    CHECK(max_abs_diff(lhs, rhs) <= 1e-12 * scale);
  }
}

TEST_CASE("tensor product tag propagation") {
  const auto h = tensor_product(Operator::hermitian(pauli_x()), Operator::hermitian(pauli_z()));
  CHECK(h.hermitian_tagged());
  const auto u = tensor_product(Operator::unitary(pauli_x()), Operator::unitary(pauli_y()));
  CHECK(u.unitary_tagged());
}

TEST_CASE("partial trace of product and Bell states") {
  const CMatrix rho = random_density_matrix(7, 2);
  const CMatrix sigma = random_density_matrix(8, 3);
  CHECK(max_abs_diff(partial_trace_env(kron(rho, sigma), 2, 3), rho) <= 1e-14);

  CVector bell(4);
  bell << 1.0 / std::sqrt(2.0), 0.0, 0.0, 1.0 / std::sqrt(2.0);
  const CMatrix bell_rho = bell * bell.adjoint();
  CHECK(max_abs_diff(partial_trace_env(bell_rho, 2, 2), 0.5 * identity_matrix(2)) <= 1e-15);
}

TEST_CASE("partial trace is linear and trace preserving") {
  const CMatrix x = random_complex_matrix(17, 6, 6);
  const CMatrix y = random_complex_matrix(18, 6, 6);
  const Complex alpha(0.3, -1.1);

  const CMatrix lhs = partial_trace_env(CMatrix(alpha * x + y), 2, 3);
  const CMatrix rhs = alpha * partial_trace_env(x, 2, 3) + partial_trace_env(y, 2, 3);
  CHECK(max_abs_diff(lhs, rhs) <= 1e-13);

  CHECK(std::abs(partial_trace_env(x, 2, 3).trace() - x.trace()) <= 1e-13);
  CHECK_THROWS_AS(partial_trace_env(x, 2, 2), std::invalid_argument);
}

TEST_CASE("hermitian propagator fixed examples") {
  const CMatrix h = random_hermitian(5, 4);
  CHECK(max_abs_diff(hermitian_exp(h, 0.0), identity_matrix(4)) <= 1e-15);

  const CMatrix u = hermitian_exp(pauli_z(), std::numbers::pi / 2.0);
  CMatrix expect(2, 2);
  expect << Complex(0, -1), 0, 0, Complex(0, 1);
  CHECK(max_abs_diff(u, expect) <= 1e-15);
}

TEST_CASE("hermitian propagator is unitary and composes in t") {
  for (std::uint64_t s = 0; s < 10; ++s) {
    const CMatrix h = random_hermitian(900 + s, 5);
    const auto u = hermitian_propagator(Operator::hermitian(h), 0.7);
    CHECK(u.unitary_tagged());
    const CMatrix twice = hermitian_exp(h, 0.35) * hermitian_exp(h, 0.35);
    CHECK(max_abs_diff(u.mat(), twice) <= 1e-13);
  }
  CHECK_THROWS_AS(hermitian_propagator(Operator::general(random_complex_matrix(3, 3, 3)), 1.0),
                  std::invalid_argument);
}

TEST_CASE("two norm fixed values and invariances") {
  CHECK(two_norm(pauli_x()) == doctest::Approx(1.0).epsilon(1e-12));
  CMatrix d(2, 2);
  d << 3, 0, 0, -1;
  CHECK(two_norm(d) == doctest::Approx(3.0).epsilon(1e-12));

  for (std::uint64_t s = 0; s < 10; ++s) {
    const CMatrix a = random_complex_matrix(50 + s, 4, 4);
    const CMatrix u = random_unitary(60 + s, 4);
    const CMatrix v = random_unitary(70 + s, 4);
    CHECK(two_norm(CMatrix(u * a * v)) == doctest::Approx(two_norm(a)).epsilon(1e-10));
    const CMatrix b = random_complex_matrix(80 + s, 4, 4);
    CHECK(two_norm(CMatrix(a * b)) <= two_norm(a) * two_norm(b) + 1e-12);
    CHECK(two_norm(CMatrix(a + b)) <= two_norm(a) + two_norm(b) + 1e-12);
  }
}

TEST_CASE("rank-1 trace bound fixed examples") {
  CVector v1(2);
  v1 << 1, 0;
  auto [t1, n1] = rank1_trace_bound_check(v1);
  CHECK(t1 == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(n1 == doctest::Approx(1.0).epsilon(1e-12));

  CVector v2(2);
  v2 << 0, 1;
  auto [t2, n2] = rank1_trace_bound_check(v2);
  CHECK(t2 == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(n2 == doctest::Approx(1.0).epsilon(1e-12));

  CHECK_THROWS_AS(rank1_trace_bound_check(CVector::Zero(3)), std::invalid_argument);
}

// Oracle: |tr A| and ||A||_2 computed from scratch for A = |v><e_1|. The
// trace picks out v_1 and the Gram matrix A^dag A = ||v||^2 |e_1><e_1| has
// top eigenvalue ||v||^2, so the pair must be (|v_1|, ||v||).
TEST_CASE("rank-1 trace bound across random vectors") {
  for (std::uint64_t s = 0; s < 1000; ++s) {
    const int d = 1 + static_cast<int>(CounterRng(s).uniform_index(0, 8));
    CVector v(d);
    CounterRng rng(1000 + s);
    for (int i = 0; i < d; ++i) v(i) = Complex(rng.gaussian(2 * i), rng.gaussian(2 * i + 1));
    if (v.norm() == 0.0) continue;
    const auto [tr, nrm] = rank1_trace_bound_check(v);
    CHECK(tr == doctest::Approx(std::abs(v(0))).epsilon(1e-10));
    CHECK(nrm == doctest::Approx(v.norm()).epsilon(1e-10));
    CHECK(tr <= nrm + 1e-12);
  }
}
