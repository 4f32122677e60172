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
#include "randec/system_model.h"

using namespace randec;
using randec::testing::max_abs_diff;
using randec::testing::random_hermitian;

namespace {

OpenSystemSpec tiny_spec(const Envelope& sys_env, const Envelope& cpl_env) {
  std::vector<SystemTerm> terms;
  terms.push_back({Operator::hermitian(pauli_z()), sys_env});
  CMatrix b(2, 2);
  b << 0.3, Complex(0.1, -0.2), Complex(0.1, 0.2), -0.1;
  std::vector<Coupling> cpls;
  cpls.push_back({Operator::hermitian(pauli_x()), cpl_env, Operator::hermitian(b)});
  CMatrix he(2, 2);
  he << 0.7, 0, 0, -0.7;
  return OpenSystemSpec(2, 2, std::move(terms), Operator::hermitian(he), std::move(cpls));
}

}  // namespace

TEST_CASE("envelope evaluation") {
  CHECK(Envelope::constant(2.5).value(17.0) == 2.5);

  const auto sin_env = Envelope::sinusoid(2.0, 3.0);
  CHECK(sin_env.value(std::numbers::pi / 6.0) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(sin_env.value(0.0) == 0.0);

  const auto lin = Envelope::piecewise_linear({{0.0, 0.0}, {1.0, 2.0}});
  CHECK(lin.value(0.5) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(lin.value(0.0) == 0.0);
  CHECK(lin.value(1.0) == 2.0);
  CHECK_THROWS_AS(lin.value(1.5), std::invalid_argument);
  CHECK_THROWS_AS(Envelope::piecewise_linear({{0.0, 0.0}}), std::invalid_argument);
  CHECK_THROWS_AS(Envelope::piecewise_linear({{0.0, 0.0}, {0.0, 1.0}}), std::invalid_argument);
}

TEST_CASE("spec validation and trace stripping") {
  // Non-traceless coupling is rejected outright.
  std::vector<Coupling> bad;
  bad.push_back({Operator::hermitian(identity_matrix(2)), Envelope::constant(1.0),
                 Operator::hermitian(pauli_z())});
  CHECK_THROWS_AS(OpenSystemSpec(2, 2, {}, Operator::hermitian(pauli_z()), std::move(bad)),
                  std::invalid_argument);

  // System terms lose their trace part: z + 2I becomes z.
  std::vector<SystemTerm> terms;
  terms.push_back({Operator::hermitian(CMatrix(pauli_z() + 2.0 * identity_matrix(2))),
                   Envelope::constant(1.0)});
  OpenSystemSpec spec(2, 2, std::move(terms), Operator::hermitian(CMatrix(CMatrix::Zero(2, 2))), {});
  CHECK(std::abs(spec.system_terms()[0].op.mat().trace()) <= 1e-12);
  CHECK(max_abs_diff(spec.system_terms()[0].op.mat(), pauli_z()) <= 1e-12);

  // Dimension mismatches are rejected.
  CHECK_THROWS_AS(OpenSystemSpec(2, 3, {}, Operator::hermitian(pauli_z()), {}),
                  std::invalid_argument);
}

TEST_CASE("drift and interaction evaluation") {
  auto spec = tiny_spec(Envelope::constant(1.0), Envelope::constant(0.5));

  const auto h = drift_at(spec, 0.0);
  CHECK(h.hermitian_tagged());
  CHECK(h.dim() == 4);

  // drift - interaction is the lifted env term, bitwise by construction.
  const CMatrix d = spec.drift_matrix_at(0.3);
  const CMatrix v = spec.interaction_matrix_at(0.3);
  CHECK((d - v - spec.env_identity_term()).cwiseAbs().maxCoeff() == 0.0);

  // Interaction carries no env-only part: with zero couplings and zero H_S it vanishes.
  OpenSystemSpec env_only(2, 2, {}, Operator::hermitian(CMatrix(0.7 * pauli_z())), {});
  CHECK(interaction_at(env_only, 1.0).mat().isZero(0.0));
  CHECK(max_abs_diff(drift_at(env_only, 1.0).mat(), kron(identity_matrix(2), CMatrix(0.7 * pauli_z()))) == 0.0);

  // Time dependence flows through the envelopes.
  auto sin_spec = tiny_spec(Envelope::sinusoid(1.0, 2.0), Envelope::constant(0.0));
  const double t = 0.4;
  CHECK(max_abs_diff(sin_spec.interaction_matrix_at(t),
                     std::sin(2.0 * t) * kron(pauli_z(), identity_matrix(2))) <= 1e-14);
  CHECK(sin_spec.time_independent() == false);
  CHECK(tiny_spec(Envelope::constant(1.0), Envelope::constant(1.0)).time_independent());
}

TEST_CASE("estimate_k constant envelopes are exact") {
  auto spec = tiny_spec(Envelope::constant(1.0), Envelope::constant(0.5));
  const auto sb = estimate_k(spec, 2.0, 16);
  CHECK(sb.k == doctest::Approx(two_norm(spec.interaction_matrix_at(0.0))).epsilon(1e-12));
  CHECK(sb.grid_points == 16);
  CHECK(sb.horizon == 2.0);
  CHECK_THROWS_AS(estimate_k(spec, 2.0, 1), std::invalid_argument);
  CHECK_THROWS_AS(estimate_k(spec, 0.0, 16), std::invalid_argument);
}

// Oracle: dense reference scan with 40961 samples, no safety factor. The
// library estimate with the 1.05 time-dependent margin must dominate it and
// must stay within 5% + margin of it.
TEST_CASE("estimate_k sinusoid versus dense grid oracle") {
  auto spec = tiny_spec(Envelope::sinusoid(0.8, 2.7), Envelope::sinusoid(0.4, 1.3));
  const double horizon = 3.0;

  double dense_peak = 0.0;
  const int n_dense = 40961;
  for (int i = 0; i < n_dense; ++i) {
    const double t = horizon * static_cast<double>(i) / (n_dense - 1);
    dense_peak = std::max(dense_peak, two_norm(spec.interaction_matrix_at(t)));
  }

  const auto sb = estimate_k(spec, horizon, 512);
  CHECK(sb.k >= dense_peak * (1.0 - 5e-3));  // 1.05 margin swamps grid slack
  CHECK(sb.k <= dense_peak * 1.05 * (1.0 + 1e-10));

  // Monotone under grid refinement up to the safety factor (peak can only grow).
  const auto coarse = estimate_k(spec, horizon, 64);
  CHECK(sb.k >= coarse.k * (1.0 - 1e-9));
}

TEST_CASE("spin bath builder determinism and structure") {
  const std::vector<double> norms = {0.5, 0.25, 0.75};
  const std::vector<double> freqs = {1.0, 0.6};
  auto a = build_spin_bath(1234, 2, norms, freqs, 1.0);
  auto b = build_spin_bath(1234, 2, norms, freqs, 1.0);

  CHECK(a.d_s() == 2);
  CHECK(a.d_e() == 4);
  CHECK(a.couplings().size() == 3);

  // Bitwise reproducible.
  for (std::size_t i = 0; i < a.couplings().size(); ++i) {
    CHECK(max_abs_diff(a.couplings()[i].env_op.mat(), b.couplings()[i].env_op.mat()) == 0.0);
  }

  // Norms match the request.
  for (std::size_t i = 0; i < norms.size(); ++i) {
    CHECK(two_norm(a.couplings()[i].env_op.mat()) == doctest::Approx(norms[i]).epsilon(1e-10));
  }

  // H_E = sum freq_j sigma_z^(j): diagonal with the expected spectrum.
  CMatrix expect = kron(CMatrix(freqs[0] * pauli_z()), identity_matrix(2)) +
                   kron(identity_matrix(2), CMatrix(freqs[1] * pauli_z()));
  CHECK(max_abs_diff(a.env_hamiltonian().mat(), expect) == 0.0);

  // Different seeds give different baths.
  auto c = build_spin_bath(99, 2, norms, freqs, 1.0);
  CHECK(max_abs_diff(a.couplings()[0].env_op.mat(), c.couplings()[0].env_op.mat()) > 1e-3);
}

TEST_CASE("spin bath zero couplings reduce to the bare system") {
  auto spec = build_spin_bath(7, 1, {0.0, 0.0, 0.0}, {0.9}, 1.0);
  CHECK(spec.couplings().empty());
  CHECK(max_abs_diff(spec.interaction_matrix_at(0.0), kron(pauli_z(), identity_matrix(2))) == 0.0);

  CHECK_THROWS_AS(build_spin_bath(7, 0, {0, 0, 0}, {}, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(build_spin_bath(7, 6, {0, 0, 0}, {1, 1, 1, 1, 1, 1}, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(build_spin_bath(7, 1, {0, 0}, {0.9}, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(build_spin_bath(7, 1, {0, 0, -1.0}, {0.9}, 1.0), std::invalid_argument);
}
