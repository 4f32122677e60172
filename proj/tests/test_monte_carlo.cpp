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

#include "helpers.h"
#include "randec/monte_carlo.h"
#include "randec/rng.h"

using namespace randec;
using randec::testing::max_abs_diff;

namespace {

OpenSystemSpec dephasing_spec() {
  return build_spin_bath(777, 2, {0.0, 0.0, 0.5}, {0.9, 0.55}, 0.5);
}

OpenSystemSpec full_spec() {
  return build_spin_bath(1234, 2, {0.5, 0.5, 0.5}, {0.9, 0.55}, 1.0);
}

ProtocolSpec random_proto(int m, double dt, std::uint64_t seed = 0) {
  return ProtocolSpec(ProtocolKind::Random, pauli_group(1), dt, dt * m, seed);
}

PureState plus_state() {
  CVector v(2);
  v << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  return PureState(v);
}

DensityOperator ground_env(int d_e) {
  CMatrix rho = CMatrix::Zero(d_e, d_e);
  rho(0, 0) = 1.0;
  return DensityOperator::from_matrix(rho);
}

DensityOperator mixed_env(int d_e) {
  return DensityOperator::from_matrix(CMatrix(identity_matrix(d_e) / double(d_e)));
}

bool bitwise_equal(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) {
      if (std::memcmp(&a(i, j), &b(i, j), sizeof(Complex)) != 0) return false;
    }
  }
  return true;
}

bool bitwise_equal_real(const RMatrix& a, const RMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) {
      if (std::memcmp(&a(i, j), &b(i, j), sizeof(double)) != 0) return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("zero interaction preserves the initial state with zero spread") {
  OpenSystemSpec spec(2, 2, {}, Operator::hermitian(CMatrix(0.7 * pauli_z())), {});
  const auto initial = plus_state();
  const auto res = run_ensemble(spec, random_proto(6, 0.1), initial, mixed_env(2), 64, 9001);

  CHECK(max_abs_diff(res.mean_state.mat(), initial.projector()) <= 1e-10);
  CHECK(res.stderr_matrix.maxCoeff() <= 1e-13);
  CHECK(res.initial_error_mean <= 1e-10);
  CHECK(res.initial_error_stderr <= 1e-13);
}

TEST_CASE("deterministic protocols short-circuit to a single realization") {
  const auto spec = full_spec();
  ProtocolSpec cyclic(ProtocolKind::Cyclic, pauli_group(1), 0.05, 0.4);
  const auto initial = plus_state();

  const auto res = run_ensemble(spec, cyclic, initial, ground_env(4), 7, 5);
  CHECK(res.n_realizations == 7);
  CHECK(res.stderr_matrix.isZero(0.0));
  CHECK(res.initial_error_stderr == 0.0);

  const auto direct = evolve_reduced_logical_state(spec, make_path(cyclic), initial,
                                                   ground_env(4), IntegratorConfig{});
  CHECK(bitwise_equal(res.mean_state.mat(), direct.mat()));
}

TEST_CASE("ensemble mean equals the hand-rolled average over derived seeds") {
  const auto spec = full_spec();
  const auto proto = random_proto(5, 0.07);
  const auto initial = plus_state();
  const auto env = mixed_env(4);
  const std::uint64_t master = 4242;
  const int n = 3;

  CMatrix manual = CMatrix::Zero(2, 2);
  for (int r = 0; r < n; ++r) {
    ProtocolSpec realization(ProtocolKind::Random, proto.group(), proto.delta_t(),
                             proto.horizon(), derive_stream(master, r));
    manual += evolve_reduced_logical_state(spec, make_path(realization), initial, env,
                                           IntegratorConfig{})
                  .mat();
  }
  manual /= double(n);

  const auto res = run_ensemble(spec, proto, initial, env, n, master);
  CHECK(max_abs_diff(res.mean_state.mat(), manual) <= 1e-11);
  CHECK(res.master_seed == master);
}

TEST_CASE("results are reproducible and seed-sensitive") {
  const auto spec = dephasing_spec();
  const auto proto = random_proto(6, 0.05);
  const auto initial = plus_state();

  const auto a = run_ensemble(spec, proto, initial, ground_env(4), 200, 11);
  const auto b = run_ensemble(spec, proto, initial, ground_env(4), 200, 11);
  CHECK(bitwise_equal(a.mean_state.mat(), b.mean_state.mat()));
  CHECK(bitwise_equal_real(a.stderr_matrix, b.stderr_matrix));
  CHECK(a.initial_error_mean == b.initial_error_mean);
  CHECK(a.initial_error_stderr == b.initial_error_stderr);

  const auto c = run_ensemble(spec, proto, initial, ground_env(4), 200, 12);
  CHECK(max_abs_diff(a.mean_state.mat(), c.mean_state.mat()) > 1e-12);
}

TEST_CASE("thread count never changes a bit") {
  const auto spec = dephasing_spec();
  const auto proto = random_proto(6, 0.05);
  const auto initial = plus_state();
  const IntegratorConfig cfg{};

  const auto t1 = run_ensemble(spec, proto, initial, ground_env(4), 333, 77, cfg, 1);
  for (int threads : {3, 8}) {
    const auto tn = run_ensemble(spec, proto, initial, ground_env(4), 333, 77, cfg, threads);
    CHECK(bitwise_equal(t1.mean_state.mat(), tn.mean_state.mat()));
    CHECK(bitwise_equal_real(t1.stderr_matrix, tn.stderr_matrix));
    CHECK(t1.initial_error_mean == tn.initial_error_mean);
    CHECK(t1.initial_error_stderr == tn.initial_error_stderr);
  }
}

TEST_CASE("standard errors shrink like one over sqrt n") {
  const auto spec = full_spec();
  const auto proto = random_proto(8, 0.05);
  const auto initial = plus_state();

  const auto small = run_ensemble(spec, proto, initial, ground_env(4), 400, 3);
  const auto large = run_ensemble(spec, proto, initial, ground_env(4), 1600, 3);
  const double ratio = small.stderr_matrix.maxCoeff() / large.stderr_matrix.maxCoeff();
  CHECK(ratio >= 1.6);
  CHECK(ratio <= 2.6);
}

TEST_CASE("single interval enumeration is the twirled evolution") {
  const auto spec = full_spec();
  const auto proto = random_proto(1, 0.08);
  const auto initial = plus_state();
  const auto env = ground_env(4);

  CMatrix manual = CMatrix::Zero(2, 2);
  const auto& group = proto.group();
  for (int e = 0; e < group.size(); ++e) {
    ControlPath path(group, 0.08, {e});
    manual += evolve_reduced_logical_state(spec, path, initial, env, IntegratorConfig{}).mat();
  }
  manual /= double(group.size());

  const auto exact = enumerate_paths(spec, proto, initial, env);
  CHECK(max_abs_diff(exact.mat(), manual) <= 1e-12);
}

TEST_CASE("two interval enumeration averages all sixteen paths") {
  const auto spec = full_spec();
  const auto proto = random_proto(2, 0.06);
  const auto initial = plus_state();
  const auto env = mixed_env(4);

  CMatrix manual = CMatrix::Zero(2, 2);
  const auto& group = proto.group();
  for (int e0 = 0; e0 < 4; ++e0) {
    for (int e1 = 0; e1 < 4; ++e1) {
      ControlPath path(group, 0.06, {e0, e1});
      manual += evolve_reduced_logical_state(spec, path, initial, env, IntegratorConfig{}).mat();
    }
  }
  manual /= 16.0;

  const auto exact = enumerate_paths(spec, proto, initial, env);
  CHECK(max_abs_diff(exact.mat(), manual) <= 1e-12);
}

TEST_CASE("enumeration handles time dependent specs") {
  std::vector<SystemTerm> terms;
  terms.push_back({Operator::hermitian(pauli_z()), Envelope::sinusoid(0.8, 2.0)});
  CMatrix b(2, 2);
  b << 0.3, 0, 0, -0.3;
  std::vector<Coupling> cpls;
  cpls.push_back({Operator::hermitian(pauli_z()), Envelope::constant(1.0), Operator::hermitian(b)});
  OpenSystemSpec spec(2, 2, std::move(terms), Operator::hermitian(CMatrix(0.4 * pauli_z())),
                      std::move(cpls));

  const auto proto = random_proto(2, 0.1);
  const auto initial = plus_state();
  const auto env = ground_env(2);
  const IntegratorConfig cfg{32, IntegrationScheme::Midpoint};

  CMatrix manual = CMatrix::Zero(2, 2);
  for (int e0 = 0; e0 < 4; ++e0) {
    for (int e1 = 0; e1 < 4; ++e1) {
      ControlPath path(proto.group(), 0.1, {e0, e1});
      manual += evolve_reduced_logical_state(spec, path, initial, env, cfg).mat();
    }
  }
  manual /= 16.0;

  const auto exact = enumerate_paths(spec, proto, initial, env, cfg);
  CHECK(max_abs_diff(exact.mat(), manual) <= 1e-12);
}

TEST_CASE("ensemble estimates converge to the enumeration oracle") {
  const auto spec = dephasing_spec();
  const auto proto = random_proto(6, 0.05);
  const auto initial = plus_state();
  const auto env = ground_env(4);

  const auto exact = enumerate_paths(spec, proto, initial, env);
  const auto mc = run_ensemble(spec, proto, initial, env, 20000, 2024, IntegratorConfig{}, 4);

  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      const double dev = std::abs(mc.mean_state.mat()(i, j) - exact.mat()(i, j));
      const double allowed = 5.0 * std::max(mc.stderr_matrix(i, j), 1e-12);
      CHECK(dev <= allowed);
    }
  }
}

TEST_CASE("ensemble averaged conjugation converges to the twirl") {
  // Draws in a fixed interval across seeds are uniform on the group, so the
  // seed average of g^dag X g must approach the twirl at MC rate.
  const auto group = pauli_group(1);
  const CMatrix x = randec::testing::random_complex_matrix(55, 2, 2);
  const CMatrix target = twirl(group, x);
  const int n = 100000;
  const int interval = 2;

  CMatrix sum = CMatrix::Zero(2, 2);
  RMatrix sum_sq = RMatrix::Zero(2, 2);
  for (int s = 0; s < n; ++s) {
    const CounterRng rng(derive_stream(31337, s));
    const int e = static_cast<int>(rng.uniform_index(interval, 4));
    const CMatrix& g = group.element(e).mat();
    const CMatrix term = g.adjoint() * x * g;
    sum += term;
    sum_sq += term.cwiseAbs2();
  }
  const CMatrix mean = sum / double(n);
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      const double var = std::max(0.0, sum_sq(i, j) / n - std::norm(mean(i, j)));
      const double se = std::sqrt(var / n);
      CHECK(std::abs(mean(i, j) - target(i, j)) <= 5.0 * std::max(se, 1e-12));
    }
  }
}

TEST_CASE("argument validation") {
  const auto spec = dephasing_spec();
  const auto proto = random_proto(6, 0.05);
  const auto initial = plus_state();
  const auto env = ground_env(4);

  CHECK_THROWS_AS(run_ensemble(spec, proto, initial, env, 0, 1), std::invalid_argument);
  CHECK_THROWS_AS(run_ensemble(spec, proto, initial, env, 10, 1, IntegratorConfig{}, 0),
                  std::invalid_argument);
  CHECK_THROWS_AS(run_ensemble(spec, proto, initial, ground_env(3), 10, 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(run_ensemble(spec, proto, PureState::normalized(CVector::Ones(3)), env, 10, 1),
                  std::invalid_argument);

  // 4^11 paths blow the enumeration budget; 4^10 fits.
  CHECK_THROWS_AS(enumerate_paths(spec, random_proto(11, 0.05), initial, env),
                  std::invalid_argument);
}
