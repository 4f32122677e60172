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

// Shared test utilities: seeded random operators and a few comparison
// helpers. Kept independent of the library internals on purpose; tests that
// need an oracle implement it locally.

#ifndef RANDEC_TESTS_HELPERS_H
#define RANDEC_TESTS_HELPERS_H

#include "randec/operator_core.h"
#include "randec/rng.h"

namespace randec::testing {

inline CMatrix random_complex_matrix(std::uint64_t seed, int rows, int cols) {
  CounterRng rng(seed);
  CMatrix m(rows, cols);
  std::uint64_t c = 0;
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      const double re = rng.gaussian(c++);
      const double im = rng.gaussian(c++);
      m(i, j) = Complex(re, im);
    }
  }
  return m;
}

inline CMatrix random_hermitian(std::uint64_t seed, int d) {
  const CMatrix g = random_complex_matrix(seed, d, d);
  return 0.5 * (g + g.adjoint().eval());
}

inline CMatrix random_unitary(std::uint64_t seed, int d) {
  return hermitian_exp(random_hermitian(seed, d), 1.0);
}

inline CMatrix random_density_matrix(std::uint64_t seed, int d) {
  const CMatrix g = random_complex_matrix(seed, d, d);
  CMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return 0.5 * (rho + rho.adjoint().eval());
}

inline CVector random_state_vector(std::uint64_t seed, int d) {
  CounterRng rng(seed);
  CVector v(d);
  for (int i = 0; i < d; ++i) {
    v(i) = Complex(rng.gaussian(2 * i), rng.gaussian(2 * i + 1));
  }
  return v / v.norm();
}

inline double max_abs_diff(const CMatrix& a, const CMatrix& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace randec::testing

#endif  // RANDEC_TESTS_HELPERS_H
