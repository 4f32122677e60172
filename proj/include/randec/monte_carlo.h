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

#ifndef RANDEC_MONTE_CARLO_H_
#define RANDEC_MONTE_CARLO_H_

#include <cstdint>

#include "randec/control_protocols.h"
#include "randec/propagation_engine.h"

namespace randec {

// Ensemble average of the logical reduced state over control realizations.
//
// stderr_matrix holds per-entry standard errors of the complex sample mean,
// sqrt(sum_r |x_r - mean|^2 / (n (n-1))). Entries of a density matrix are
// correlated, so these are diagnostics, not joint confidence sets.
//
// initial_error_mean is 1 - <psi|mean_state|psi> for the evolved initial
// state, and initial_error_stderr is the scalar standard error of that
// quantity taken across realizations. The scalar track exists because the
// error of a derived linear functional cannot be recovered from the
// per-entry standard errors alone.
struct EnsembleResult {
  DensityOperator mean_state;
  int n_realizations;
  RMatrix stderr_matrix;
  std::uint64_t master_seed;
  double initial_error_mean;
  double initial_error_stderr;
};

// Averages evolve_reduced_logical_state over n control realizations.
//
// Realization r uses the path seed derive_stream(master_seed, r), matching
// make_path on a protocol carrying that seed. Accumulation is blocked:
// realizations are summed sequentially inside fixed-size blocks and block
// partials are combined in index order, so the result is bitwise identical
// for any thread count. Deterministic protocols take a single-evaluation
// shortcut (every realization is the same path) with all standard errors
// zero. Throws std::invalid_argument for n < 1, threads < 1, or dimension
// mismatches.
EnsembleResult run_ensemble(const OpenSystemSpec& spec, const ProtocolSpec& protocol,
                            const PureState& initial, const DensityOperator& env_state,
                            int n, std::uint64_t master_seed,
                            const IntegratorConfig& cfg = IntegratorConfig{},
                            int threads = 1);

// Exact uniform average of the final logical reduced state over all G^M
// control paths. Ground truth for run_ensemble on random protocols; the
// protocol's kind and seed are ignored, only its group and interval count
// enter. Throws std::invalid_argument when G^M exceeds 2^20 or dimensions
// mismatch.
DensityOperator enumerate_paths(const OpenSystemSpec& spec, const ProtocolSpec& protocol,
                                const PureState& initial, const DensityOperator& env_state,
                                const IntegratorConfig& cfg = IntegratorConfig{});

}  // namespace randec

#endif  // RANDEC_MONTE_CARLO_H_
