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

#ifndef RANDEC_METRICS_AND_BOUNDS_H_
#define RANDEC_METRICS_AND_BOUNDS_H_

#include <cstdint>
#include <functional>
#include <optional>

#include "randec/operator_core.h"

namespace randec {

// Weight of mean_state on the complement of pi_s:
// 1 - <psi|mean_state|psi>, clamped to [-1e-9, 1].
double error_probability(const DensityOperator& mean_state, const PureState& pi_s);

// Black box producing the averaged output state for a pure input. Must be
// linear in the input projector; ensemble averages of unitary conjugations
// are.
using ChannelProbe = std::function<DensityOperator(const PureState&)>;

struct WorstCaseOptions {
  int n_restarts = 20;
  double tol = 1e-8;
  std::uint64_t seed = 0;
  int max_iterations = 300;
};

struct WorstCaseResult {
  double epsilon;
  PureState maximizer;
};

// Maximizes 1 - <psi|L(|psi><psi|)|psi> over pure states. The channel L is
// first reconstructed from d_s^2 probe inputs {|i>, (|i>+|j>)/sqrt2,
// (|i>+i|j>)/sqrt2}, then the objective is optimized by projected gradient
// descent from the basis states, the probe states, and n_restarts seeded
// random starts. Starts are derived per index, so growing n_restarts only
// ever adds candidates and the returned value cannot shrink.
WorstCaseResult worst_case_error(const ChannelProbe& probe, int d_s,
                                 const WorstCaseOptions& opt = WorstCaseOptions{});

// Closed-form worst-case error bound at horizon T, interval delta_t, and
// interaction strength k. With q = 4 T delta_t k^2 the value is
// q (1 + 8 delta_t k + q) / (1 - q)^2, valid for q < 1; nullopt otherwise.
// Throws std::invalid_argument for negative arguments.
std::optional<double> theorem_bound(double horizon, double delta_t, double k);

// Combinatorial volume factor 2^ceil(s/2) T^floor(s/2) (2 delta_t)^ceil(s/2)
// with s = n + m. Throws std::invalid_argument unless n, m >= 1.
double volume_bound(int n, int m, double horizon, double delta_t);

// Partial sum over 1 <= n, m <= n_max of volume_bound(n, m) k^(n+m),
// compensated summation in fixed order. Requires 4 T delta_t k^2 < 1 and
// n_max >= 1. Grouping terms by the parities of (n, m) gives four geometric
// blocks that sum exactly to the closed form above, so the n_max -> infinity
// limit equals theorem_bound.
double bound_series_partial_sum(double horizon, double delta_t, double k, int n_max);

// Measured error with its uncertainty next to the bound evaluated at the
// same parameters. pi_s is empty when epsilon_mean came from worst-case
// maximization; bound_value is empty when 4 T delta_t k^2 >= 1.
struct ErrorReport {
  double epsilon_mean;
  double epsilon_stderr;
  std::optional<PureState> pi_s;
  double horizon;
  double delta_t;
  double k;
  std::optional<double> bound_value;
};

// Builds the report and evaluates the bound. Rejects epsilon_mean below
// -3 epsilon_stderr (beyond noise) or above 1 plus noise.
ErrorReport make_error_report(double epsilon_mean, double epsilon_stderr,
                              std::optional<PureState> pi_s, double horizon, double delta_t,
                              double k);

}  // namespace randec

#endif  // RANDEC_METRICS_AND_BOUNDS_H_
