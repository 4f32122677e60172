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

#include "randec/metrics_and_bounds.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "randec/rng.h"

namespace randec {

double error_probability(const DensityOperator& mean_state, const PureState& pi_s) {
  if (mean_state.dim() != pi_s.dim()) {
    throw std::invalid_argument("error_probability: dimension mismatch");
  }
  const CVector& psi = pi_s.amplitudes();
  const double survive = (psi.adjoint() * mean_state.mat() * psi)(0, 0).real();
  return std::clamp(1.0 - survive, -1e-9, 1.0);
}

namespace {

// Action of the reconstructed channel on the matrix units |k><l|.
class ReconstructedChannel {
 public:
  ReconstructedChannel(const ChannelProbe& probe, int d) : d_(d), units_(d * d) {
    std::vector<CMatrix> diag(d);
    for (int i = 0; i < d; ++i) {
      CVector e = CVector::Zero(d);
      e(i) = 1.0;
      diag[i] = probe(PureState(e)).mat();
      unit(i, i) = diag[i];
    }
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (int i = 0; i < d; ++i) {
      for (int j = i + 1; j < d; ++j) {
        CVector ep = CVector::Zero(d);
        ep(i) = inv_sqrt2;
        ep(j) = inv_sqrt2;
        CVector ey = CVector::Zero(d);
        ey(i) = inv_sqrt2;
        ey(j) = Complex(0.0, inv_sqrt2);
        const CMatrix p = probe(PureState(ep)).mat();
        const CMatrix y = probe(PureState(ey)).mat();
        // L(|i><j|) recovered from the two superposition probes:
        // 2p = L(ii) + L(jj) + L(ij) + L(ji), 2y = L(ii) + L(jj) - iL(ij) + iL(ji).
        const CMatrix s = diag[i] + diag[j];
        unit(i, j) = p + Complex(0.0, 1.0) * y - 0.5 * (1.0 + Complex(0.0, 1.0)) * s;
        unit(j, i) = unit(i, j).adjoint();
      }
    }
  }

  CMatrix apply(const CMatrix& x) const {
    CMatrix out = CMatrix::Zero(d_, d_);
    for (int k = 0; k < d_; ++k) {
      for (int l = 0; l < d_; ++l) {
        out += x(k, l) * unit(k, l);
      }
    }
    return out;
  }

  // Adjoint with respect to the Hilbert-Schmidt inner product:
  // tr(A^dag L(B)) = tr(adjoint_apply(A)^dag B).
  CMatrix adjoint_apply(const CMatrix& a) const {
    CMatrix out(d_, d_);
    for (int k = 0; k < d_; ++k) {
      for (int l = 0; l < d_; ++l) {
        out(k, l) = (unit(k, l).adjoint() * a).trace();
      }
    }
    return out;
  }

  int dim() const { return d_; }

 private:
  CMatrix& unit(int k, int l) { return units_[k * d_ + l]; }
  const CMatrix& unit(int k, int l) const { return units_[k * d_ + l]; }

  int d_;
  std::vector<CMatrix> units_;
};

double survival_objective(const ReconstructedChannel& chan, const CVector& psi) {
  const CMatrix p = psi * psi.adjoint();
  return (psi.adjoint() * chan.apply(p) * psi)(0, 0).real();
}

// Projected gradient descent on the unit sphere, minimizing the survival
// probability. Returns the local minimum value and overwrites psi.
double descend(const ReconstructedChannel& chan, CVector& psi, const WorstCaseOptions& opt) {
  double f = survival_objective(chan, psi);
  double eta = 0.5;
  for (int iter = 0; iter < opt.max_iterations; ++iter) {
    const CMatrix p = psi * psi.adjoint();
    const CVector grad = (chan.apply(p) + chan.adjoint_apply(p)) * psi;
    bool accepted = false;
    for (int bt = 0; bt < 40 && !accepted; ++bt) {
      CVector cand = psi - eta * grad;
      const double norm = cand.norm();
      if (norm > 1e-12) {
        cand /= norm;
        const double fc = survival_objective(chan, cand);
        if (fc < f) {
          const double gain = f - fc;
          psi = cand;
          f = fc;
          accepted = true;
          if (gain < 0.01 * opt.tol) return f;
        }
      }
      if (!accepted) eta *= 0.5;
    }
    if (!accepted) return f;
    eta = std::min(1.0, eta * 2.0);
  }
  return f;
}

CVector random_start(std::uint64_t seed, int d) {
  const CounterRng rng(seed);
  CVector v(d);
  for (int i = 0; i < d; ++i) {
    v(i) = Complex(rng.gaussian(2 * i), rng.gaussian(2 * i + 1));
  }
  const double norm = v.norm();
  if (norm < 1e-12) {
    v.setZero();
    v(0) = 1.0;
    return v;
  }
  return v / norm;
}

}  // namespace

WorstCaseResult worst_case_error(const ChannelProbe& probe, int d_s,
                                 const WorstCaseOptions& opt) {
  if (d_s < 1) throw std::invalid_argument("worst_case_error: dimension must be >= 1");
  if (opt.n_restarts < 0 || opt.tol <= 0 || opt.max_iterations < 1) {
    throw std::invalid_argument("worst_case_error: bad optimizer options");
  }

  const ReconstructedChannel chan(probe, d_s);

  std::vector<CVector> starts;
  for (int i = 0; i < d_s; ++i) {
    CVector e = CVector::Zero(d_s);
    e(i) = 1.0;
    starts.push_back(e);
  }
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (int i = 0; i < d_s; ++i) {
    for (int j = i + 1; j < d_s; ++j) {
      CVector ep = CVector::Zero(d_s);
      ep(i) = inv_sqrt2;
      ep(j) = inv_sqrt2;
      starts.push_back(ep);
      CVector ey = CVector::Zero(d_s);
      ey(i) = inv_sqrt2;
      ey(j) = Complex(0.0, inv_sqrt2);
      starts.push_back(ey);
    }
  }
  for (int s = 0; s < opt.n_restarts; ++s) {
    starts.push_back(random_start(derive_stream(opt.seed, s), d_s));
  }

  double best_f = std::numeric_limits<double>::infinity();
  CVector best_psi = starts.front();
  for (CVector psi : starts) {
    const double f = descend(chan, psi, opt);
    if (f < best_f) {
      best_f = f;
      best_psi = psi;
    }
  }

  return WorstCaseResult{std::clamp(1.0 - best_f, -1e-9, 1.0), PureState::normalized(best_psi)};
}

std::optional<double> theorem_bound(double horizon, double delta_t, double k) {
  if (horizon < 0 || delta_t < 0 || k < 0) {
    throw std::invalid_argument("theorem_bound: arguments must be nonnegative");
  }
  const double q = 4.0 * horizon * delta_t * k * k;
  if (q >= 1.0) return std::nullopt;
  const double denom = (1.0 - q) * (1.0 - q);
  return q * (1.0 + 8.0 * delta_t * k + q) / denom;
}

double volume_bound(int n, int m, double horizon, double delta_t) {
  if (n < 1 || m < 1) throw std::invalid_argument("volume_bound: orders must be >= 1");
  if (horizon < 0 || delta_t < 0) {
    throw std::invalid_argument("volume_bound: times must be nonnegative");
  }
  const int s = n + m;
  const int half_up = (s + 1) / 2;
  const int half_down = s / 2;
  return std::pow(2.0, half_up) * std::pow(horizon, half_down) *
         std::pow(2.0 * delta_t, half_up);
}

double bound_series_partial_sum(double horizon, double delta_t, double k, int n_max) {
  if (n_max < 1) throw std::invalid_argument("bound_series_partial_sum: n_max must be >= 1");
  const double q = 4.0 * horizon * delta_t * k * k;
  if (q >= 1.0) {
    throw std::invalid_argument("bound_series_partial_sum: requires 4 T delta_t k^2 < 1");
  }

  double sum = 0.0;
  double comp = 0.0;
  for (int n = 1; n <= n_max; ++n) {
    for (int m = 1; m <= n_max; ++m) {
      const double term = volume_bound(n, m, horizon, delta_t) * std::pow(k, n + m);
      const double y = term - comp;
      const double t = sum + y;
      comp = (t - sum) - y;
      sum = t;
    }
  }
  return sum;
}

ErrorReport make_error_report(double epsilon_mean, double epsilon_stderr,
                              std::optional<PureState> pi_s, double horizon, double delta_t,
                              double k) {
  if (epsilon_stderr < 0 || !std::isfinite(epsilon_mean) || !std::isfinite(epsilon_stderr)) {
    throw std::invalid_argument("make_error_report: bad error statistics");
  }
  if (epsilon_mean < -3.0 * epsilon_stderr - 1e-12) {
    throw std::invalid_argument("make_error_report: error estimate negative beyond noise");
  }
  if (epsilon_mean > 1.0 + 3.0 * epsilon_stderr + 1e-9) {
    throw std::invalid_argument("make_error_report: error estimate above one beyond noise");
  }
  return ErrorReport{epsilon_mean,    epsilon_stderr, std::move(pi_s),
                     horizon,         delta_t,        k,
                     theorem_bound(horizon, delta_t, k)};
}

}  // namespace randec
