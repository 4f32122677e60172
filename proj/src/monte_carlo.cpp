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

#include "randec/monte_carlo.h"

#include <atomic>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <thread>
#include <vector>

#include "randec/rng.h"

namespace randec {
namespace {

// Realizations per accumulation block. Partials are combined in block order,
// which pins the floating-point result independent of thread scheduling.
constexpr int kBlockSize = 256;

// Environment eigenbranches below this weight are dropped.
constexpr double kBranchWeightTol = 1e-14;

struct EnvBranches {
  std::vector<double> weights;
  std::vector<CVector> states;
};

EnvBranches split_env_state(const DensityOperator& env_state) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(env_state.mat());
  if (es.info() != Eigen::Success) {
    throw std::runtime_error("run_ensemble: env state eigendecomposition failed");
  }
  EnvBranches out;
  for (int b = 0; b < env_state.dim(); ++b) {
    const double w = es.eigenvalues()(b);
    if (w > kBranchWeightTol) {
      out.weights.push_back(w);
      out.states.push_back(es.eigenvectors().col(b));
    }
  }
  return out;
}

// Joint vector |psi> (x) |e_b>, system index slow.
CVector joint_vector(const CVector& sys, const CVector& env) {
  const int d_s = static_cast<int>(sys.size());
  const int d_e = static_cast<int>(env.size());
  CVector v(d_s * d_e);
  for (int s = 0; s < d_s; ++s) {
    v.segment(s * d_e, d_e) = sys(s) * env;
  }
  return v;
}

// tr_E |v><v| accumulated into rho with weight w.
void add_reduced_projector(const CVector& v, int d_s, int d_e, double w, CMatrix& rho) {
  const Eigen::Map<const CMatrix> cols(v.data(), d_e, d_s);
  rho.noalias() += w * (cols.transpose() * cols.conjugate());
}

// Same draw sequence as make_path on a Random protocol with this seed.
void draw_path_indices(std::uint64_t path_seed, int m, int g, std::vector<int>& indices) {
  const CounterRng rng(path_seed);
  indices.resize(m);
  for (int j = 0; j < m; ++j) {
    indices[j] = static_cast<int>(
        rng.uniform_index(static_cast<std::uint64_t>(j), static_cast<std::uint32_t>(g)));
  }
}

struct BlockStats {
  CMatrix state_sum;
  RMatrix abs_sq_sum;
  double f_sum = 0.0;
  double f_sq_sum = 0.0;

  explicit BlockStats(int d_s)
      : state_sum(CMatrix::Zero(d_s, d_s)), abs_sq_sum(RMatrix::Zero(d_s, d_s)) {}

  void add(const CMatrix& rho, double f) {
    state_sum += rho;
    abs_sq_sum += rho.cwiseAbs2();
    f_sum += f;
    f_sq_sum += f * f;
  }
};

double survival(const CVector& psi, const CMatrix& rho) {
  return (psi.adjoint() * rho * psi)(0, 0).real();
}

// One realization on the fast path: branch vectors through the interval table.
CMatrix realize_with_table(const LogicalIntervalTable& table, const std::vector<int>& indices,
                           const EnvBranches& branches, const CVector& psi, int d_s, int d_e) {
  CMatrix rho = CMatrix::Zero(d_s, d_s);
  CVector v(d_s * d_e);
  for (std::size_t b = 0; b < branches.weights.size(); ++b) {
    v = joint_vector(psi, branches.states[b]);
    for (int idx : indices) {
      v = table.propagator(idx) * v;
    }
    add_reduced_projector(v, d_s, d_e, branches.weights[b], rho);
  }
  return rho;
}

EnsembleResult finalize(const std::vector<BlockStats>& blocks, int d_s, int n,
                        std::uint64_t master_seed, const CVector& psi) {
  CMatrix state_sum = CMatrix::Zero(d_s, d_s);
  RMatrix abs_sq_sum = RMatrix::Zero(d_s, d_s);
  double f_sum = 0.0;
  double f_sq_sum = 0.0;
  for (const auto& b : blocks) {
    state_sum += b.state_sum;
    abs_sq_sum += b.abs_sq_sum;
    f_sum += b.f_sum;
    f_sq_sum += b.f_sq_sum;
  }

  const double inv_n = 1.0 / static_cast<double>(n);
  CMatrix mean = state_sum * inv_n;
  mean = 0.5 * (mean + mean.adjoint().eval());

  RMatrix stderr_matrix = RMatrix::Zero(d_s, d_s);
  double f_stderr = 0.0;
  if (n > 1) {
    const double scale = 1.0 / (static_cast<double>(n) * static_cast<double>(n - 1));
    stderr_matrix =
        ((abs_sq_sum - static_cast<double>(n) * mean.cwiseAbs2()) * scale).cwiseMax(0.0).cwiseSqrt();
    const double f_mean = f_sum * inv_n;
    f_stderr = std::sqrt(std::max(0.0, (f_sq_sum - static_cast<double>(n) * f_mean * f_mean) * scale));
  }

  const double f_of_mean = 1.0 - survival(psi, mean);
  return EnsembleResult{DensityOperator::from_matrix(mean), n, std::move(stderr_matrix),
                        master_seed, f_of_mean, f_stderr};
}

void check_dims(const OpenSystemSpec& spec, const ProtocolSpec& protocol,
                const PureState& initial, const DensityOperator& env_state) {
  if (initial.dim() != spec.d_s()) {
    throw std::invalid_argument("ensemble: initial state dimension mismatch");
  }
  if (env_state.dim() != spec.d_e()) {
    throw std::invalid_argument("ensemble: env state dimension mismatch");
  }
  if (protocol.group().dim() != spec.d_s()) {
    throw std::invalid_argument("ensemble: group dimension mismatch");
  }
}

}  // namespace

EnsembleResult run_ensemble(const OpenSystemSpec& spec, const ProtocolSpec& protocol,
                            const PureState& initial, const DensityOperator& env_state,
                            int n, std::uint64_t master_seed, const IntegratorConfig& cfg,
                            int threads) {
  check_dims(spec, protocol, initial, env_state);
  if (n < 1) throw std::invalid_argument("run_ensemble: n must be >= 1");
  if (threads < 1) throw std::invalid_argument("run_ensemble: threads must be >= 1");

  const int d_s = spec.d_s();
  const CVector& psi = initial.amplitudes();

  // All realizations of a deterministic protocol share one path.
  if (protocol.kind() != ProtocolKind::Random) {
    const auto rho = evolve_reduced_logical_state(spec, make_path(protocol), initial,
                                                  env_state, cfg);
    return EnsembleResult{rho, n, RMatrix::Zero(d_s, d_s), master_seed,
                          1.0 - survival(psi, rho.mat()), 0.0};
  }

  const int m = protocol.num_intervals();
  const int g = protocol.group().size();
  const auto table = LogicalIntervalTable::try_build(spec, protocol.group(),
                                                     protocol.delta_t(), cfg);
  const EnvBranches branches = table ? split_env_state(env_state) : EnvBranches{};

  const int n_blocks = (n + kBlockSize - 1) / kBlockSize;
  std::vector<BlockStats> blocks(n_blocks, BlockStats(d_s));

  std::atomic<int> next_block{0};
  auto worker = [&]() {
    std::vector<int> indices;
    for (;;) {
      const int blk = next_block.fetch_add(1);
      if (blk >= n_blocks) return;
      const int lo = blk * kBlockSize;
      const int hi = std::min(n, lo + kBlockSize);
      for (int r = lo; r < hi; ++r) {
        const std::uint64_t path_seed = derive_stream(master_seed, static_cast<std::uint64_t>(r));
        CMatrix rho;
        if (table) {
          draw_path_indices(path_seed, m, g, indices);
          rho = realize_with_table(*table, indices, branches, psi, d_s, spec.d_e());
        } else {
          ProtocolSpec realization(ProtocolKind::Random, protocol.group(), protocol.delta_t(),
                                   protocol.horizon(), path_seed);
          rho = evolve_reduced_logical_state(spec, make_path(realization), initial, env_state, cfg)
                    .mat();
        }
        blocks[blk].add(rho, 1.0 - survival(psi, rho));
      }
    }
  };

  const int n_workers = std::min(threads, n_blocks);
  if (n_workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n_workers);
    for (int w = 0; w < n_workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  return finalize(blocks, d_s, n, master_seed, psi);
}

DensityOperator enumerate_paths(const OpenSystemSpec& spec, const ProtocolSpec& protocol,
                                const PureState& initial, const DensityOperator& env_state,
                                const IntegratorConfig& cfg) {
  check_dims(spec, protocol, initial, env_state);

  const int m = protocol.num_intervals();
  const int g = protocol.group().size();
  constexpr std::uint64_t kBudget = 1ull << 20;
  std::uint64_t total = 1;
  for (int j = 0; j < m; ++j) {
    total *= static_cast<std::uint64_t>(g);
    if (total > kBudget) {
      throw std::invalid_argument("enumerate_paths: G^M exceeds the 2^20 path budget");
    }
  }

  const int d_s = spec.d_s();
  const int d_e = spec.d_e();

  // Per (interval, element) logical propagators. For time-independent specs
  // every interval shares one set; otherwise each interval window gets its
  // own, computed by restricting a constant-element path to that window.
  std::vector<std::vector<CMatrix>> props(m);
  if (const auto table = LogicalIntervalTable::try_build(spec, protocol.group(),
                                                         protocol.delta_t(), cfg)) {
    std::vector<CMatrix> shared;
    shared.reserve(g);
    for (int e = 0; e < g; ++e) shared.push_back(table->propagator(e));
    for (int j = 0; j < m; ++j) props[j] = shared;
  } else {
    const double dt = protocol.delta_t();
    for (int e = 0; e < g; ++e) {
      ControlPath constant_path(protocol.group(), dt, std::vector<int>(m, e));
      for (int j = 0; j < m; ++j) {
        props[j].push_back(
            propagate_range(spec, constant_path, Frame::Logical, cfg, j * dt, (j + 1) * dt).mat());
      }
    }
  }

  const EnvBranches branches = split_env_state(env_state);
  CMatrix rho = CMatrix::Zero(d_s, d_s);

  // Depth-first over paths in lexicographic order; prefixes are shared.
  std::vector<CVector> stack(m + 1);
  for (std::size_t b = 0; b < branches.weights.size(); ++b) {
    stack[0] = joint_vector(initial.amplitudes(), branches.states[b]);
    const double w = branches.weights[b] / static_cast<double>(total);
    std::vector<int> digit(m, 0);
    int depth = 0;
    for (;;) {
      if (depth == m) {
        add_reduced_projector(stack[m], d_s, d_e, w, rho);
        // Backtrack to the deepest digit that can still advance.
        while (depth > 0 && digit[depth - 1] == g - 1) --depth;
        if (depth == 0) break;
        ++digit[depth - 1];
        for (int j = depth; j < m; ++j) digit[j] = 0;
        --depth;
      }
      stack[depth + 1] = props[depth][digit[depth]] * stack[depth];
      ++depth;
    }
  }

  rho = 0.5 * (rho + rho.adjoint().eval());
  return DensityOperator::from_matrix(rho);
}

}  // namespace randec
