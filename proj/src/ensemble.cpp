// Copyright 2026 The qjump Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qjump/ensemble.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "qjump/errors.hpp"
#include "qjump/random.hpp"
#include "qjump/simd/kernels.hpp"

namespace qjump {

void EnsembleConfig::validate() const {
  if (n_traj < 1) throw ConfigError("n_traj must be >= 1");
  if (substeps < 1) throw ConfigError("substeps must be >= 1");
  if (chunk < 1) throw ConfigError("chunk must be >= 1");
  if (grid.empty()) throw ConfigError("ensemble grid is empty");
}

namespace {

// Running mean and sum of squared deviations over a set of trajectories.
struct Moments {
  std::size_t count = 0;
  std::vector<double> mean, m2;

  explicit Moments(std::size_t n = 0) : mean(n), m2(n) {}

  void add(const std::vector<double>& x) {
    ++count;
    simd::kernels().welford_update(x.data(), mean.data(), m2.data(),
                                   1.0 / static_cast<double>(count), x.size());
  }

  void merge(const Moments& b) {
    if (b.count == 0) return;
    if (count == 0) {
      *this = b;
      return;
    }
    const double na = static_cast<double>(count), nb = static_cast<double>(b.count);
    simd::kernels().welford_merge(mean.data(), m2.data(), b.mean.data(), b.m2.data(),
                                  nb / (na + nb), na * nb / (na + nb), mean.size());
    count += b.count;
  }
};

struct ChunkResult {
  Moments moments;
  std::vector<TrajectoryJump> jumps;
};

Moments tree_merge(std::vector<ChunkResult>& parts, std::size_t lo, std::size_t hi) {
  if (hi - lo == 1) return std::move(parts[lo].moments);
  const std::size_t mid = lo + (hi - lo) / 2;
  Moments left = tree_merge(parts, lo, mid);
  left.merge(tree_merge(parts, mid, hi));
  return left;
}

// Per-trajectory sample layout: grid point, then row-major entry, then
// (re, im).
class Sampler {
 public:
  Sampler(std::size_t dim, std::size_t points, bool doubled)
      : dim_(dim), doubled_(doubled), values_(points * dim * dim * 2) {}

  void operator()(std::size_t k, std::span<const cplx> x) {
    const cplx* bra = doubled_ ? x.data() + dim_ : x.data();
    double* out = values_.data() + k * dim_ * dim_ * 2;
    for (std::size_t r = 0; r < dim_; ++r)
      for (std::size_t c = 0; c < dim_; ++c) {
        const cplx v = x[r] * std::conj(bra[c]);
        *out++ = v.real();
        *out++ = v.imag();
      }
  }

  const std::vector<double>& values() const { return values_; }

 private:
  std::size_t dim_;
  bool doubled_;
  std::vector<double> values_;
};

ChunkResult run_chunk(const TrajectoryPlan& plan, std::span<const cplx> initial,
                      const EnsembleConfig& cfg, std::size_t first, std::size_t last) {
  const std::size_t dim = plan.hilbert_dim();
  Sampler sampler(dim, plan.grid().size(), plan.unraveling() == Unraveling::doubled);
  ChunkResult out{Moments(sampler.values().size()), {}};
  const TrajectoryPlan::SampleFn sample = [&sampler](std::size_t k, std::span<const cplx> x) {
    sampler(k, x);
  };
  std::vector<JumpEvent> jumps;
  for (std::size_t i = first; i < last; ++i) {
    RandomSource rng(derive_seed(cfg.master_seed, i));
    jumps.clear();
    plan.run(initial, rng, sample, cfg.record_jumps ? &jumps : nullptr);
    out.moments.add(sampler.values());
    for (const auto& e : jumps) out.jumps.push_back({i, e});
  }
  return out;
}

}  // namespace

EnsembleEstimate run_ensemble(const TrajectoryPlan& plan, std::span<const cplx> initial,
                              const EnsembleConfig& cfg) {
  cfg.validate();
  if (plan.unraveling() != cfg.mode)
    throw ConfigError("run_ensemble: plan unraveling does not match the configured mode");

  const std::size_t n_chunks = (cfg.n_traj + cfg.chunk - 1) / cfg.chunk;
  std::size_t workers = cfg.workers == 0 ? std::max(1u, std::thread::hardware_concurrency())
                                         : cfg.workers;
  workers = std::min(workers, n_chunks);

  std::vector<ChunkResult> parts(n_chunks);
  std::vector<Moments> worker_acc(workers);
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;

  auto work = [&](std::size_t w) {
    try {
      for (std::size_t c = next++; c < n_chunks && !failed; c = next++) {
        const std::size_t first = c * cfg.chunk;
        const std::size_t last = std::min(cfg.n_traj, first + cfg.chunk);
        parts[c] = run_chunk(plan, initial, cfg, first, last);
        if (!cfg.deterministic_reduction) {
          worker_acc[w].merge(parts[c].moments);
          parts[c].moments = Moments();
        }
      }
    } catch (...) {
      std::lock_guard lock(error_mutex);
      if (!error) error = std::current_exception();
      failed = true;
    }
  };

  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work, w);
  }
  if (error) std::rethrow_exception(error);

  Moments total;
  if (cfg.deterministic_reduction) {
    total = tree_merge(parts, 0, n_chunks);
  } else {
    for (auto& acc : worker_acc) total.merge(acc);
  }

  EnsembleEstimate est;
  est.times.assign(plan.grid().begin(), plan.grid().end());
  est.n_traj = cfg.n_traj;
  est.mode = plan.unraveling();
  const std::size_t dim = plan.hilbert_dim();
  const std::size_t block = dim * dim;
  const double n = static_cast<double>(cfg.n_traj);
  for (std::size_t k = 0; k < est.times.size(); ++k) {
    DensityMatrix rho(dim);
    std::vector<double> se_re(block), se_im(block);
    for (std::size_t e = 0; e < block; ++e) {
      const std::size_t at = (k * block + e) * 2;
      rho.data()[e] = cplx(total.mean[at], total.mean[at + 1]);
      if (cfg.n_traj > 1) {
        se_re[e] = std::sqrt(std::max(0.0, total.m2[at]) / (n - 1.0) / n);
        se_im[e] = std::sqrt(std::max(0.0, total.m2[at + 1]) / (n - 1.0) / n);
      }
    }
    est.rho_mean.push_back(std::move(rho));
    est.std_error_re.push_back(std::move(se_re));
    est.std_error_im.push_back(std::move(se_im));
  }
  for (auto& part : parts)
    est.jumps.insert(est.jumps.end(), part.jumps.begin(), part.jumps.end());
  return est;
}

EnsembleEstimate run_ensemble(const LindbladSpec& spec, const StateVector& psi0,
                              const EnsembleConfig& cfg) {
  SimulationOptions opts{cfg.substeps, cfg.method};
  if (cfg.mode == Unraveling::standard) {
    const auto plan = TrajectoryPlan::standard(spec, cfg.grid, opts);
    return run_ensemble(plan, psi0.span(), cfg);
  }
  return run_ensemble(split_rate_general(spec), psi0, cfg);
}

EnsembleEstimate run_ensemble(const GeneralSpec& spec, const StateVector& psi0,
                              const EnsembleConfig& cfg) {
  if (cfg.mode != Unraveling::doubled)
    throw ConfigError("run_ensemble: a general spec needs the doubled mode");
  if (psi0.dim() != spec.dim) throw DimensionError("run_ensemble: initial state dimension mismatch");
  if (std::abs(norm(psi0) - 1.0) > 1e-9) throw ConfigError("run_ensemble: initial state must be normalized");
  const auto plan = TrajectoryPlan::doubled(spec, cfg.grid, {cfg.substeps, cfg.method});
  std::vector<cplx> theta(psi0.span().begin(), psi0.span().end());
  theta.insert(theta.end(), psi0.span().begin(), psi0.span().end());
  return run_ensemble(plan, theta, cfg);
}

EnsembleEstimate hermitize(EnsembleEstimate est) {
  std::vector<DensityMatrix> raw = est.rho_mean;
  for (auto& rho : est.rho_mean) {
    DensityMatrix h = rho + rho.adjoint();
    h *= 0.5;
    rho = std::move(h);
  }
  if (!est.raw_mean) est.raw_mean = std::move(raw);
  return est;
}

PopulationSeries population(const EnsembleEstimate& est, std::size_t index, double markov_rate) {
  if (est.rho_mean.empty() || index >= est.rho_mean.front().dim())
    throw DimensionError("population: index out of range");
  const std::size_t dim = est.rho_mean.front().dim();
  PopulationSeries out;
  out.times = est.times;
  for (std::size_t k = 0; k < est.times.size(); ++k) {
    const double v = est.rho_mean[k](index, index).real();
    out.value.push_back(v);
    out.std_error.push_back(est.std_error_re[k][index * dim + index]);
    out.markov_deviation.push_back(v - std::exp(-markov_rate * est.times[k]));
  }
  return out;
}

}  // namespace qjump
