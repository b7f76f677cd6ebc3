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

#include "qjump/pdp.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <utility>

#include "qjump/errors.hpp"
#include "qjump/simd/kernels.hpp"

namespace qjump {

namespace {

void copy_matrix(const Operator& op, std::vector<cplx>& out) {
  out.assign(op.data(), op.data() + op.dim() * op.dim());
}

void scale(cplx* x, std::size_t n, double s) {
  for (std::size_t i = 0; i < n; ++i) x[i] *= s;
}

// Standard unraveling -------------------------------------------------------

class StandardModel {
 public:
  struct Frame {
    std::vector<cplx> generator;  // A(t), row-major
    std::vector<double> rates;
  };

  struct Scratch {
    explicit Scratch(std::size_t n) : image(n) {}
    std::vector<cplx> image;
  };

  explicit StandardModel(LindbladSpec spec) : spec_(std::move(spec)) {
    spec_.validate();
    if (spec_.dim == 0) throw DimensionError("LindbladSpec: dimension must be positive");
    for (const auto& ch : spec_.channels) {
      jumps_.emplace_back();
      copy_matrix(ch.jump, jumps_.back());
    }
  }

  static constexpr Unraveling kind = Unraveling::standard;
  std::size_t dim() const { return spec_.dim; }
  std::size_t state_size() const { return spec_.dim; }
  std::size_t channels() const { return jumps_.size(); }

  Frame frame(double t) const {
    Frame f;
    f.rates.resize(channels());
    for (std::size_t i = 0; i < channels(); ++i) {
      const double rate = spec_.channels[i].rate(t);
      if (rate < 0.0) {
        std::ostringstream msg;
        msg << "channel " << i << " has negative rate " << rate << " at t=" << t
            << "; the standard unraveling needs non-negative rates, use the doubled mode";
        throw NegativeRateError(msg.str());
      }
      f.rates[i] = rate;
    }
    copy_matrix(spec_.effective_generator(t), f.generator);
    return f;
  }

  void check_initial(const cplx* x) const {
    const double n2 = simd::kernels().cnorm2(x, dim());
    if (std::abs(std::sqrt(n2) - 1.0) > 1e-9)
      throw ConfigError("standard unraveling: initial state must be normalized");
  }

  // Writes gamma_i |L_i x|^2/|x|^2 to lam and |L_i x|^2/|x|^2 to weight;
  // returns the total.
  double intensities(const Frame& f, const cplx* x, double* lam, double* weight,
                     Scratch& s) const {
    const auto& k = simd::kernels();
    const std::size_t n = dim();
    const double inv = 1.0 / k.cnorm2(x, n);
    double total = 0.0;
    for (std::size_t i = 0; i < channels(); ++i) {
      k.cmatvec(jumps_[i].data(), x, s.image.data(), n);
      const double w = k.cnorm2(s.image.data(), n) * inv;
      weight[i] = w;
      lam[i] = f.rates[i] * w;
      total += lam[i];
    }
    return total;
  }

  void drift(const Frame& f, const cplx* x, cplx* out, Scratch& s) const {
    const auto& k = simd::kernels();
    const std::size_t n = dim();
    k.cmatvec(f.generator.data(), x, out, n);
    const double inv = 1.0 / k.cnorm2(x, n);
    double total = 0.0;
    for (std::size_t i = 0; i < channels(); ++i) {
      if (f.rates[i] == 0.0) continue;
      k.cmatvec(jumps_[i].data(), x, s.image.data(), n);
      total += f.rates[i] * k.cnorm2(s.image.data(), n);
    }
    k.caxpy(cplx(0.5 * total * inv), x, out, n);
  }

  void jump(const Frame&, std::size_t i, cplx* x, Scratch& s) const {
    const auto& k = simd::kernels();
    const std::size_t n = dim();
    k.cmatvec(jumps_[i].data(), x, s.image.data(), n);
    const double n2 = k.cnorm2(s.image.data(), n);
    if (!(n2 > 0.0)) throw NumericError("jump_standard: zero-norm jump target");
    std::copy_n(s.image.data(), n, x);
    scale(x, n, 1.0 / std::sqrt(n2));
  }

  void after_flow(cplx* x) const {
    scale(x, dim(), 1.0 / std::sqrt(simd::kernels().cnorm2(x, dim())));
  }

 private:
  LindbladSpec spec_;
  std::vector<std::vector<cplx>> jumps_;
};

// Doubled unraveling: flat state (phi, psi) ---------------------------------

class DoubledModel {
 public:
  struct Frame {
    std::vector<cplx> a, b;
    std::vector<std::vector<cplx>> c, d;
  };

  struct Scratch {
    explicit Scratch(std::size_t n) : image(2 * n) {}
    std::vector<cplx> image;
  };

  explicit DoubledModel(GeneralSpec spec) : spec_(std::move(spec)) {
    if (spec_.dim == 0) throw DimensionError("GeneralSpec: dimension must be positive");
    if (!spec_.a || !spec_.b) throw ConfigError("GeneralSpec: A and B must be set");
  }

  static constexpr Unraveling kind = Unraveling::doubled;
  std::size_t dim() const { return spec_.dim; }
  std::size_t state_size() const { return 2 * spec_.dim; }
  std::size_t channels() const { return spec_.pairs.size(); }

  Frame frame(double t) const {
    Frame f;
    take(spec_.a(t), f.a);
    take(spec_.b(t), f.b);
    f.c.resize(channels());
    f.d.resize(channels());
    for (std::size_t i = 0; i < channels(); ++i) {
      take(spec_.pairs[i].c(t), f.c[i]);
      take(spec_.pairs[i].d(t), f.d[i]);
    }
    return f;
  }

  void check_initial(const cplx* x) const {
    if (!(simd::kernels().cnorm2(x, state_size()) > 0.0))
      throw ConfigError("doubled unraveling: initial pair has zero norm");
  }

  double intensities(const Frame& f, const cplx* x, double* lam, double* weight,
                     Scratch& s) const {
    const double inv = 1.0 / norm2_checked(x);
    double total = 0.0;
    for (std::size_t i = 0; i < channels(); ++i) {
      const double w = pair_image_norm2(f, i, x, s) * inv;
      weight[i] = w;
      lam[i] = w;
      total += w;
    }
    return total;
  }

  void drift(const Frame& f, const cplx* x, cplx* out, Scratch& s) const {
    const auto& k = simd::kernels();
    const std::size_t n = dim();
    k.cmatvec(f.a.data(), x, out, n);
    k.cmatvec(f.b.data(), x + n, out + n, n);
    const double inv = 1.0 / norm2_checked(x);
    double total = 0.0;
    for (std::size_t i = 0; i < channels(); ++i) total += pair_image_norm2(f, i, x, s);
    k.caxpy(cplx(0.5 * total * inv), x, out, 2 * n);
  }

  void jump(const Frame& f, std::size_t i, cplx* x, Scratch& s) const {
    const auto& k = simd::kernels();
    const std::size_t n = dim();
    const double before = k.cnorm2(x, 2 * n);
    const double after = pair_image_norm2(f, i, x, s);
    if (!(after > 0.0)) throw NumericError("jump_doubled: zero-norm jump target");
    std::copy_n(s.image.data(), 2 * n, x);
    scale(x, 2 * n, std::sqrt(before / after));
  }

  void after_flow(cplx*) const {}

 private:
  void take(const Operator& op, std::vector<cplx>& out) const {
    if (op.dim() != dim()) throw DimensionError("GeneralSpec: operator dimension mismatch");
    copy_matrix(op, out);
  }

  double norm2_checked(const cplx* x) const {
    const double n2 = simd::kernels().cnorm2(x, state_size());
    if (!(n2 > 0.0)) throw NumericError("doubled unraveling: state has zero norm");
    return n2;
  }

  // Leaves (C_i phi, D_i psi) in s.image and returns its squared norm.
  double pair_image_norm2(const Frame& f, std::size_t i, const cplx* x, Scratch& s) const {
    const auto& k = simd::kernels();
    const std::size_t n = dim();
    k.cmatvec(f.c[i].data(), x, s.image.data(), n);
    k.cmatvec(f.d[i].data(), x + n, s.image.data() + n, n);
    return k.cnorm2(s.image.data(), 2 * n);
  }

  GeneralSpec spec_;
};

}  // namespace

// Engine --------------------------------------------------------------------

class TrajectoryPlan::Impl {
 public:
  virtual ~Impl() = default;
  virtual Unraveling unraveling() const = 0;
  virtual std::size_t hilbert_dim() const = 0;
  virtual std::size_t state_size() const = 0;
  virtual std::span<const double> grid() const = 0;
  virtual void run(std::span<const cplx> initial, RandomSource& rng, const TrajectoryPlan::SampleFn& sample,
                   std::vector<JumpEvent>* jumps) const = 0;
};

namespace {

void check_grid(std::span<const double> grid) {
  if (grid.size() < 1) throw ConfigError("time grid is empty");
  for (std::size_t i = 1; i < grid.size(); ++i)
    if (!(grid[i] > grid[i - 1])) throw ConfigError("time grid must be strictly increasing");
}

template <class Model>
class Engine final : public TrajectoryPlan::Impl {
  using Frame = typename Model::Frame;
  using Scratch = typename Model::Scratch;

 public:
  Engine(Model model, std::span<const double> grid, const SimulationOptions& opts)
      : model_(std::move(model)), grid_(grid.begin(), grid.end()), opts_(opts) {
    check_grid(grid);
    if (opts.substeps == 0) throw ConfigError("substeps must be >= 1");
    const std::size_t per = 2 * opts.substeps;
    frames_.reserve((grid_.size() - 1) * per + 1);
    for (std::size_t k = 0; k + 1 < grid_.size(); ++k) {
      const double h = step(k);
      for (std::size_t j = 0; j < per; ++j)
        frames_.push_back(model_.frame(grid_[k] + 0.5 * h * static_cast<double>(j)));
    }
    frames_.push_back(model_.frame(grid_.back()));
  }

  Unraveling unraveling() const override { return Model::kind; }
  std::size_t hilbert_dim() const override { return model_.dim(); }
  std::size_t state_size() const override { return model_.state_size(); }
  std::span<const double> grid() const override { return grid_; }

  void run(std::span<const cplx> initial, RandomSource& rng, const TrajectoryPlan::SampleFn& sample,
           std::vector<JumpEvent>* jumps) const override;

 private:
  struct Work {
    Work(const Model& m)
        : x(m.state_size()), x1(m.state_size()), xt(m.state_size()), y(m.state_size()),
          k1(m.state_size()), k2(m.state_size()), k3(m.state_size()), k4(m.state_size()),
          lam(m.channels()), weight(m.channels()), scratch(m.dim()) {}
    std::vector<cplx> x, x1, xt, y, k1, k2, k3, k4;
    std::vector<double> lam, weight;
    Scratch scratch;
  };

  double step(std::size_t k) const {
    return (grid_[k + 1] - grid_[k]) / static_cast<double>(opts_.substeps);
  }
  const Frame& lattice(std::size_t k, std::size_t j) const {
    return frames_[k * 2 * opts_.substeps + j];
  }

  double intensities(const Frame& f, const cplx* x, Work& w) const {
    return model_.intensities(f, x, w.lam.data(), w.weight.data(), w.scratch);
  }

  // Classical RK4 from `in` over length h; `out` must not alias `in`.
  void rk4(const Frame& f0, const Frame& fm, const Frame& f1, double h, const cplx* in,
           cplx* out, Work& w) const {
    const auto& k = simd::kernels();
    const std::size_t n = model_.state_size();
    model_.drift(f0, in, w.k1.data(), w.scratch);
    std::copy_n(in, n, w.y.data());
    k.caxpy(cplx(0.5 * h), w.k1.data(), w.y.data(), n);
    model_.drift(fm, w.y.data(), w.k2.data(), w.scratch);
    std::copy_n(in, n, w.y.data());
    k.caxpy(cplx(0.5 * h), w.k2.data(), w.y.data(), n);
    model_.drift(fm, w.y.data(), w.k3.data(), w.scratch);
    std::copy_n(in, n, w.y.data());
    k.caxpy(cplx(h), w.k3.data(), w.y.data(), n);
    model_.drift(f1, w.y.data(), w.k4.data(), w.scratch);
    std::copy_n(in, n, out);
    k.caxpy(cplx(h / 6.0), w.k1.data(), out, n);
    k.caxpy(cplx(h / 3.0), w.k2.data(), out, n);
    k.caxpy(cplx(h / 3.0), w.k3.data(), out, n);
    k.caxpy(cplx(h / 6.0), w.k4.data(), out, n);
    model_.after_flow(out);
  }

  // Picks a channel by cumulative inversion of w.lam (total `total` > 0),
  // applies the jump to x and logs it.
  void jump(const Frame& f, double t, double total, cplx* x, RandomSource& rng, Work& w,
            std::vector<JumpEvent>* jumps) const {
    const double v = rng.uniform() * total;
    std::size_t ch = 0;
    double cumulative = 0.0;
    std::size_t last_positive = 0;
    for (; ch < w.lam.size(); ++ch) {
      if (w.lam[ch] > 0.0) last_positive = ch;
      cumulative += w.lam[ch];
      if (v < cumulative) break;
    }
    if (ch == w.lam.size()) ch = last_positive;  // rounding at the top end
    if (jumps) jumps->push_back({t, ch, w.weight[ch]});
    model_.jump(f, ch, x, w.scratch);
  }

  Model model_;
  std::vector<double> grid_;
  SimulationOptions opts_;
  std::vector<Frame> frames_;
};

template <class Model>
void Engine<Model>::run(std::span<const cplx> initial, RandomSource& rng, const TrajectoryPlan::SampleFn& sample,
                        std::vector<JumpEvent>* jumps) const {
  if (initial.size() != model_.state_size())
    throw DimensionError("initial state has size " + std::to_string(initial.size()) +
                         ", expected " + std::to_string(model_.state_size()));
  model_.check_initial(initial.data());

  Work w(model_);
  std::copy(initial.begin(), initial.end(), w.x.begin());
  if (sample) sample(0, w.x);

  const bool bernoulli = opts_.method == JumpTimeMethod::bernoulli;
  double target = -std::log(rng.uniform());
  double acc = 0.0;
  double lam0 = intensities(lattice(0, 0), w.x.data(), w);

  for (std::size_t k = 0; k + 1 < grid_.size(); ++k) {
    const double h = step(k);
    const double tol = h * 1e-3;
    for (std::size_t s = 0; s < opts_.substeps; ++s) {
      const Frame& f0 = lattice(k, 2 * s);
      const Frame& fm = lattice(k, 2 * s + 1);
      const Frame& f1 = lattice(k, 2 * s + 2);
      const double t0 = grid_[k] + h * static_cast<double>(s);
      const double t1 = (s + 1 == opts_.substeps) ? grid_[k + 1] : t0 + h;

      rk4(f0, fm, f1, t1 - t0, w.x.data(), w.x1.data(), w);
      double lam1 = intensities(f1, w.x1.data(), w);

      if (bernoulli) {
        std::swap(w.x, w.x1);
        lam0 = lam1;
        if (lam1 > 0.0 && rng.uniform() < (t1 - t0) * lam1) {
          jump(f1, t1, lam1, w.x.data(), rng, w, jumps);
          lam0 = intensities(f1, w.x.data(), w);
        }
        continue;
      }

      double inc = 0.5 * (t1 - t0) * (lam0 + lam1);
      if (acc + inc < target) {
        acc += inc;
        std::swap(w.x, w.x1);
        lam0 = lam1;
        continue;
      }

      // One or more jumps inside (t0, t1]. w.x holds the state at ta, w.x1
      // the state flowed from ta to t1.
      Frame off;
      const Frame* fa = &f0;
      double ta = t0;
      double lam_a = lam0;
      double lam_b = lam1;
      while (true) {
        const double len = t1 - ta;
        // Invert acc + int_ta^{ta+x} (linear interpolation) = target.
        const double slope = (lam_b - lam_a) / len;
        double lo = 0.0, hi = len;
        while (hi - lo > tol) {
          const double mid = 0.5 * (lo + hi);
          const double value = acc + mid * lam_a + 0.5 * slope * mid * mid;
          (value < target ? lo : hi) = mid;
        }
        const double dx = 0.5 * (lo + hi);
        const double tau = ta + dx;

        Frame f_tau = model_.frame(tau);
        rk4(*fa, model_.frame(ta + 0.5 * dx), f_tau, dx, w.x.data(), w.xt.data(), w);
        const double lam_tau = intensities(f_tau, w.xt.data(), w);
        target = -std::log(rng.uniform());
        acc = 0.0;
        if (lam_tau > 0.0) jump(f_tau, tau, lam_tau, w.xt.data(), rng, w, jumps);
        std::swap(w.x, w.xt);
        off = std::move(f_tau);
        fa = &off;
        ta = tau;

        const double rest = t1 - ta;
        if (rest <= 0.0) {
          lam0 = intensities(f1, w.x.data(), w);
          break;
        }
        lam_a = intensities(*fa, w.x.data(), w);
        rk4(*fa, model_.frame(ta + 0.5 * rest), f1, rest, w.x.data(), w.x1.data(), w);
        lam_b = intensities(f1, w.x1.data(), w);
        inc = 0.5 * rest * (lam_a + lam_b);
        if (acc + inc < target) {
          acc += inc;
          std::swap(w.x, w.x1);
          lam0 = lam_b;
          break;
        }
      }
    }
    if (sample) sample(k + 1, w.x);
  }
}

}  // namespace

// TrajectoryPlan --------------------------------------------------------------

TrajectoryPlan TrajectoryPlan::standard(const LindbladSpec& spec, std::span<const double> grid,
                                        const SimulationOptions& opts) {
  return TrajectoryPlan(std::make_shared<Engine<StandardModel>>(StandardModel(spec), grid, opts));
}

TrajectoryPlan TrajectoryPlan::doubled(const GeneralSpec& spec, std::span<const double> grid,
                                       const SimulationOptions& opts) {
  return TrajectoryPlan(std::make_shared<Engine<DoubledModel>>(DoubledModel(spec), grid, opts));
}

Unraveling TrajectoryPlan::unraveling() const { return impl_->unraveling(); }
std::size_t TrajectoryPlan::hilbert_dim() const { return impl_->hilbert_dim(); }
std::size_t TrajectoryPlan::state_size() const { return impl_->state_size(); }
std::span<const double> TrajectoryPlan::grid() const { return impl_->grid(); }

void TrajectoryPlan::run(std::span<const cplx> initial, RandomSource& rng, const SampleFn& sample,
                         std::vector<JumpEvent>* jumps) const {
  impl_->run(initial, rng, sample, jumps);
}

// Single-state building blocks -----------------------------------------------

namespace {

void check_dim(std::size_t got, std::size_t want, const char* what) {
  if (got != want)
    throw DimensionError(std::string(what) + ": state has dimension " + std::to_string(got) +
                         ", expected " + std::to_string(want));
}

std::vector<cplx> flatten(const PairState& theta) {
  std::vector<cplx> x(theta.phi.span().begin(), theta.phi.span().end());
  x.insert(x.end(), theta.psi.span().begin(), theta.psi.span().end());
  return x;
}

PairState unflatten(std::span<const cplx> x) {
  const std::size_t n = x.size() / 2;
  return PairState(StateVector(std::vector<cplx>(x.begin(), x.begin() + n)),
                   StateVector(std::vector<cplx>(x.begin() + n, x.end())));
}

void check_pair(const GeneralSpec& spec, const PairState& theta, const char* what) {
  check_dim(theta.phi.dim(), spec.dim, what);
  check_dim(theta.psi.dim(), spec.dim, what);
}

}  // namespace

StateVector drift_standard(const LindbladSpec& spec, double t, const StateVector& psi) {
  const StandardModel model(spec);
  check_dim(psi.dim(), model.dim(), "drift_standard");
  StandardModel::Scratch s(model.dim());
  StateVector out(model.dim());
  model.drift(model.frame(t), psi.data(), out.data(), s);
  return out;
}

StateVector jump_standard(const LindbladSpec& spec, std::size_t channel, const StateVector& psi) {
  const StandardModel model(spec);
  check_dim(psi.dim(), model.dim(), "jump_standard");
  if (channel >= model.channels()) throw ConfigError("jump_standard: channel out of range");
  StandardModel::Scratch s(model.dim());
  StateVector out = psi;
  model.jump({}, channel, out.data(), s);
  return out;
}

std::vector<double> jump_intensity(const LindbladSpec& spec, double t, const StateVector& psi) {
  const StandardModel model(spec);
  check_dim(psi.dim(), model.dim(), "jump_intensity");
  StandardModel::Scratch s(model.dim());
  std::vector<double> lam(model.channels()), weight(model.channels());
  model.intensities(model.frame(t), psi.data(), lam.data(), weight.data(), s);
  return lam;
}

PairState drift_doubled(const GeneralSpec& spec, double t, const PairState& theta) {
  const DoubledModel model(spec);
  check_pair(spec, theta, "drift_doubled");
  DoubledModel::Scratch s(model.dim());
  const auto x = flatten(theta);
  std::vector<cplx> out(x.size());
  model.drift(model.frame(t), x.data(), out.data(), s);
  return unflatten(out);
}

PairState jump_doubled(const GeneralSpec& spec, std::size_t channel, double t,
                       const PairState& theta) {
  const DoubledModel model(spec);
  check_pair(spec, theta, "jump_doubled");
  if (channel >= model.channels()) throw ConfigError("jump_doubled: channel out of range");
  DoubledModel::Scratch s(model.dim());
  auto x = flatten(theta);
  model.jump(model.frame(t), channel, x.data(), s);
  return unflatten(x);
}

std::vector<double> jump_intensity(const GeneralSpec& spec, double t, const PairState& theta) {
  const DoubledModel model(spec);
  check_pair(spec, theta, "jump_intensity");
  DoubledModel::Scratch s(model.dim());
  const auto x = flatten(theta);
  std::vector<double> lam(model.channels()), weight(model.channels());
  model.intensities(model.frame(t), x.data(), lam.data(), weight.data(), s);
  return lam;
}

// Records ---------------------------------------------------------------------

StandardRecord simulate(const LindbladSpec& spec, const StateVector& psi0,
                        std::span<const double> grid, RandomSource& rng,
                        const SimulationOptions& opts) {
  const auto plan = TrajectoryPlan::standard(spec, grid, opts);
  StandardRecord rec;
  rec.seed = rng.seed();
  rec.times.assign(grid.begin(), grid.end());
  rec.states.reserve(grid.size());
  plan.run(
      psi0.span(), rng,
      [&rec](std::size_t, std::span<const cplx> x) {
        rec.states.emplace_back(std::vector<cplx>(x.begin(), x.end()));
      },
      &rec.jumps);
  return rec;
}

DoubledRecord simulate(const GeneralSpec& spec, const PairState& theta0,
                       std::span<const double> grid, RandomSource& rng,
                       const SimulationOptions& opts) {
  check_pair(spec, theta0, "simulate");
  const auto plan = TrajectoryPlan::doubled(spec, grid, opts);
  DoubledRecord rec;
  rec.seed = rng.seed();
  rec.times.assign(grid.begin(), grid.end());
  rec.states.reserve(grid.size());
  const auto x0 = flatten(theta0);
  plan.run(
      x0, rng,
      [&rec](std::size_t, std::span<const cplx> x) { rec.states.push_back(unflatten(x)); },
      &rec.jumps);
  return rec;
}

}  // namespace qjump
