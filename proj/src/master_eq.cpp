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

#include "qjump/master_eq.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <optional>
#include <sstream>

#include <boost/math/interpolators/cardinal_cubic_b_spline.hpp>

#include "qjump/errors.hpp"

namespace qjump {

OperatorFunction constant(Operator op) {
  return [op = std::move(op)](double) { return op; };
}

void LindbladSpec::validate() const {
  for (std::size_t i = 0; i < channels.size(); ++i) {
    if (channels[i].jump.dim() != dim)
      throw DimensionError("LindbladSpec: channel " + std::to_string(i) + " has dimension " +
                           std::to_string(channels[i].jump.dim()) + ", expected " +
                           std::to_string(dim));
    if (!channels[i].rate) throw ConfigError("LindbladSpec: channel without a rate function");
  }
}

Operator LindbladSpec::hamiltonian_at(double t) const {
  if (!hamiltonian) return Operator::zero(dim);
  Operator h = hamiltonian(t);
  if (h.dim() != dim) throw DimensionError("LindbladSpec: Hamiltonian dimension mismatch");
  return h;
}

double LindbladSpec::shift_at(std::size_t i, double t) const {
  const auto& s = channels[i].shift;
  return s ? s(t) : 0.0;
}

Operator LindbladSpec::effective_generator(double t) const {
  Operator gen = cplx(0.0, -1.0) * hamiltonian_at(t);
  for (std::size_t i = 0; i < channels.size(); ++i) {
    const auto& ch = channels[i];
    const cplx coeff(-0.5 * ch.rate(t), -0.5 * shift_at(i, t));
    gen += coeff * (ch.jump.adjoint() * ch.jump);
  }
  return gen;
}

namespace {

GeneralSpec with_shared_drift(const LindbladSpec& spec) {
  spec.validate();
  GeneralSpec g;
  g.dim = spec.dim;
  auto shared = std::make_shared<const LindbladSpec>(spec);
  g.a = [shared](double t) { return shared->effective_generator(t); };
  g.b = g.a;
  return g;
}

}  // namespace

GeneralSpec lindblad_to_general(const LindbladSpec& spec) {
  GeneralSpec g = with_shared_drift(spec);
  for (std::size_t i = 0; i < spec.channels.size(); ++i) {
    auto ch = std::make_shared<const LindbladChannel>(spec.channels[i]);
    auto c = [ch, i](double t) {
      const double rate = ch->rate(t);
      if (rate < 0.0) {
        std::ostringstream msg;
        msg << "channel " << i << " has negative rate " << rate << " at t=" << t
            << "; sqrt(gamma) splitting is undefined, use the split-rate (doubled) form";
        throw NegativeRateError(msg.str());
      }
      return std::sqrt(rate) * ch->jump;
    };
    g.pairs.push_back({c, c});
  }
  return g;
}

GeneralSpec split_rate_general(const LindbladSpec& spec) {
  GeneralSpec g = with_shared_drift(spec);
  for (const auto& channel : spec.channels) {
    auto ch = std::make_shared<const LindbladChannel>(channel);
    g.pairs.push_back({[ch](double t) { return ch->rate(t) * ch->jump; }, constant(ch->jump)});
  }
  return g;
}

DensityMatrix general_rhs(const GeneralSpec& spec, double t, const DensityMatrix& rho) {
  if (rho.dim() != spec.dim) throw DimensionError("general_rhs: density matrix dimension mismatch");
  DensityMatrix out = spec.a(t) * rho;
  out += rho * spec.b(t).adjoint();
  for (const auto& pair : spec.pairs) out += (pair.c(t) * rho) * pair.d(t).adjoint();
  return out;
}

DensityMatrix lindblad_rhs(const LindbladSpec& spec, double t, const DensityMatrix& rho) {
  spec.validate();
  if (rho.dim() != spec.dim) throw DimensionError("lindblad_rhs: density matrix dimension mismatch");
  Operator h = spec.hamiltonian_at(t);
  for (std::size_t i = 0; i < spec.channels.size(); ++i) {
    const auto& l = spec.channels[i].jump;
    h += cplx(0.5 * spec.shift_at(i, t)) * (l.adjoint() * l);
  }
  DensityMatrix out = cplx(0.0, -1.0) * (h * rho - rho * h);
  for (const auto& ch : spec.channels) {
    const double g = ch.rate(t);
    const Operator ll = ch.jump.adjoint() * ch.jump;
    out += cplx(g) * ((ch.jump * rho) * ch.jump.adjoint());
    out += cplx(-0.5 * g) * (ll * rho + rho * ll);
  }
  return out;
}

std::vector<double> uniform_grid(double t_max, std::size_t n) {
  if (n < 2) throw ConfigError("grid needs at least 2 points");
  if (!(t_max > 0.0)) throw ConfigError("grid t_max must be positive");
  std::vector<double> g(n);
  for (std::size_t i = 0; i < n; ++i)
    g[i] = t_max * static_cast<double>(i) / static_cast<double>(n - 1);
  return g;
}

namespace {

void check_grid(std::span<const double> grid) {
  if (grid.empty()) throw ConfigError("time grid is empty");
  for (std::size_t i = 1; i < grid.size(); ++i)
    if (!(grid[i] > grid[i - 1])) throw ConfigError("time grid must be strictly increasing");
}

// Generator evaluated once per stage time.
struct Frame {
  Operator a, b_adj;
  std::vector<Operator> c, d_adj;
};

Frame frame_at(const GeneralSpec& spec, double t) {
  Frame f{spec.a(t), spec.b(t).adjoint(), {}, {}};
  for (const auto& p : spec.pairs) {
    f.c.push_back(p.c(t));
    f.d_adj.push_back(p.d(t).adjoint());
  }
  return f;
}

DensityMatrix apply_frame(const Frame& f, const DensityMatrix& rho) {
  DensityMatrix out = f.a * rho;
  out += rho * f.b_adj;
  for (std::size_t i = 0; i < f.c.size(); ++i) out += (f.c[i] * rho) * f.d_adj[i];
  return out;
}

}  // namespace

DensityTrajectory integrate(const GeneralSpec& spec, const DensityMatrix& rho0,
                            std::span<const double> grid, std::size_t substeps) {
  check_grid(grid);
  if (substeps == 0) throw ConfigError("integrate: substeps must be >= 1");
  if (rho0.dim() != spec.dim) throw DimensionError("integrate: initial state dimension mismatch");

  DensityTrajectory out;
  out.times.assign(grid.begin(), grid.end());
  out.states.reserve(grid.size());
  out.states.push_back(rho0);

  DensityMatrix rho = rho0;
  std::optional<Frame> start;
  for (std::size_t k = 0; k + 1 < grid.size(); ++k) {
    const double h = (grid[k + 1] - grid[k]) / static_cast<double>(substeps);
    for (std::size_t s = 0; s < substeps; ++s) {
      const double t = grid[k] + h * static_cast<double>(s);
      const double t_end = (s + 1 == substeps) ? grid[k + 1] : t + h;
      if (!start) start = frame_at(spec, t);
      const Frame mid = frame_at(spec, t + 0.5 * h);
      Frame end = frame_at(spec, t_end);

      const DensityMatrix k1 = apply_frame(*start, rho);
      const DensityMatrix k2 = apply_frame(mid, rho + cplx(0.5 * h) * k1);
      const DensityMatrix k3 = apply_frame(mid, rho + cplx(0.5 * h) * k2);
      const DensityMatrix k4 = apply_frame(end, rho + cplx(h) * k3);
      rho += cplx(h / 6.0) * (k1 + cplx(2.0) * k2 + cplx(2.0) * k3 + k4);
      start = std::move(end);
    }
    out.states.push_back(rho);
  }
  return out;
}

namespace jc {

namespace {

ScalarFunction tabulated(double horizon, double max_step, const std::function<double(double)>& f) {
  const auto n = static_cast<std::size_t>(std::ceil(horizon / max_step)) + 1;
  const std::size_t nodes = std::max<std::size_t>(n, 8);
  const double step = horizon / static_cast<double>(nodes - 1);
  std::vector<double> values(nodes);
  for (std::size_t i = 0; i < nodes; ++i) values[i] = f(step * static_cast<double>(i));
  auto spline = std::make_shared<const boost::math::interpolators::cardinal_cubic_b_spline<double>>(
      values.begin(), values.end(), 0.0, step);
  return [spline, f, horizon](double t) { return t <= horizon ? (*spline)(t) : f(t); };
}

}  // namespace

LindbladSpec lindblad_spec(const JCParams& p, Order order, const ModelOptions& opts) {
  p.validate();
  LindbladChannel ch;
  ch.jump = two_level::sigma_minus();
  switch (order) {
    case Order::tcl2:
      ch.rate = gamma2(p).function();
      if (opts.include_shift && !p.resonant()) ch.shift = s2(p).function();
      break;
    case Order::tcl4:
      ch.rate = gamma4(p).function();
      if (opts.include_shift && !p.resonant()) {
        auto q = std::make_shared<const Tcl4Quadrature>(p, opts.horizon, opts.resolution);
        if (opts.tabulate_shift)
          ch.shift = tabulated(opts.horizon, 1.0 / (32.0 * p.fastest_scale()),
                               [q](double t) { return q->s4(t); });
        else
          ch.shift = [q](double t) { return q->s4(t); };
      }
      break;
    case Order::exact: {
      auto rates = exact_rates(p, opts.horizon);
      ch.rate = rates.gamma.function();
      if (opts.include_shift && !p.resonant()) ch.shift = rates.shift.function();
      break;
    }
  }
  LindbladSpec spec;
  spec.dim = 2;
  spec.channels.push_back(std::move(ch));
  return spec;
}

DensityTrajectory exact_density(const JCParams& p, std::complex<double> c0,
                                std::span<const double> grid) {
  p.validate();
  check_grid(grid);
  const double c0_sq = std::norm(c0);
  if (c0_sq > 1.0 + 1e-12) throw ConfigError("exact_density: |c0| must not exceed 1");
  const double c1_init = std::sqrt(std::max(0.0, 1.0 - c0_sq));
  const ExactAmplitude amp(p, grid.back());

  DensityTrajectory out;
  out.times.assign(grid.begin(), grid.end());
  for (double t : grid) {
    const cplx c1 = c1_init * amp.c1(t);
    DensityMatrix rho(2);
    rho(0, 0) = std::norm(c1);
    rho(0, 1) = c1 * std::conj(c0);
    rho(1, 0) = std::conj(rho(0, 1));
    rho(1, 1) = 1.0 - std::norm(c1);
    out.states.push_back(rho);
  }
  return out;
}

}  // namespace jc

}  // namespace qjump
