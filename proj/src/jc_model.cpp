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

#include "qjump/jc_model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qjump/errors.hpp"

namespace qjump::jc {

using cplx = std::complex<double>;

void JCParams::validate() const {
  if (!std::isfinite(gamma0) || !std::isfinite(lambda) || !std::isfinite(delta))
    throw ConfigError("JC parameters must be finite");
  if (!(gamma0 > 0.0)) throw ConfigError("gamma0 must be positive");
  if (!(lambda > 0.0)) throw ConfigError("lambda must be positive");
}

double JCParams::markov_rate() const {
  return gamma0 * lambda * lambda / (lambda * lambda + delta * delta);
}

double JCParams::fastest_scale() const { return std::max({lambda, std::abs(delta), gamma0}); }

double MemoryKernel::phi(double t) const {
  return p_.gamma0 * p_.lambda * std::exp(-p_.lambda * t) * std::cos(p_.delta * t);
}

double MemoryKernel::psi(double t) const {
  return p_.gamma0 * p_.lambda * std::exp(-p_.lambda * t) * std::sin(p_.delta * t);
}

cplx MemoryKernel::combined(double t) const {
  const double a = p_.gamma0 * p_.lambda * std::exp(-p_.lambda * t);
  return {a * std::cos(p_.delta * t), a * std::sin(p_.delta * t)};
}

MemoryKernel kernels(const JCParams& p) {
  p.validate();
  return MemoryKernel(p);
}

std::string_view to_string(Coefficient c) {
  switch (c) {
    case Coefficient::gamma2:
      return "gamma2";
    case Coefficient::gamma4:
      return "gamma4";
    case Coefficient::s2:
      return "s2";
    case Coefficient::s4:
      return "s4";
    case Coefficient::gamma_exact:
      return "gamma_exact";
    case Coefficient::s_exact:
      return "s_exact";
  }
  return "?";
}

namespace {

double gamma2_closed(const JCParams& p, double t) {
  const double r = p.delta / p.lambda;
  const double e = std::exp(-p.lambda * t);
  return p.markov_rate() * (1.0 - e * (std::cos(p.delta * t) - r * std::sin(p.delta * t)));
}

double s2_closed(const JCParams& p, double t) {
  const double r = p.delta / p.lambda;
  const double e = std::exp(-p.lambda * t);
  return p.markov_rate() * (r - e * (std::sin(p.delta * t) + r * std::cos(p.delta * t)));
}

double gamma4_resonant_closed(const JCParams& p, double t) {
  const double lt = p.lambda * t;
  const double e = std::exp(-lt);
  // sinh(lt) e^{-lt} written without overflow for large lt.
  const double sinh_e = 0.5 * (1.0 - e * e);
  return p.gamma0 * (1.0 - e + (p.gamma0 / p.lambda) * (sinh_e - lt * e));
}

double gamma4_detuned_closed(const JCParams& p, double t) {
  const double l = p.lambda, d = p.delta;
  const double r = d / l, r2 = r * r;
  const double lt = l * t, dt = d * t;
  const double e = std::exp(-lt);
  const double l2d2 = l * l + d * d;
  const double pref = p.gamma0 * p.gamma0 * std::pow(l, 5) / (2.0 * l2d2 * l2d2 * l2d2);
  // pref * e^{-lt} {...} with the e^{-lt} e^{lt} product folded to 1.
  const double growing = (1.0 - 3.0 * r2) * (1.0 - e * e * std::cos(2.0 * dt));
  const double decaying = -2.0 * (1.0 - r2 * r2) * lt * std::cos(dt) +
                          4.0 * (1.0 + r2) * dt * std::sin(dt) +
                          r * (3.0 - r2) * e * std::sin(2.0 * dt);
  return gamma2_closed(p, t) + pref * (growing + e * decaying);
}

}  // namespace

RateFunction gamma2(const JCParams& p) {
  p.validate();
  return {Coefficient::gamma2, [p](double t) { return gamma2_closed(p, t); }};
}

RateFunction s2(const JCParams& p) {
  p.validate();
  return {Coefficient::s2, [p](double t) { return s2_closed(p, t); }};
}

RateFunction gamma4_resonant(const JCParams& p) {
  p.validate();
  if (!p.resonant()) throw ConfigError("gamma4_resonant requires delta == 0");
  return {Coefficient::gamma4, [p](double t) { return gamma4_resonant_closed(p, t); }};
}

RateFunction gamma4_detuned(const JCParams& p) {
  p.validate();
  return {Coefficient::gamma4, [p](double t) { return gamma4_detuned_closed(p, t); }};
}

RateFunction gamma4(const JCParams& p) {
  return p.resonant() ? gamma4_resonant(p) : gamma4_detuned(p);
}

// ---------------------------------------------------------------------------

Tcl4Quadrature::Tcl4Quadrature(const JCParams& p, double horizon, quad::Resolution res)
    : p_(p),
      horizon_(horizon),
      res_(res),
      kernel_(kernels(p)),
      repeated_([k = MemoryKernel(p)](double s) { return k.combined(s); }, horizon,
                res.panels(p.lambda, horizon)) {
  if (!(horizon >= 0.0)) throw ConfigError("Tcl4Quadrature: horizon must be non-negative");
}

double Tcl4Quadrature::gamma2(double t) const { return repeated_.first(t).real(); }
double Tcl4Quadrature::s2(double t) const { return repeated_.first(t).imag(); }

Tcl4Quadrature::FourthOrderTerms Tcl4Quadrature::terms(double t) const {
  FourthOrderTerms r{};
  if (t <= 0.0) return r;
  // With u = t - t2 (a-terms) or u = t - t3 (b-terms), the two inner
  // integrals collapse onto the second antiderivative GG of the inner kernel:
  //   a[f,g](t) = int_0^t f(u) [GG_g(t) - GG_g(t-u) - GG_g(u)] du
  //   b[f,g](t) = int_0^t f(u) GG_g(u) du
  const cplx gg_t = repeated_.second(t);
  const std::size_t panels = res_.panels(p_.lambda, t);
  std::vector<double> x, w;
  quad::composite_nodes(0.0, t, panels, quad::gl8(), x, w);
  for (std::size_t m = 0; m < x.size(); ++m) {
    const double u = x[m];
    const cplx k = kernel_.combined(u);
    const cplx gg_u = repeated_.second(u);
    const cplx a_inner = gg_t - repeated_.second(t - u) - gg_u;
    const double fphi = w[m] * k.real(), fpsi = w[m] * k.imag();
    r.a_phi_phi += fphi * a_inner.real();
    r.a_psi_psi += fpsi * a_inner.imag();
    r.a_psi_phi += fpsi * a_inner.real();
    r.a_phi_psi += fphi * a_inner.imag();
    r.b_phi_phi += fphi * gg_u.real();
    r.b_psi_psi += fpsi * gg_u.imag();
    r.b_psi_phi += fpsi * gg_u.real();
    r.b_phi_psi += fphi * gg_u.imag();
  }
  return r;
}

namespace {
// Fourth-order corrections from the triple integrals. The rate bracket
// enters as 1/2 [Phi Phi - Psi Psi + Phi Phi - Psi Psi]; with this sign the
// result reproduces the closed forms and the weak-coupling expansion of the
// exact rate.
double gamma4_correction(const Tcl4Quadrature::FourthOrderTerms& r) {
  return 0.5 * (r.a_phi_phi - r.a_psi_psi + r.b_phi_phi - r.b_psi_psi);
}
double s4_correction(const Tcl4Quadrature::FourthOrderTerms& r) {
  return 0.5 * (r.a_psi_phi + r.a_phi_psi + r.b_psi_phi + r.b_phi_psi);
}
}  // namespace

double Tcl4Quadrature::gamma4(double t) const { return gamma2(t) + gamma4_correction(terms(t)); }

double Tcl4Quadrature::s4(double t) const {
  if (p_.resonant()) return 0.0;
  return s2(t) + s4_correction(terms(t));
}

double s4(const JCParams& p, double t, quad::Resolution res) {
  p.validate();
  if (t < 0.0) throw ConfigError("s4: t must be non-negative");
  if (p.resonant() || t == 0.0) return 0.0;
  const Tcl4Quadrature q(p, t, res);
  return s2_closed(p, t) + s4_correction(q.terms(t));
}

double gamma4_quadrature(const JCParams& p, double t, quad::Resolution res) {
  p.validate();
  if (t < 0.0) throw ConfigError("gamma4_quadrature: t must be non-negative");
  if (t == 0.0) return 0.0;
  const Tcl4Quadrature q(p, t, res);
  return q.gamma4(t);
}

// ---------------------------------------------------------------------------

ExactAmplitude::ExactAmplitude(const JCParams& p, double horizon) : p_(p) {
  p.validate();
  step_ = 1e-3 / p.fastest_scale();
  const auto n = static_cast<std::size_t>(std::ceil(std::max(horizon, 0.0) / step_)) + 1;
  table_.reserve(n + 1);
  table_.push_back({1.0, 0.0});
  for (std::size_t i = 1; i <= n; ++i) table_.push_back(advance(table_.back(), step_));
}

ExactAmplitude::Node ExactAmplitude::advance(Node n, double h) const {
  const double k = 0.5 * p_.gamma0 * p_.lambda;
  const cplx mu(p_.lambda, -p_.delta);
  auto rhs = [&](const Node& s) { return Node{-k * s.b, s.c - mu * s.b}; };
  const Node k1 = rhs(n);
  const Node k2 = rhs({n.c + 0.5 * h * k1.c, n.b + 0.5 * h * k1.b});
  const Node k3 = rhs({n.c + 0.5 * h * k2.c, n.b + 0.5 * h * k2.b});
  const Node k4 = rhs({n.c + h * k3.c, n.b + h * k3.b});
  return {n.c + (h / 6.0) * (k1.c + 2.0 * k2.c + 2.0 * k3.c + k4.c),
          n.b + (h / 6.0) * (k1.b + 2.0 * k2.b + 2.0 * k3.b + k4.b)};
}

ExactAmplitude::Node ExactAmplitude::at(double t) const {
  if (t < 0.0) throw ConfigError("ExactAmplitude: t must be non-negative");
  auto j = static_cast<std::size_t>(t / step_);
  Node n;
  if (j < table_.size()) {
    n = table_[j];
  } else {
    j = table_.size() - 1;
    n = table_.back();
    const auto extra = static_cast<std::size_t>((t - step_ * static_cast<double>(j)) / step_);
    for (std::size_t i = 0; i < extra; ++i) n = advance(n, step_);
    j += extra;
  }
  const double rest = t - step_ * static_cast<double>(j);
  return rest > 0.0 ? advance(n, rest) : n;
}

cplx ExactAmplitude::c1(double t) const { return at(t).c; }

cplx ExactAmplitude::c1dot(double t) const { return -0.5 * p_.gamma0 * p_.lambda * at(t).b; }

double c1_resonant_closed_form(const JCParams& p, double t) {
  const double l = p.lambda;
  const double disc = l * l - 2.0 * p.gamma0 * l;
  const double env = std::exp(-0.5 * l * t);
  if (disc > 0.0) {
    const double d = std::sqrt(disc);
    return env * (std::cosh(0.5 * d * t) + (l / d) * std::sinh(0.5 * d * t));
  }
  if (disc < 0.0) {
    const double w = std::sqrt(-disc);
    return env * (std::cos(0.5 * w * t) + (l / w) * std::sin(0.5 * w * t));
  }
  return env * (1.0 + 0.5 * l * t);
}

double gamma_exact_resonant_closed_form(const JCParams& p, double t) {
  const double l = p.lambda, g0 = p.gamma0;
  const double disc = l * l - 2.0 * g0 * l;
  if (disc > 0.0) {
    const double d = std::sqrt(disc);
    // Divide through by cosh to stay finite at large t.
    const double th = std::tanh(0.5 * d * t);
    return 2.0 * g0 * l * th / (d + l * th);
  }
  if (disc < 0.0) {
    const double w = std::sqrt(-disc);
    const double s = std::sin(0.5 * w * t), c = std::cos(0.5 * w * t);
    return 2.0 * g0 * l * s / (w * c + l * s);
  }
  return 2.0 * g0 * l * (0.5 * t) / (1.0 + 0.5 * l * t);
}

std::shared_ptr<const ExactAmplitude> exact_amplitude(const JCParams& p, double horizon) {
  return std::make_shared<const ExactAmplitude>(p, horizon);
}

ExactRates exact_rates(const JCParams& p, double horizon, double c1_floor) {
  auto amp = exact_amplitude(p, horizon);
  auto ratio = [amp, c1_floor](double t) {
    const cplx c = amp->c1(t);
    if (std::abs(c) < c1_floor) {
      std::ostringstream msg;
      msg << "exact rate is singular: |c1(" << t << ")| = " << std::abs(c) << " below floor "
          << c1_floor;
      throw NumericError(msg.str());
    }
    return amp->c1dot(t) / c;
  };
  return {RateFunction(Coefficient::gamma_exact, [ratio](double t) { return -2.0 * ratio(t).real(); }),
          RateFunction(Coefficient::s_exact, [ratio](double t) { return -2.0 * ratio(t).imag(); })};
}

}  // namespace qjump::jc
