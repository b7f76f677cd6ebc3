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

#pragma once

// Damped Jaynes-Cummings model with a Lorentzian reservoir: memory kernels,
// second- and fourth-order TCL decay rates and shifts, and the exact
// excited-state amplitude.
//
// Every coefficient has two routes: a closed form and a numerical
// evaluation built only from the kernels Phi, Psi.

#include <complex>
#include <functional>
#include <memory>
#include <string_view>
#include <vector>

#include "qjump/quadrature.hpp"

namespace qjump::jc {

struct JCParams {
  double gamma0 = 1.0;  ///< Markovian resonant decay scale, 1/time
  double lambda = 5.0;  ///< inverse reservoir correlation time, 1/time
  double delta = 0.0;   ///< detuning omega_S - omega_0, 1/time

  /// Throws ConfigError unless gamma0 > 0 and lambda > 0 (all finite).
  void validate() const;
  bool resonant() const { return delta == 0.0; }
  /// gamma0 lambda^2 / (lambda^2 + delta^2), the long-time second-order rate.
  double markov_rate() const;
  /// Largest of lambda, |delta|, gamma0.
  double fastest_scale() const;
};

/// Reservoir correlation kernels Phi(t) = g0 l e^{-l t} cos(D t) and
/// Psi(t) = g0 l e^{-l t} sin(D t).
class MemoryKernel {
 public:
  explicit MemoryKernel(const JCParams& p) : p_(p) {}
  double phi(double t) const;
  double psi(double t) const;
  /// Phi(t) + i Psi(t).
  std::complex<double> combined(double t) const;

 private:
  JCParams p_;
};

MemoryKernel kernels(const JCParams& p);

enum class Coefficient { gamma2, gamma4, s2, s4, gamma_exact, s_exact };
std::string_view to_string(Coefficient c);

/// A scalar coefficient of time with a tag naming what it represents.
class RateFunction {
 public:
  RateFunction(Coefficient tag, std::function<double(double)> f) : tag_(tag), f_(std::move(f)) {}
  double operator()(double t) const { return f_(t); }
  Coefficient tag() const { return tag_; }
  const std::function<double(double)>& function() const { return f_; }

 private:
  Coefficient tag_;
  std::function<double(double)> f_;
};

RateFunction gamma2(const JCParams& p);
RateFunction s2(const JCParams& p);
/// Resonant closed form; throws ConfigError if p.delta != 0.
RateFunction gamma4_resonant(const JCParams& p);
/// Closed form valid for any detuning, including zero.
RateFunction gamma4_detuned(const JCParams& p);
/// gamma4_resonant on resonance, gamma4_detuned otherwise.
RateFunction gamma4(const JCParams& p);

/// Numerical fourth-order coefficients from the kernels alone. The triple
/// time-ordered integrals are reduced to single integrals over tabulated
/// first and second antiderivatives of the kernels, every level on
/// Gauss-Legendre panels sized by `Resolution`. Build once per horizon,
/// then evaluate at any t in [0, horizon]; evaluation is thread-safe.
class Tcl4Quadrature {
 public:
  Tcl4Quadrature(const JCParams& p, double horizon, quad::Resolution res = {});

  double gamma2(double t) const;
  double s2(double t) const;
  double gamma4(double t) const;
  double s4(double t) const;
  double horizon() const { return horizon_; }

  /// The ordered triple integrals
  ///   inner_a[f,g](t) = int f(t - t2) g(t1 - t3),
  ///   inner_b[f,g](t) = int f(t - t3) g(t1 - t2)
  /// over 0 < t3 < t2 < t1 < t, for f, g in {Phi, Psi}.
  struct FourthOrderTerms {
    double a_phi_phi, a_psi_psi, a_psi_phi, a_phi_psi;
    double b_phi_phi, b_psi_psi, b_psi_phi, b_phi_psi;
  };
  FourthOrderTerms terms(double t) const;

 private:
  JCParams p_;
  double horizon_;
  quad::Resolution res_;
  MemoryKernel kernel_;
  quad::RepeatedIntegral repeated_;
};

/// Fourth-order shift: closed-form second-order part plus the numerically
/// evaluated fourth-order triple integral. Exactly 0 on resonance.
double s4(const JCParams& p, double t, quad::Resolution res = {});
/// Fourth-order rate evaluated numerically from the kernels.
double gamma4_quadrature(const JCParams& p, double t, quad::Resolution res = {});

/// Exact excited-state amplitude c1(t) for the single-excitation sector.
/// Solves c1' = -(g0 l / 2) b, b' = c1 - (l - i D) b, c1(0) = 1, b(0) = 0 by
/// classical RK4 on a uniform table (step 1e-3 / fastest_scale) up to the
/// horizon, then completes any t with one RK4 step from the nearest table
/// node. Arguments beyond the horizon are integrated on the fly.
class ExactAmplitude {
 public:
  ExactAmplitude(const JCParams& p, double horizon);

  std::complex<double> c1(double t) const;
  std::complex<double> c1dot(double t) const;
  const JCParams& params() const { return p_; }

 private:
  struct Node {
    std::complex<double> c, b;
  };
  Node advance(Node n, double h) const;
  Node at(double t) const;

  JCParams p_;
  double step_;
  std::vector<Node> table_;
};

/// Closed form on resonance: e^{-l t/2}[cosh(d t/2) + (l/d) sinh(d t/2)],
/// d = sqrt(l^2 - 2 g0 l), continued analytically (cos/sin) when l < 2 g0.
double c1_resonant_closed_form(const JCParams& p, double t);
/// Closed form of the exact resonant rate.
double gamma_exact_resonant_closed_form(const JCParams& p, double t);

std::shared_ptr<const ExactAmplitude> exact_amplitude(const JCParams& p, double horizon);

struct ExactRates {
  RateFunction gamma;
  RateFunction shift;
};

/// gamma = -2 Re(c1'/c1), S = -2 Im(c1'/c1). Evaluation throws NumericError
/// when |c1(t)| < c1_floor.
ExactRates exact_rates(const JCParams& p, double horizon, double c1_floor = 1e-12);

}  // namespace qjump::jc
