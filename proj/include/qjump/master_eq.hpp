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

// Time-local master equations
//
//   Lindblad form:  d rho/dt = -i[H + 1/2 sum S_i L_i^+ L_i, rho]
//                              + sum gamma_i (L_i rho L_i^+ - 1/2 {L_i^+ L_i, rho})
//   general form:   d rho/dt = A rho + rho B^+ + sum C_i rho D_i^+
//
// with the maps between them, a fixed-step RK4 integrator, and the exact
// single-excitation density matrix of the damped Jaynes-Cummings model.

#include <complex>
#include <functional>
#include <span>
#include <vector>

#include "qjump/jc_model.hpp"
#include "qjump/linalg.hpp"

namespace qjump {

using ScalarFunction = std::function<double(double)>;
using OperatorFunction = std::function<Operator(double)>;

/// Wraps a fixed operator as a function of time.
OperatorFunction constant(Operator op);

struct LindbladChannel {
  Operator jump;
  ScalarFunction rate;
  ScalarFunction shift;  ///< empty means S_i == 0
};

struct LindbladSpec {
  OperatorFunction hamiltonian;  ///< empty means H == 0
  std::vector<LindbladChannel> channels;
  std::size_t dim = 0;

  /// Throws DimensionError unless every jump operator has dimension `dim`.
  void validate() const;
  Operator hamiltonian_at(double t) const;
  double shift_at(std::size_t i, double t) const;
  /// -iH - 1/2 sum (gamma_k + i S_k) L_k^+ L_k at time t.
  Operator effective_generator(double t) const;
};

struct GeneralPair {
  OperatorFunction c;
  OperatorFunction d;
};

struct GeneralSpec {
  OperatorFunction a;
  OperatorFunction b;
  std::vector<GeneralPair> pairs;
  std::size_t dim = 0;
};

/// A = B = -iH - 1/2 sum (gamma + iS) L^+L and C_i = D_i = sqrt(gamma_i) L_i.
/// The returned C_i/D_i throw NegativeRateError when evaluated at a time
/// where gamma_i < 0; use split_rate_general there.
GeneralSpec lindblad_to_general(const LindbladSpec& spec);

/// Same A = B, with C_i = gamma_i L_i and D_i = L_i. Valid for any sign of
/// the rates.
GeneralSpec split_rate_general(const LindbladSpec& spec);

DensityMatrix general_rhs(const GeneralSpec& spec, double t, const DensityMatrix& rho);
DensityMatrix lindblad_rhs(const LindbladSpec& spec, double t, const DensityMatrix& rho);

struct DensityTrajectory {
  std::vector<double> times;
  std::vector<DensityMatrix> states;
};

/// Classical RK4 with step (grid spacing)/substeps; operators are evaluated
/// at t, t + h/2 and t + h of every step.
DensityTrajectory integrate(const GeneralSpec& spec, const DensityMatrix& rho0,
                            std::span<const double> grid, std::size_t substeps);

/// Uniform grid of n points on [0, t_max].
std::vector<double> uniform_grid(double t_max, std::size_t n);

namespace jc {

enum class Order { tcl2, tcl4, exact };

struct ModelOptions {
  /// Include -(i/2) S(t) sigma+ sigma- in the generator. Populations do not
  /// depend on it.
  bool include_shift = true;
  /// Time window the coefficients must cover (tables are sized from it).
  double horizon = 10.0;
  quad::Resolution resolution = {};
  /// Fourth-order shift: sample the quadrature every 1/(32 fastest_scale)
  /// on [0, horizon] and interpolate with a cubic B-spline instead of
  /// evaluating the quadrature at every call.
  bool tabulate_shift = true;
};

/// Interaction-picture TCL master equation of the damped JC model at the
/// given order: H = 0, one channel L = sigma-, rate/shift from jc-model.
/// Order exact uses the exact rates.
LindbladSpec lindblad_spec(const JCParams& p, Order order, const ModelOptions& opts = {});

/// rho11 = |c1|^2, rho10 = c1 c0*, rho00 = 1 - |c1|^2, where c1(t) is the
/// exact amplitude scaled by c1(0) = sqrt(1 - |c0|^2).
DensityTrajectory exact_density(const JCParams& p, std::complex<double> c0,
                                std::span<const double> grid);

}  // namespace jc

}  // namespace qjump
