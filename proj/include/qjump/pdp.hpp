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

// Piecewise-deterministic jump processes whose covariance reproduces a
// master equation.
//
// Standard unraveling (Lindblad form, non-negative rates), state psi in H:
//   deterministic flow  d psi/dt = A(t) psi + 1/2 sum_i gamma_i |L_i psi|^2 psi
//   jumps               psi -> L_i psi / |L_i psi|  at intensity gamma_i |L_i psi|^2
// with A = -iH - 1/2 sum (gamma + iS) L^+L.
//
// Doubled unraveling (general time-local form), theta = (phi, psi) in H + H:
//   flow   d theta/dt = [F(t) + 1/2 sum_i |J_i theta|^2/|theta|^2] theta
//   jumps  theta -> (|theta| / |J_i theta|) J_i theta  at intensity |J_i theta|^2/|theta|^2
// with F = diag(A, B), J_i = diag(C_i, D_i).
//
// Intensities inside the flows are taken relative to the current squared
// norm (|L psi|^2/|psi|^2), which equals the unit-norm expressions above and
// makes both flows homogeneous of degree one.

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "qjump/linalg.hpp"
#include "qjump/master_eq.hpp"
#include "qjump/random.hpp"

namespace qjump {

struct JumpEvent {
  double time;
  std::size_t channel;
  /// |L_i psi|^2 (standard) or |J_i theta|^2/|theta|^2 (doubled) just before
  /// the jump.
  double weight;
};

template <class State>
struct TrajectoryRecord {
  std::vector<double> times;
  std::vector<State> states;
  std::vector<JumpEvent> jumps;
  std::uint64_t seed = 0;
};

using StandardRecord = TrajectoryRecord<StateVector>;
using DoubledRecord = TrajectoryRecord<PairState>;

enum class JumpTimeMethod {
  /// Integrate the total intensity and jump where it crosses -ln u.
  integrated_intensity,
  /// Per-substep coin flip with probability h * intensity (first order in h).
  bernoulli,
};

struct SimulationOptions {
  std::size_t substeps = 10;  ///< RK4 steps per grid interval
  JumpTimeMethod method = JumpTimeMethod::integrated_intensity;
};

// Single-state building blocks ------------------------------------------------

StateVector drift_standard(const LindbladSpec& spec, double t, const StateVector& psi);
/// Throws NumericError if |L_i psi| == 0.
StateVector jump_standard(const LindbladSpec& spec, std::size_t channel, const StateVector& psi);
/// gamma_i(t) |L_i psi|^2 / |psi|^2; throws NegativeRateError on gamma_i(t) < 0.
std::vector<double> jump_intensity(const LindbladSpec& spec, double t, const StateVector& psi);

PairState drift_doubled(const GeneralSpec& spec, double t, const PairState& theta);
/// Throws NumericError if |J_i theta| == 0.
PairState jump_doubled(const GeneralSpec& spec, std::size_t channel, double t, const PairState& theta);
/// |J_i theta|^2 / |theta|^2, non-negative for any sign of the rates.
std::vector<double> jump_intensity(const GeneralSpec& spec, double t, const PairState& theta);

// Trajectories ---------------------------------------------------------------

enum class Unraveling { standard, doubled };

/// Coefficients of one master equation evaluated on the RK4 lattice of a
/// time grid (substep boundaries and midpoints), shared read-only by any
/// number of trajectories.
class TrajectoryPlan {
 public:
  /// Throws NegativeRateError if some rate is negative on the lattice.
  static TrajectoryPlan standard(const LindbladSpec& spec, std::span<const double> grid,
                                 const SimulationOptions& opts = {});
  static TrajectoryPlan doubled(const GeneralSpec& spec, std::span<const double> grid,
                                const SimulationOptions& opts = {});

  Unraveling unraveling() const;
  std::size_t hilbert_dim() const;
  /// Length of the flat state: dim (standard) or 2 dim (phi then psi).
  std::size_t state_size() const;
  std::span<const double> grid() const;

  using SampleFn = std::function<void(std::size_t grid_index, std::span<const cplx> state)>;

  /// Propagates one trajectory from `initial` (flat layout), calling `sample`
  /// at every grid point including the first, and appending jumps if
  /// `jumps` is non-null.
  void run(std::span<const cplx> initial, RandomSource& rng, const SampleFn& sample,
           std::vector<JumpEvent>* jumps) const;

  class Impl;

 private:
  explicit TrajectoryPlan(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
};

StandardRecord simulate(const LindbladSpec& spec, const StateVector& psi0,
                        std::span<const double> grid, RandomSource& rng,
                        const SimulationOptions& opts = {});

/// theta0 = (psi0, psi0) represents the pure initial state |psi0><psi0|.
DoubledRecord simulate(const GeneralSpec& spec, const PairState& theta0,
                       std::span<const double> grid, RandomSource& rng,
                       const SimulationOptions& opts = {});

}  // namespace qjump
