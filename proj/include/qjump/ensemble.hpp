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

// Trajectory ensembles and their density-matrix estimators
//   standard:  rho(t) = E |psi><psi|
//   doubled:   rho(t) = E |phi><psi|
// with per-entry standard errors.

#include <cstdint>
#include <optional>
#include <vector>

#include "qjump/linalg.hpp"
#include "qjump/master_eq.hpp"
#include "qjump/pdp.hpp"

namespace qjump {

struct EnsembleConfig {
  std::size_t n_traj = 1;
  std::uint64_t master_seed = 0;
  std::vector<double> grid;
  std::size_t substeps = 10;
  Unraveling mode = Unraveling::standard;
  /// Merge chunk statistics in a fixed pairwise tree over chunk index, so
  /// the estimate does not depend on the number of workers.
  bool deterministic_reduction = true;
  /// Worker threads; 0 picks the hardware concurrency.
  std::size_t workers = 1;
  std::size_t chunk = 1024;
  JumpTimeMethod method = JumpTimeMethod::integrated_intensity;
  bool record_jumps = true;

  void validate() const;
};

struct TrajectoryJump {
  std::size_t trajectory;
  JumpEvent event;
};

struct EnsembleEstimate {
  std::vector<double> times;
  std::vector<DensityMatrix> rho_mean;
  /// Standard errors of the real and imaginary parts, row-major dim x dim per
  /// grid point: sample standard deviation / sqrt(n_traj).
  std::vector<std::vector<double>> std_error_re;
  std::vector<std::vector<double>> std_error_im;
  std::size_t n_traj = 0;
  Unraveling mode = Unraveling::standard;
  /// The estimate before hermitize(), if it was applied.
  std::optional<std::vector<DensityMatrix>> raw_mean;
  /// Every jump, ordered by trajectory index then time.
  std::vector<TrajectoryJump> jumps;
};

/// Core driver: `initial` in the plan's flat layout.
EnsembleEstimate run_ensemble(const TrajectoryPlan& plan, std::span<const cplx> initial,
                              const EnsembleConfig& cfg);

/// Standard mode uses the spec directly; doubled mode goes through
/// split_rate_general, which is valid for rates of either sign.
EnsembleEstimate run_ensemble(const LindbladSpec& spec, const StateVector& psi0,
                              const EnsembleConfig& cfg);

/// Doubled mode only, theta0 = (psi0, psi0).
EnsembleEstimate run_ensemble(const GeneralSpec& spec, const StateVector& psi0,
                              const EnsembleConfig& cfg);

/// Replaces every rho_mean with (rho + rho^+)/2 and keeps the original in
/// raw_mean.
EnsembleEstimate hermitize(EnsembleEstimate est);

struct PopulationSeries {
  std::vector<double> times;
  std::vector<double> value;
  std::vector<double> std_error;
  /// value - exp(-markov_rate t).
  std::vector<double> markov_deviation;
};

/// Real part of diagonal entry `index` with its standard error.
PopulationSeries population(const EnsembleEstimate& est, std::size_t index,
                            double markov_rate = 1.0);

}  // namespace qjump
