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

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "qjump/jc_model.hpp"
#include "qjump/master_eq.hpp"

namespace qjump::cli {

enum class Command { rates, decay, simulate, validate };
enum class Mode { standard, doubled, ode, exact_density };

std::string_view to_string(Command c);
std::string_view to_string(Mode m);
std::string_view to_string(jc::Order o);

struct RunConfig {
  Command command = Command::rates;
  jc::JCParams params{1.0, 5.0, 0.0};
  jc::Order order = jc::Order::tcl4;
  Mode mode = Mode::ode;
  double t_max = 5.0;  ///< in 1/gamma0 when scaled
  std::size_t points = 101;
  std::size_t n_traj = 100000;
  std::uint64_t seed = 1;
  std::size_t substeps = 10;
  std::size_t workers = 1;
  std::string out;  ///< empty writes to stdout
  std::string preset;
  bool scaled = false;
  bool include_shift = true;
  bool deterministic_reduction = true;
  std::set<std::string> faults;  ///< validate only

  /// Throws ConfigError on out-of-range values or a mode the command does
  /// not accept.
  void validate() const;

  /// Simulated window in model time units.
  double horizon() const { return scaled ? t_max / params.gamma0 : t_max; }
  /// Factor taking model times to reported times (gamma0 when scaled).
  double time_unit() const { return scaled ? params.gamma0 : 1.0; }
  std::vector<double> grid() const { return uniform_grid(horizon(), points); }
  jc::ModelOptions model_options() const;
};

/// Named parameter bundles fig1..fig4.
struct Preset {
  std::string name;
  jc::JCParams params;
  bool scaled;
  double t_max;
  std::size_t points;
  jc::Order order;
  std::optional<Mode> simulate_mode;
  std::size_t n_traj;
};

const std::vector<Preset>& presets();
/// Throws ConfigError for an unknown name.
const Preset& find_preset(std::string_view name);

}  // namespace qjump::cli
