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

#include "qjump/cli/config.hpp"

#include <cmath>

#include "qjump/errors.hpp"

namespace qjump::cli {

std::string_view to_string(Command c) {
  switch (c) {
    case Command::rates: return "rates";
    case Command::decay: return "decay";
    case Command::simulate: return "simulate";
    case Command::validate: return "validate";
  }
  return "?";
}

std::string_view to_string(Mode m) {
  switch (m) {
    case Mode::standard: return "standard";
    case Mode::doubled: return "doubled";
    case Mode::ode: return "ode";
    case Mode::exact_density: return "exact-density";
  }
  return "?";
}

std::string_view to_string(jc::Order o) {
  switch (o) {
    case jc::Order::tcl2: return "tcl2";
    case jc::Order::tcl4: return "tcl4";
    case jc::Order::exact: return "exact";
  }
  return "?";
}

void RunConfig::validate() const {
  params.validate();
  if (!(t_max > 0.0) || !std::isfinite(t_max)) throw ConfigError("tmax must be positive");
  if (points < 2) throw ConfigError("points must be >= 2");
  if (n_traj < 1) throw ConfigError("ntraj must be >= 1");
  if (substeps < 1) throw ConfigError("substeps must be >= 1");
  if (command == Command::decay && mode != Mode::ode && mode != Mode::exact_density)
    throw ConfigError("decay needs --mode ode or exact-density");
  if (command == Command::simulate && mode != Mode::standard && mode != Mode::doubled)
    throw ConfigError("simulate needs --mode standard or doubled");
}

jc::ModelOptions RunConfig::model_options() const {
  jc::ModelOptions opts;
  opts.include_shift = include_shift;
  opts.horizon = horizon();
  return opts;
}

const std::vector<Preset>& presets() {
  static const std::vector<Preset> all{
      {"fig1", {1.0, 5.0, 0.0}, true, 5.0, 101, jc::Order::tcl4, std::nullopt, 100000},
      {"fig2", {1.0, 5.0, 0.0}, true, 3.0, 61, jc::Order::tcl4, Mode::standard, 100000},
      {"fig3", {65.0, 19.5, 156.0}, false, 1.0, 401, jc::Order::tcl4, std::nullopt, 100000},
      {"fig4", {65.0, 19.5, 156.0}, false, 0.5, 51, jc::Order::tcl4, Mode::doubled, 100000},
  };
  return all;
}

const Preset& find_preset(std::string_view name) {
  for (const auto& p : presets())
    if (p.name == name) return p;
  throw ConfigError("unknown preset '" + std::string(name) + "' (fig1, fig2, fig3, fig4)");
}

}  // namespace qjump::cli
