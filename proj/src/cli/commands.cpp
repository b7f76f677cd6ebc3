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

#include "qjump/cli/commands.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "qjump/cli/validation.hpp"
#include "qjump/ensemble.hpp"
#include "qjump/errors.hpp"

namespace qjump::cli {

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

double to_real(const std::string& key, const std::string& v) {
  double out = 0.0;
  const auto [end, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || end != v.data() + v.size() || !std::isfinite(out))
    throw ConfigError(key + ": expected a number, got '" + v + "'");
  return out;
}

std::uint64_t to_count(const std::string& key, const std::string& v) {
  std::uint64_t out = 0;
  const auto [end, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || end != v.data() + v.size())
    throw ConfigError(key + ": expected a non-negative integer, got '" + v + "'");
  return out;
}

bool to_switch(const std::string& key, const std::string& v) {
  if (v == "on" || v == "true" || v == "1") return true;
  if (v == "off" || v == "false" || v == "0") return false;
  throw ConfigError(key + ": expected on or off, got '" + v + "'");
}

jc::Order to_order(const std::string& v) {
  if (v == "tcl2") return jc::Order::tcl2;
  if (v == "tcl4") return jc::Order::tcl4;
  if (v == "exact") return jc::Order::exact;
  throw ConfigError("order: expected tcl2, tcl4 or exact, got '" + v + "'");
}

Mode to_mode(const std::string& v) {
  for (Mode m : {Mode::standard, Mode::doubled, Mode::ode, Mode::exact_density})
    if (v == to_string(m)) return m;
  throw ConfigError("mode: expected standard, doubled, ode or exact-density, got '" + v + "'");
}

void apply(RunConfig& cfg, const std::string& key, const std::string& v) {
  if (key == "gamma0") cfg.params.gamma0 = to_real(key, v);
  else if (key == "lambda") cfg.params.lambda = to_real(key, v);
  else if (key == "delta") cfg.params.delta = to_real(key, v);
  else if (key == "order") cfg.order = to_order(v);
  else if (key == "mode") cfg.mode = to_mode(v);
  else if (key == "tmax") cfg.t_max = to_real(key, v);
  else if (key == "points") cfg.points = to_count(key, v);
  else if (key == "ntraj") cfg.n_traj = to_count(key, v);
  else if (key == "seed") cfg.seed = to_count(key, v);
  else if (key == "substeps") cfg.substeps = to_count(key, v);
  else if (key == "workers") cfg.workers = to_count(key, v);
  else if (key == "out") cfg.out = v;
  else if (key == "scaled") cfg.scaled = to_switch(key, v);
  else if (key == "include-shift") cfg.include_shift = to_switch(key, v);
  else if (key == "deterministic-reduction") cfg.deterministic_reduction = to_switch(key, v);
  else if (key != "preset") throw ConfigError("unknown setting '" + key + "'");
}

}  // namespace

const std::vector<std::string>& setting_keys() {
  static const std::vector<std::string> keys{
      "gamma0", "lambda", "delta",  "order",   "mode",  "tmax",   "points",
      "ntraj",  "seed",   "substeps", "workers", "out", "preset", "scaled",
      "include-shift", "deterministic-reduction"};
  return keys;
}

std::map<std::string, std::string> parse_config_text(const std::string& text) {
  std::map<std::string, std::string> out;
  std::istringstream in(text);
  std::string line;
  for (int number = 1; std::getline(in, line); ++number) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const std::string body = trim(line);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(number) + ": expected key=value");
    const std::string key = trim(std::string_view(body).substr(0, eq));
    const auto& keys = setting_keys();
    if (std::find(keys.begin(), keys.end(), key) == keys.end())
      throw ConfigError("config line " + std::to_string(number) + ": unknown key '" + key + "'");
    out[key] = trim(std::string_view(body).substr(eq + 1));
  }
  return out;
}

RunConfig resolve(Command command, const std::map<std::string, std::string>& settings) {
  RunConfig cfg;
  cfg.command = command;
  cfg.mode = command == Command::simulate ? Mode::standard : Mode::ode;
  if (const auto it = settings.find("preset"); it != settings.end()) {
    const Preset& p = find_preset(it->second);
    cfg.preset = p.name;
    cfg.params = p.params;
    cfg.scaled = p.scaled;
    cfg.t_max = p.t_max;
    cfg.points = p.points;
    cfg.order = p.order;
    cfg.n_traj = p.n_traj;
    if (command == Command::simulate && p.simulate_mode) cfg.mode = *p.simulate_mode;
  }
  for (const auto& [key, value] : settings) apply(cfg, key, value);
  cfg.validate();
  return cfg;
}

Table cmd_rates(const RunConfig& cfg, std::ostream& diag) {
  const auto& p = cfg.params;
  const double unit = cfg.time_unit();
  const double rate_unit = cfg.scaled ? p.gamma0 : 1.0;
  const auto g2 = jc::gamma2(p), g4 = jc::gamma4(p), sh2 = jc::s2(p);
  const jc::Tcl4Quadrature quad(p, cfg.horizon());
  const auto exact = jc::exact_rates(p, cfg.horizon());

  Table table({"t", "gamma2", "gamma4", "gamma_exact", "s2", "s4", "s_exact"});
  std::vector<double> negative;
  for (double t : cfg.grid()) {
    const double gamma4 = g4(t);
    if (gamma4 < 0.0) negative.push_back(t * unit);
    table.add_row({t * unit, g2(t) / rate_unit, gamma4 / rate_unit, exact.gamma(t) / rate_unit,
                   sh2(t) / rate_unit, quad.s4(t) / rate_unit, exact.shift(t) / rate_unit});
  }
  if (!negative.empty())
    diag << "gamma4 < 0 at " << negative.size() << " grid times in [" << format_number(negative.front())
         << ", " << format_number(negative.back()) << "]\n";
  return table;
}

Table cmd_decay(const RunConfig& cfg) {
  const auto& p = cfg.params;
  const auto grid = cfg.grid();
  DensityTrajectory traj;
  if (cfg.mode == Mode::exact_density) {
    traj = jc::exact_density(p, 0.0, grid);
  } else {
    const auto spec = jc::lindblad_spec(p, cfg.order, cfg.model_options());
    const auto& e = two_level::excited();
    traj = integrate(split_rate_general(spec), outer(e, e), grid, cfg.substeps);
  }
  const double markov = p.markov_rate();
  Table table({"t", "rho11", "rho11_markov", "deviation"});
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const double rho11 = traj.states[k](0, 0).real();
    const double m = std::exp(-markov * grid[k]);
    table.add_row({grid[k] * cfg.time_unit(), rho11, m, rho11 - m});
  }
  return table;
}

Table cmd_simulate(const RunConfig& cfg, std::ostream& diag) {
  const auto& p = cfg.params;
  const auto spec = jc::lindblad_spec(p, cfg.order, cfg.model_options());
  EnsembleConfig ens;
  ens.n_traj = cfg.n_traj;
  ens.master_seed = cfg.seed;
  ens.grid = cfg.grid();
  ens.substeps = cfg.substeps;
  ens.mode = cfg.mode == Mode::doubled ? Unraveling::doubled : Unraveling::standard;
  ens.deterministic_reduction = cfg.deterministic_reduction;
  ens.workers = cfg.workers;
  const auto est = run_ensemble(spec, two_level::excited(), ens);
  const auto pop = population(est, 0, p.markov_rate());

  Table table({"t", "rho11_mean", "rho11_stderr", "deviation_mean"});
  for (std::size_t k = 0; k < pop.times.size(); ++k)
    table.add_row({pop.times[k] * cfg.time_unit(), pop.value[k], pop.std_error[k], pop.markov_deviation[k]});

  const auto& rate = spec.channels.front().rate;
  std::size_t at_negative = 0;
  for (const auto& j : est.jumps)
    if (rate(j.event.time) < 0.0) ++at_negative;
  diag << "jumps: " << est.jumps.size() << " over " << est.n_traj << " trajectories ("
       << to_string(cfg.mode) << " mode), " << at_negative << " at negative gamma\n";
  return table;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Stochastic unravelings of time-local master equations for the damped Jaynes-Cummings model"};
  app.require_subcommand(1);

  std::map<std::string, std::string> flags;
  std::string config_path, scaled;
  std::vector<std::string> faults;
  app.add_option("--config", config_path, "key=value settings file");
  const std::vector<std::pair<std::string, std::string>> described{
      {"gamma0", "Markovian decay scale"},
      {"lambda", "inverse reservoir correlation time"},
      {"delta", "detuning"},
      {"order", "tcl2 | tcl4 | exact"},
      {"mode", "standard | doubled | ode | exact-density"},
      {"tmax", "end of the time grid"},
      {"points", "grid points (>= 2)"},
      {"ntraj", "trajectories"},
      {"seed", "master seed"},
      {"substeps", "RK4 steps per grid interval"},
      {"workers", "ensemble threads (0 = all cores)"},
      {"out", "output file (default stdout)"},
      {"preset", "fig1 | fig2 | fig3 | fig4"},
      {"include-shift", "on | off"},
      {"deterministic-reduction", "on | off"},
  };
  for (const auto& [key, help] : described) {
    app.add_option_function<std::string>(
        "--" + key, [&flags, key = key](const std::string& v) { flags[key] = v; }, help);
  }
  app.add_flag("--scaled{on}", scaled, "times in 1/gamma0, rates in gamma0");
  app.add_option("--inject-fault", faults)->group("");

  auto* rates = app.add_subcommand("rates", "decay rates and shifts on the grid")->fallthrough();
  auto* decay = app.add_subcommand("decay", "reference excited-state population")->fallthrough();
  auto* simulate = app.add_subcommand("simulate", "trajectory ensemble estimate")->fallthrough();
  app.add_subcommand("validate", "cross-oracle check suite")->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsageError;
  }

  try {
    std::map<std::string, std::string> settings;
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) throw ConfigError("cannot read config file '" + config_path + "'");
      std::stringstream text;
      text << in.rdbuf();
      settings = parse_config_text(text.str());
    }
    for (const auto& [key, value] : flags) settings[key] = value;
    if (!scaled.empty()) settings["scaled"] = scaled;

    const Command command = rates->parsed()      ? Command::rates
                            : decay->parsed()    ? Command::decay
                            : simulate->parsed() ? Command::simulate
                                                 : Command::validate;
    if (!faults.empty() && command != Command::validate)
      throw ConfigError("--inject-fault applies to validate only");
    RunConfig cfg = resolve(command, settings);
    cfg.faults.insert(faults.begin(), faults.end());

    switch (command) {
      case Command::rates: cmd_rates(cfg, err).write_to(cfg.out, out); break;
      case Command::decay: cmd_decay(cfg).write_to(cfg.out, out); break;
      case Command::simulate: cmd_simulate(cfg, err).write_to(cfg.out, out); break;
      case Command::validate: {
        const auto results = run_checks(cfg.faults);
        std::ostringstream report;
        write_report(results, report);
        if (cfg.out.empty()) {
          out << report.str();
        } else {
          std::ofstream file(cfg.out);
          if (!(file << report.str())) throw OutputError("cannot write '" + cfg.out + "'");
        }
        const bool ok = std::all_of(results.begin(), results.end(), [](const auto& r) { return r.passed; });
        return ok ? kSuccess : kValidationFailure;
      }
    }
    return kSuccess;
  } catch (const NegativeRateError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const NumericError& e) {
    err << "numeric error: " << e.what() << '\n';
    return kNumericError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const OutputError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kNumericError;
  }
}

}  // namespace qjump::cli
