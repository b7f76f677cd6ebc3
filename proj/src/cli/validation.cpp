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

#include "qjump/cli/validation.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "qjump/cli/table.hpp"
#include "qjump/errors.hpp"
#include "qjump/jc_model.hpp"
#include "qjump/master_eq.hpp"
#include "qjump/pdp.hpp"

namespace qjump::cli {

namespace {

using jc::JCParams;

const JCParams kResonant{1.0, 5.0, 0.0};
const JCParams kDetuned{65.0, 19.5, 156.0};

struct Check {
  std::string name;
  double tolerance;
  double fault;  // relative perturbation applied when injected
  std::function<double(double fault)> measure;
};

std::vector<double> times(double t_max, std::size_t n) {
  std::vector<double> t(n);
  for (std::size_t i = 0; i < n; ++i) t[i] = t_max * static_cast<double>(i + 1) / static_cast<double>(n);
  return t;
}

double gamma4_gap(const JCParams& p, double t_max, double fault) {
  const jc::Tcl4Quadrature q(p, t_max);
  const auto closed = jc::gamma4(p);
  double worst = 0.0;
  for (double t : times(t_max, 20)) {
    const double c = closed(t) * (1.0 + fault);
    worst = std::max(worst, std::abs(c - q.gamma4(t)) / std::max(std::abs(c), p.gamma0));
  }
  return worst;
}

// Largest |f - g| over a grid on [0, 3].
double rate_gap(const std::function<double(double)>& f, const std::function<double(double)>& g) {
  double worst = 0.0;
  for (int i = 0; i <= 300; ++i) worst = std::max(worst, std::abs(f(0.01 * i) - g(0.01 * i)));
  return worst;
}

double population_gap(jc::Order order, const std::vector<double>& grid,
                      const DensityTrajectory& exact, double fault) {
  LindbladSpec spec = jc::lindblad_spec(kResonant, order);
  if (fault != 0.0) {
    auto rate = spec.channels[0].rate;
    spec.channels[0].rate = [rate, fault](double t) { return rate(t) * (1.0 + fault); };
  }
  const DensityMatrix excited = outer(two_level::excited(), two_level::excited());
  const auto traj = integrate(split_rate_general(spec), excited, grid, 20);
  double worst = 0.0;
  for (std::size_t k = 0; k < grid.size(); ++k)
    worst = std::max(worst, std::abs(traj.states[k](0, 0).real() - exact.states[k](0, 0).real()));
  return worst;
}

LindbladSpec driven_spec(double fault) {
  LindbladSpec spec;
  spec.dim = 2;
  spec.hamiltonian = constant(Operator(2, {0.4, 0.3, 0.3, -0.4}));
  spec.channels.push_back({two_level::sigma_minus(), [fault](double t) { return (0.8 + 0.3 * std::sin(t)) * (1.0 + fault); },
                           [](double) { return 0.25; }});
  spec.channels.push_back({two_level::sigma_plus(), [](double) { return 0.35; }, {}});
  return spec;
}

std::vector<double> waiting_times(double rate, std::size_t n) {
  LindbladSpec spec;
  spec.dim = 2;
  spec.channels.push_back({two_level::sigma_minus(), [rate](double) { return rate; }, {}});
  const auto plan = TrajectoryPlan::standard(spec, uniform_grid(40.0 / rate, 3), {400});
  std::vector<double> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    RandomSource rng(derive_seed(31337, i));
    std::vector<JumpEvent> jumps;
    plan.run(two_level::excited().span(), rng, {}, &jumps);
    out.push_back(jumps.empty() ? 40.0 / rate : jumps.front().time);
  }
  return out;
}

const std::vector<Check>& checks() {
  static const std::vector<Check> all = [] {
    std::vector<Check> c;
    c.push_back({"gamma4_closed_vs_quadrature_resonant", 1e-6, 1e-3,
                 [](double f) { return gamma4_gap(kResonant, 3.0, f); }});
    c.push_back({"gamma4_closed_vs_quadrature_detuned", 1e-6, 1e-3,
                 [](double f) { return gamma4_gap(kDetuned, 1.0, f); }});
    c.push_back({"s2_closed_vs_quadrature_detuned", 1e-10, 1e-3, [](double f) {
                   const jc::Tcl4Quadrature q(kDetuned, 1.0);
                   double worst = 0.0;
                   for (double t : times(1.0, 20))
                     worst = std::max(worst, std::abs(jc::s2(kDetuned)(t) * (1.0 + f) - q.s2(t)));
                   return worst;
                 }});
    c.push_back({"markov_rate_fig3", 1e-12, 1e-3, [](double f) {
                   return std::abs(jc::gamma2(kDetuned)(50.0) * (1.0 + f) - 1.0);
                 }});
    c.push_back({"gamma4_asymptote_fig3", 1e-4, 1e-3, [](double f) {
                   const double l = kDetuned.lambda, d = kDetuned.delta, g0 = kDetuned.gamma0;
                   const double r = d / l, s = l * l + d * d;
                   const double limit = 1.0 + g0 * g0 * std::pow(l, 5) * (1.0 - 3.0 * r * r) / (2.0 * s * s * s);
                   return std::abs(jc::gamma4(kDetuned)(1.0) - limit * (1.0 + f));
                 }});
    c.push_back({"exact_amplitude_resonant", 1e-9, 1e-3, [](double f) {
                   const jc::ExactAmplitude amp(kResonant, 3.0);
                   double worst = 0.0;
                   for (int i = 0; i <= 300; ++i) {
                     const double t = 0.01 * i;
                     worst = std::max(worst, std::abs(amp.c1(t) - jc::c1_resonant_closed_form(kResonant, t) * (1.0 + f)));
                   }
                   return worst;
                 }});
    c.push_back({"exact_rate_resonant", 1e-8, 1e-3, [](double f) {
                   const auto r = jc::exact_rates(kResonant, 3.0);
                   return rate_gap(r.gamma.function(), [f](double t) {
                     return jc::gamma_exact_resonant_closed_form(kResonant, t) * (1.0 + f);
                   });
                 }});
    // ratio of TCL4 to TCL2 distance from the exact rate; below 1 passes
    c.push_back({"tcl_hierarchy_rates", 1.0, 0.25, [](double f) {
                   const auto exact = [](double t) { return jc::gamma_exact_resonant_closed_form(kResonant, t); };
                   const auto g4 = jc::gamma4(kResonant);
                   const double gap4 = rate_gap([&](double t) { return g4(t) * (1.0 + f); }, exact);
                   return gap4 / rate_gap(jc::gamma2(kResonant).function(), exact);
                 }});
    c.push_back({"tcl_hierarchy_population", 1.0, 0.25, [](double f) {
                   const auto grid = uniform_grid(3.0, 61);
                   const auto exact = jc::exact_density(kResonant, 0.0, grid);
                   return population_gap(jc::Order::tcl4, grid, exact, f) /
                          population_gap(jc::Order::tcl2, grid, exact, 0.0);
                 }});
    c.push_back({"doubled_reduction", 1e-8, 1e-3, [](double f) {
                   const auto grid = uniform_grid(3.0, 31);
                   const StateVector psi{cplx(0.6, 0.0), cplx(0.0, 0.8)};
                   double worst = 0.0;
                   for (std::uint64_t seed = 0; seed < 10; ++seed) {
                     RandomSource a(seed), b(seed);
                     const auto s = simulate(driven_spec(0.0), psi, grid, a);
                     const auto d = simulate(lindblad_to_general(driven_spec(f)), PairState(psi, psi), grid, b);
                     for (std::size_t k = 0; k < grid.size(); ++k)
                       worst = std::max({worst, max_abs_diff(d.states[k].phi, s.states[k]),
                                         max_abs_diff(d.states[k].psi, s.states[k])});
                   }
                   return worst;
                 }});
    // |mean - 1/rate| in standard errors
    c.push_back({"waiting_time_mean", 3.0, 0.1, [](double f) {
                   const double rate = 2.0;
                   const auto w = waiting_times(rate, 10000);
                   double sum = 0.0, sum2 = 0.0;
                   for (double x : w) {
                     sum += x;
                     sum2 += x * x;
                   }
                   const double n = static_cast<double>(w.size());
                   const double mean = sum / n;
                   const double se = std::sqrt((sum2 / n - mean * mean) / n);
                   return std::abs(mean - (1.0 + f) / rate) / se;
                 }});
    // sqrt(n) times the Kolmogorov-Smirnov distance; 1.628 is the 1% point
    c.push_back({"waiting_time_ks", 1.628, 0.1, [](double f) {
                   const double rate = 2.0;
                   auto w = waiting_times(rate, 10000);
                   std::sort(w.begin(), w.end());
                   const double n = static_cast<double>(w.size());
                   double d = 0.0;
                   for (std::size_t i = 0; i < w.size(); ++i) {
                     const double cdf = 1.0 - std::exp(-rate * (1.0 + f) * w[i]);
                     d = std::max({d, static_cast<double>(i + 1) / n - cdf, cdf - static_cast<double>(i) / n});
                   }
                   return d * std::sqrt(n);
                 }});
    return c;
  }();
  return all;
}

}  // namespace

std::vector<std::string> check_names() {
  std::vector<std::string> out;
  for (const auto& c : checks()) out.push_back(c.name);
  return out;
}

std::vector<CheckResult> run_checks(const std::set<std::string>& faults) {
  const auto names = check_names();
  for (const auto& f : faults)
    if (std::find(names.begin(), names.end(), f) == names.end())
      throw ConfigError("unknown check '" + f + "' for fault injection");
  std::vector<CheckResult> out;
  for (const auto& c : checks()) {
    const double measured = c.measure(faults.count(c.name) ? c.fault : 0.0);
    out.push_back({c.name, measured, c.tolerance, std::isfinite(measured) && measured <= c.tolerance});
  }
  return out;
}

void write_report(const std::vector<CheckResult>& results, std::ostream& os) {
  os << "# check,measured,tolerance,status\n";
  for (const auto& r : results)
    os << r.name << ',' << format_number(r.measured) << ',' << format_number(r.tolerance) << ','
       << (r.passed ? "PASS" : "FAIL") << '\n';
}

}  // namespace qjump::cli
