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

#include <doctest.h>

#include <cmath>
#include <vector>

#include "qjump/errors.hpp"
#include "qjump/pdp.hpp"

using namespace qjump;

namespace {

const jc::JCParams kResonant{1.0, 5.0, 0.0};
const jc::JCParams kDetuned{65.0, 19.5, 156.0};

LindbladSpec constant_decay(double rate) {
  LindbladSpec spec;
  spec.dim = 2;
  spec.channels.push_back({two_level::sigma_minus(), [rate](double) { return rate; }, {}});
  return spec;
}

// Lindblad-reducible spec with a Hamiltonian, a shift and two channels.
LindbladSpec driven_spec() {
  LindbladSpec spec;
  spec.dim = 2;
  spec.hamiltonian = [](double t) { return Operator(2, {0.4, cplx(0.3, 0.1 * t), cplx(0.3, -0.1 * t), -0.4}); };
  spec.channels.push_back({two_level::sigma_minus(), [](double t) { return 0.8 + 0.3 * std::sin(t); },
                           [](double) { return 0.25; }});
  spec.channels.push_back({two_level::sigma_plus(), [](double) { return 0.35; }, {}});
  return spec;
}

GeneralSpec detuned_doubled(double horizon, bool shift = true) {
  jc::ModelOptions opts;
  opts.horizon = horizon;
  opts.include_shift = shift;
  return split_rate_general(jc::lindblad_spec(kDetuned, jc::Order::tcl4, opts));
}

const PairState kExcitedPair(two_level::excited(), two_level::excited());

}  // namespace

TEST_SUITE("pdp") {
  TEST_CASE("standard drift") {
    const auto spec = jc::lindblad_spec(kResonant, jc::Order::tcl4);
    CHECK(norm(drift_standard(spec, 0.7, two_level::ground())) == 0.0);
    CHECK(norm(drift_standard(spec, 0.7, two_level::excited())) < 1e-16);

    // d|a|^2/dt = -gamma |a|^2 (1 - |a|^2) under the drift alone
    const double a2 = 0.3;
    const StateVector psi{std::sqrt(a2), cplx(0.0, std::sqrt(1.0 - a2))};
    const double t = 0.9;
    const auto d = drift_standard(spec, t, psi);
    const double da2 = 2.0 * std::real(std::conj(psi[0]) * d[0]);
    CHECK(da2 == doctest::Approx(-jc::gamma4(kResonant)(t) * a2 * (1.0 - a2)).epsilon(1e-13));
    CHECK(std::abs(std::real(inner(psi, d))) < 1e-15);

    const auto g = driven_spec();
    const StateVector phi{cplx(0.6, 0.0), cplx(0.0, 0.8)};
    CHECK(std::abs(std::real(inner(phi, drift_standard(g, 0.3, phi)))) < 1e-15);
    CHECK_THROWS_AS(drift_standard(g, 0.3, StateVector(3)), DimensionError);
  }

  TEST_CASE("standard jumps") {
    const auto spec = jc::lindblad_spec(kResonant, jc::Order::tcl4);
    const StateVector psi{cplx(0.6, 0.0), cplx(0.0, 0.8)};
    CHECK(max_abs_diff(jump_standard(spec, 0, psi), two_level::ground()) < 1e-15);
    CHECK_THROWS_AS(jump_standard(spec, 0, two_level::ground()), NumericError);
    CHECK_THROWS_AS(jump_standard(spec, 1, psi), ConfigError);

    LindbladSpec z;
    z.dim = 2;
    z.channels.push_back({Operator(2, {cplx(0.0, 2.0), 0.0, 0.0, 1.0}), [](double) { return 1.0; }, {}});
    CHECK(max_abs_diff(jump_standard(z, 0, two_level::excited()), StateVector{cplx(0.0, 1.0), 0.0}) < 1e-15);
  }

  TEST_CASE("standard intensities") {
    const auto spec = jc::lindblad_spec(kResonant, jc::Order::tcl4);
    CHECK(jump_intensity(spec, 0.4, two_level::excited())[0] == doctest::Approx(jc::gamma4(kResonant)(0.4)));
    CHECK(jump_intensity(spec, 0.4, two_level::ground())[0] == 0.0);
    const auto neg = jc::lindblad_spec(kDetuned, jc::Order::tcl4, {false, 0.1});
    CHECK_THROWS_AS(jump_intensity(neg, 0.0288, two_level::excited()), NegativeRateError);
  }

  TEST_CASE("doubled drift") {
    // phi = psi reduces to the standard drift
    const auto spec = driven_spec();
    const auto g = lindblad_to_general(spec);
    const StateVector psi{cplx(0.6, 0.0), cplx(0.0, 0.8)};
    const auto d = drift_doubled(g, 0.5, PairState(psi, psi));
    const auto s = drift_standard(spec, 0.5, psi);
    CHECK(max_abs_diff(d.phi, s) < 1e-15);
    CHECK(max_abs_diff(d.psi, s) < 1e-15);

    GeneralSpec zero;
    zero.dim = 2;
    zero.a = zero.b = constant(Operator(2));
    CHECK(drift_doubled(zero, 1.0, kExcitedPair).norm2() == 0.0);

    // JC detuned without shift: [-(g/2) s+s- + (g^2 + 1)/4] theta
    const auto det = detuned_doubled(0.1, false);
    for (double t : {0.0288, 0.05}) {
      const double gt = jc::gamma4(kDetuned)(t);
      const auto dd = drift_doubled(det, t, kExcitedPair);
      const double expect = -0.5 * gt + 0.25 * (gt * gt + 1.0);
      CHECK(std::abs(dd.phi[0] - expect) < 1e-12 * (1.0 + std::abs(expect)));
      CHECK(std::abs(dd.psi[0] - expect) < 1e-12 * (1.0 + std::abs(expect)));
      CHECK(dd.phi[1] == 0.0);
    }
  }

  TEST_CASE("doubled jumps and intensities") {
    const auto det = detuned_doubled(0.1, false);
    const double t = 0.0288;
    const double gt = jc::gamma4(kDetuned)(t);
    REQUIRE(gt < 0.0);
    const PairState theta(StateVector{cplx(0.8, 0.0), cplx(0.6, 0.0)}, StateVector{cplx(0.0, 0.6), cplx(0.8, 0.0)});
    const auto j = jump_doubled(det, 0, t, theta);
    CHECK(std::abs(j.norm2() - theta.norm2()) < 1e-12);
    CHECK(j.phi[0] == 0.0);
    CHECK(j.psi[0] == 0.0);
    // proportional to (g|0>, |0>)
    CHECK(std::abs(j.phi[1] / j.psi[1] - gt * 0.8 / cplx(0.0, 0.6)) < 1e-12 * std::abs(gt));

    CHECK(jump_intensity(det, t, kExcitedPair)[0] == doctest::Approx(0.5 * (gt * gt + 1.0)).epsilon(1e-14));
    const PairState ground(two_level::ground(), two_level::ground());
    CHECK(jump_intensity(det, t, ground)[0] == 0.0);
    CHECK_THROWS_AS(jump_doubled(det, 0, t, ground), NumericError);

    // phi = psi reduces to the standard jump
    const auto spec = driven_spec();
    const StateVector psi{cplx(0.6, 0.0), cplx(0.0, 0.8)};
    const auto r = jump_doubled(lindblad_to_general(spec), 1, 0.0, PairState(psi, psi));
    const auto s = jump_standard(spec, 1, psi);
    CHECK(max_abs_diff(r.phi, s) < 1e-15);
    CHECK(max_abs_diff(r.psi, s) < 1e-15);
  }

  TEST_CASE("zero rates: no jumps, constant state") {
    const auto grid = uniform_grid(5.0, 11);
    RandomSource rng(1);
    const StateVector psi{cplx(0.6, 0.0), cplx(0.0, 0.8)};
    const auto rec = simulate(constant_decay(0.0), psi, grid, rng);
    CHECK(rec.jumps.empty());
    CHECK(rec.seed == 1);
    REQUIRE(rec.states.size() == grid.size());
    for (const auto& s : rec.states) CHECK(max_abs_diff(s, psi) < 1e-15);
  }

  TEST_CASE("resonant JC trajectories jump at most once, to the ground state") {
    const auto spec = jc::lindblad_spec(kResonant, jc::Order::tcl4);
    const auto grid = uniform_grid(3.0, 31);
    const auto plan = TrajectoryPlan::standard(spec, grid);
    int jumped = 0;
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
      RandomSource rng(seed);
      std::vector<JumpEvent> jumps;
      std::vector<StateVector> states;
      plan.run(two_level::excited().span(), rng,
               [&](std::size_t, std::span<const cplx> x) { states.emplace_back(std::vector<cplx>(x.begin(), x.end())); },
               &jumps);
      REQUIRE(jumps.size() <= 1);
      for (std::size_t k = 0; k < grid.size(); ++k) {
        const bool after = !jumps.empty() && grid[k] >= jumps[0].time;
        CHECK(max_abs_diff(states[k], after ? two_level::ground() : two_level::excited()) < 1e-12);
      }
      if (!jumps.empty()) {
        ++jumped;
        CHECK(jumps[0].channel == 0);
        CHECK(jumps[0].weight == doctest::Approx(1.0));
        CHECK(jumps[0].time > 0.0);
        CHECK(jumps[0].time <= 3.0);
      }
    }
    // survival to t = 3 is exp(-int gamma4) = 0.0474
    CHECK(jumped > 170);
  }

  TEST_CASE("standard mode rejects negative rates") {
    const auto spec = jc::lindblad_spec(kDetuned, jc::Order::tcl4, {false, 0.5});
    const auto grid = uniform_grid(0.5, 51);
    try {
      TrajectoryPlan::standard(spec, grid);
      FAIL("expected NegativeRateError");
    } catch (const NegativeRateError& e) {
      CHECK(std::string(e.what()).find("doubled") != std::string::npos);
    }
  }

  TEST_CASE("flow conserves the norm without renormalization") {
    // Doubled flow of a Lindblad-reducible spec with phi = psi is the
    // standard flow without the renormalization step.
    const auto spec = driven_spec();
    const auto grid = uniform_grid(4.0, 41);
    const auto plan = TrajectoryPlan::doubled(lindblad_to_general(spec), grid, {100});
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      RandomSource rng(seed);
      const StateVector psi{cplx(0.6, 0.0), cplx(0.0, 0.8)};
      const std::vector<cplx> theta{psi[0], psi[1], psi[0], psi[1]};
      plan.run(theta, rng,
               [&](std::size_t, std::span<const cplx> x) {
                 double n2 = 0.0;
                 for (const auto& v : x) n2 += std::norm(v);
                 CHECK(std::abs(0.5 * n2 - 1.0) < 1e-9);
               },
               nullptr);
    }
  }

  TEST_CASE("standard trajectories stay normalized") {
    const auto spec = driven_spec();
    const auto grid = uniform_grid(4.0, 41);
    RandomSource rng(99);
    const auto rec = simulate(spec, StateVector{cplx(0.6, 0.0), cplx(0.0, 0.8)}, grid, rng, {50});
    for (const auto& s : rec.states) CHECK(std::abs(norm(s) - 1.0) < 1e-12);
    CHECK_FALSE(rec.jumps.empty());
    for (const auto& j : rec.jumps) {
      CHECK(j.channel < 2);
      CHECK(j.time >= 0.0);
      CHECK(j.time <= 4.0);
    }
  }

  TEST_CASE("doubled trajectory equals the standard one for a reducible spec") {
    const auto spec = driven_spec();
    const auto grid = uniform_grid(3.0, 31);
    const StateVector psi{cplx(0.6, 0.0), cplx(0.0, 0.8)};
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      RandomSource a(seed), b(seed);
      const auto s = simulate(spec, psi, grid, a);
      const auto d = simulate(lindblad_to_general(spec), PairState(psi, psi), grid, b);
      REQUIRE(s.jumps.size() == d.jumps.size());
      for (std::size_t k = 0; k < grid.size(); ++k) {
        CHECK(max_abs_diff(d.states[k].phi, s.states[k]) < 1e-8);
        CHECK(max_abs_diff(d.states[k].psi, s.states[k]) < 1e-8);
      }
    }
  }

  TEST_CASE("constant rate: exponential waiting times") {
    const double rate = 2.0;
    const auto grid = uniform_grid(20.0, 3);
    const auto plan = TrajectoryPlan::standard(constant_decay(rate), grid, {200});
    const int n = 10000;
    double sum = 0.0, sum2 = 0.0;
    for (int i = 0; i < n; ++i) {
      RandomSource rng(derive_seed(5, i));
      std::vector<JumpEvent> jumps;
      plan.run(two_level::excited().span(), rng, {}, &jumps);
      REQUIRE(jumps.size() == 1);
      sum += jumps[0].time;
      sum2 += jumps[0].time * jumps[0].time;
    }
    const double mean = sum / n;
    const double se = std::sqrt((sum2 / n - mean * mean) / n);
    CHECK(std::abs(mean - 1.0 / rate) < 3.0 * se);
  }

  TEST_CASE("Bernoulli jump times agree to first order") {
    const double rate = 1.0;
    const auto grid = uniform_grid(20.0, 201);
    const auto plan = TrajectoryPlan::standard(constant_decay(rate), grid, {10, JumpTimeMethod::bernoulli});
    const int n = 5000;
    double sum = 0.0;
    int count = 0;
    for (int i = 0; i < n; ++i) {
      RandomSource rng(derive_seed(6, i));
      std::vector<JumpEvent> jumps;
      plan.run(two_level::excited().span(), rng, {}, &jumps);
      REQUIRE(jumps.size() <= 1);
      if (!jumps.empty()) {
        sum += jumps[0].time;
        ++count;
      }
    }
    // step 0.01: bias O(h), statistical sd 1/sqrt(n)
    CHECK(count > 4990);
    CHECK(std::abs(sum / count - 1.0) < 4.0 / std::sqrt(double(n)) + 0.02);
  }

  TEST_CASE("same seed, same trajectory") {
    const auto det = detuned_doubled(0.5);
    const auto grid = uniform_grid(0.5, 26);
    RandomSource a(77), b(77);
    const auto r1 = simulate(det, kExcitedPair, grid, a);
    const auto r2 = simulate(det, kExcitedPair, grid, b);
    CHECK(r1.states == r2.states);
    CHECK(r1.jumps.size() == r2.jumps.size());
  }

  TEST_CASE("input checks") {
    const auto spec = constant_decay(1.0);
    RandomSource rng(0);
    const std::vector<double> bad{0.0, 1.0, 1.0};
    CHECK_THROWS_AS(simulate(spec, two_level::excited(), bad, rng), ConfigError);
    CHECK_THROWS_AS(simulate(spec, StateVector{1.0, 1.0}, uniform_grid(1.0, 3), rng), ConfigError);
    CHECK_THROWS_AS(simulate(spec, StateVector(3), uniform_grid(1.0, 3), rng), DimensionError);
    CHECK_THROWS_AS(TrajectoryPlan::standard(spec, uniform_grid(1.0, 3), {0}), ConfigError);
  }
}
