// Copyright 2026 The lrusim Authors
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

#include <catch2/catch_amalgamated.hpp>
#include <cmath>

#include "lrusim/dynamics.hpp"
#include "lrusim/presets.hpp"

using namespace lrusim;
using namespace lrusim::dynamics;
using Catch::Approx;

TEST_CASE("pulse envelope follows the sin^2 ramp shape") {
  PulseParams p;
  p.amplitude = 1.0;
  p.rise_time = 30.0;
  p.duration = 220.0;
  REQUIRE(envelope(p, 0.0) == Approx(0.0).margin(1e-15));
  REQUIRE(envelope(p, 100.0) == Approx(1.0).epsilon(1e-15));
  REQUIRE(envelope(p, 15.0) == Approx(0.5).epsilon(1e-12));  // sin^2(pi/4)
  REQUIRE(envelope(p, 220.0) == Approx(0.0).margin(1e-15));
  REQUIRE(envelope(p, 205.0) == Approx(0.5).epsilon(1e-12));
  // Continuous at the ramp/flat-top boundaries.
  REQUIRE(envelope(p, 30.0) == Approx(1.0).epsilon(1e-12));
  REQUIRE(envelope(p, 190.0) == Approx(1.0).epsilon(1e-12));
  REQUIRE_THROWS_AS(envelope(p, -1.0), std::invalid_argument);
  REQUIRE_THROWS_AS(envelope(p, 221.0), std::invalid_argument);
}

TEST_CASE("pulse parameter validation") {
  PulseParams p;
  p.rise_time = 120.0;
  p.duration = 220.0;  // 2 tr > tp
  REQUIRE_THROWS_AS(p.validate(), ConfigError);
  p.rise_time = 30.0;
  p.amplitude = -0.1;
  REQUIRE_THROWS_AS(p.validate(), ConfigError);
  p.amplitude = 0.0;
  REQUIRE_NOTHROW(p.validate());
}

TEST_CASE("initial transmon states") {
  HilbertSpace hs(4, 3, 3);
  auto st = initial_transmon_state(hs, "f");
  REQUIRE(st.population(hs.index_of_label("f00")) == Approx(1.0));
  auto plus = initial_transmon_state(hs, "+");
  REQUIRE(plus.population(hs.index_of_label("g00")) == Approx(0.5));
  REQUIRE(plus.population(hs.index_of_label("e00")) == Approx(0.5));
  auto plus_i = initial_transmon_state(hs, "+i");
  REQUIRE(std::abs(plus_i.rho(hs.index_of_label("e00"), hs.index_of_label("g00")) -
                   std::complex<double>(0.0, 0.5)) < 1e-14);
  REQUIRE_THROWS_AS(initial_transmon_state(hs, "x"), ConfigError);
}

TEST_CASE("dark state stays put without drives") {
  auto p = presets::transmon_preset("A").params;
  auto m = build_lindblad_model(p);
  auto rho0 = basis_state(m.space, "g00");
  EvolveOptions o;
  o.step = 0.01;
  auto r = evolve(m, {}, rho0, 50.0, o);
  REQUIRE(r.final_population("g00") == Approx(1.0).epsilon(1e-10));
  REQUIRE(r.final_population("g") == Approx(1.0).epsilon(1e-10));
}

TEST_CASE("amplitude-damping law: P_e(T1) = 1/e") {
  auto p = presets::transmon_preset("A").params;
  p.tr_coupling = p.rp_coupling = 0.0;  // uncoupled: exact exponential decay
  p.n_transmon_levels = 3;
  p.n_readout_photons = 2;
  p.n_purcell_photons = 2;
  auto m = build_lindblad_model(p);
  auto rho0 = basis_state(m.space, "e00");
  EvolveOptions o;
  o.step = 0.5;  // diagonal-only dynamics, no oscillating coherences
  auto r = evolve(m, {}, rho0, p.t1, o);
  REQUIRE(r.final_population("e") == Approx(std::exp(-1.0)).margin(1e-3));
  r.final_state.check_valid(1e-7);
}

TEST_CASE("resonator photon decays at the kappa rate (J = 0)") {
  auto p = presets::transmon_preset("A").params;
  p.rp_coupling = 0.0;
  p.n_transmon_levels = 3;
  p.n_readout_photons = 2;
  p.n_purcell_photons = 2;
  auto m = build_lindblad_model(p);
  auto rho0 = basis_state(m.space, "g01");
  EvolveOptions o;
  o.step = 0.05;
  const double t_end = 20.0;
  auto r = evolve(m, {}, rho0, t_end, o);
  double p_photon = 0.0;
  for (int i = 0; i < m.space.size(); ++i)
    if (m.space.purcell_of(i) == 1) p_photon += r.populations.back()[i];
  REQUIRE(p_photon == Approx(std::exp(-kTwoPi * p.purcell_linewidth * t_end)).margin(1e-3));
}

TEST_CASE("multi-level decay convention: P_f decays at 2/T1 without a drive") {
  auto p = presets::transmon_preset("A").params;
  p.tr_coupling = p.rp_coupling = 0.0;
  auto m = build_lindblad_model(p);
  PulseParams idle;
  idle.amplitude = 0.0;
  idle.frequency = 4.1;
  idle.duration = 220.0;
  EvolveOptions o;
  o.step = 0.5;
  auto r = simulate_lru_pulse(m, {idle}, "f", o);
  REQUIRE(r.final_population("f") == Approx(std::exp(-2.0 * 220.0 / p.t1)).margin(1e-6));

  // With the couplings on, bare-basis dressing wiggles stay small.
  auto full = build_lindblad_model(presets::transmon_preset("A").params);
  EvolveOptions o2;
  auto r2 = simulate_lru_pulse(full, {idle}, "f", o2);
  REQUIRE(r2.final_population("f") == Approx(std::exp(-2.0 * 220.0 / p.t1)).margin(0.04));
}

TEST_CASE("free evolution conserves purity with decay off") {
  auto p = presets::transmon_preset("A").params;
  p.purcell_linewidth = 0.0;
  p.t1 = std::numeric_limits<double>::infinity();
  p.t2 = std::numeric_limits<double>::infinity();
  auto m = build_lindblad_model(p);
  model::Vec psi = model::Vec::Zero(m.space.size());
  psi(m.space.index_of_label("g00")) = 1.0;
  psi(m.space.index_of_label("e00")) = 1.0;
  psi(m.space.index_of_label("f00")) = 1.0;
  psi(m.space.index_of_label("g10")) = 0.5;
  auto rho0 = pure_state(m.space, psi);

  EvolveOptions o;
  o.frame_freq = p.qubit_freq;  // keeps the occupied coherences slow
  o.step = 1e-3;
  auto r = evolve(m, {}, rho0, 20.0, o);
  REQUIRE(r.final_state.purity() == Approx(1.0).margin(1e-8));
  REQUIRE(r.final_state.trace() == Approx(1.0).margin(1e-10));
}

TEST_CASE("step-halving self-check passes at the suggested step") {
  auto p = presets::transmon_preset("A").params;
  PulseParams drive;
  drive.amplitude = 2.0;
  drive.frequency = model::dressed_f_transitions(p).lower - 0.040;
  drive.duration = 60.0;
  EvolveOptions o;
  o.check_convergence = true;
  o.convergence_tol = 1e-4;
  REQUIRE_NOTHROW(simulate_lru_pulse(p, {drive}, "f", o));
}

TEST_CASE("step-halving check throws on a reckless step") {
  auto p = presets::transmon_preset("A").params;
  PulseParams drive;
  drive.amplitude = 5.0;
  drive.frequency = model::dressed_f_transitions(p).lower - 0.080;
  drive.rise_time = 15.0;
  drive.duration = 40.0;
  EvolveOptions o;
  o.step = 0.15;  // far above the detuning rule
  o.check_convergence = true;
  REQUIRE_THROWS_AS(simulate_lru_pulse(p, {drive}, "f", o), NumericalError);
}

TEST_CASE("population snapshots stay normalized and Hermitian under drive") {
  auto p = presets::transmon_preset("A").params;
  PulseParams drive;
  drive.amplitude = 5.0;
  drive.frequency = model::dressed_f_transitions(p).lower - 0.080;
  drive.duration = 120.0;
  auto r = simulate_lru_pulse(p, {drive}, "f");
  for (const auto& snap : r.populations) {
    double basis_sum = 0.0;
    for (int i = 0; i < 36; ++i) basis_sum += snap[i];
    REQUIRE(basis_sum == Approx(1.0).margin(1e-6));
  }
  r.final_state.check_valid(1e-7);
}

TEST_CASE("a drive detuned by +1 GHz removes almost nothing") {
  auto p = presets::transmon_preset("A").params;
  PulseParams drive;
  drive.amplitude = 5.0;
  drive.frequency = model::dressed_f_transitions(p).lower + 1.0;
  drive.duration = 220.0;
  auto r = simulate_lru_pulse(p, {drive}, "f");
  const double removal = 1.0 - r.final_population("f");
  REQUIRE(removal < 0.05);
}

TEST_CASE("dimension mismatch is rejected") {
  auto p = presets::transmon_preset("A").params;
  auto m = build_lindblad_model(p);
  HilbertSpace other(3, 2, 2);
  auto rho0 = basis_state(other, "g00");
  REQUIRE_THROWS_AS(evolve(m, {}, rho0, 1.0), std::invalid_argument);
}

TEST_CASE("spectroscopy grid brackets both dressed transitions") {
  auto p = presets::transmon_preset("A").params;
  auto gaps = model::dressed_f_transitions(p);
  auto grid = make_spectroscopy_grid(p, 0.030, 0.002);
  REQUIRE(grid.front() < gaps.upper - 0.020);
  REQUIRE(grid.back() > gaps.lower + 0.020);
}

TEST_CASE("spectroscopy shows two dips split by roughly 2J") {
  auto p = presets::transmon_preset("A").params;
  PulseParams pulse;
  pulse.amplitude = 0.5;
  pulse.rise_time = 30.0;
  pulse.duration = 220.0;
  auto grid = make_spectroscopy_grid(p, 0.025, 0.004);
  auto pts = spectroscopy_sweep(p, pulse, grid, {}, 2);
  auto dips = find_spectroscopy_dips(pts, 0.2);
  REQUIRE(dips.size() == 2);
  const double sep = dips[1].frequency - dips[0].frequency;
  REQUIRE(sep == Approx(2.0 * p.rp_coupling).epsilon(0.15));
}
