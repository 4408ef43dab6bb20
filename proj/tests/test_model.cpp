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

#include "lrusim/model.hpp"
#include "lrusim/presets.hpp"
#include "lrusim/util.hpp"

using namespace lrusim;
using namespace lrusim::model;
using Catch::Approx;

namespace {

// Table-like parameters with explicitly bare-matched resonators, used by the
// checks that quote that configuration.
SystemParams bare_matched(double wq, double alpha, double wr) {
  SystemParams p;
  p.qubit_freq = wq;
  p.anharmonicity = alpha;
  p.readout_freq = p.purcell_freq = wr;
  p.tr_coupling = presets::kDefaultTrCoupling;
  p.rp_coupling = presets::kDefaultRpCoupling;
  p.purcell_linewidth = 0.0225;
  p.t1 = 26000.0;
  p.t2 = 22000.0;
  return p;
}

}  // namespace

TEST_CASE("HilbertSpace index/label mapping is a bijection") {
  HilbertSpace hs(4, 3, 3);
  REQUIRE(hs.size() == 36);
  for (int i = 0; i < hs.size(); ++i) {
    const std::string lbl = hs.label(i);
    REQUIRE(hs.index_of_label(lbl) == i);
  }
  REQUIRE(hs.label(hs.index(2, 0, 0)) == "f00");
  REQUIRE(hs.label(hs.index(1, 2, 1)) == "e21");
  REQUIRE_THROWS(hs.index_of_label("z00"));
  REQUIRE_THROWS(hs.index_of_label("g30"));
}

TEST_CASE("static Hamiltonian with everything off is the zero matrix") {
  SystemParams p;
  p.qubit_freq = 0.0;
  p.anharmonicity = 0.0;
  p.readout_freq = p.purcell_freq = 0.0;
  p.tr_coupling = p.rp_coupling = 0.0;
  p.n_transmon_levels = 3;
  p.n_readout_photons = 2;
  p.n_purcell_photons = 2;
  Operator h = build_static_hamiltonian(p);
  REQUIRE(h.matrix.norm() == 0.0);
}

TEST_CASE("uncoupled diagonal: |e00> energy is 2 pi wQ") {
  SystemParams p = bare_matched(6.033, -0.310, 7.600);
  p.tr_coupling = p.rp_coupling = 0.0;
  Operator h = build_static_hamiltonian(p);
  const int idx = h.space.index_of_label("e00");
  REQUIRE(h.matrix(idx, idx).real() == Approx(kTwoPi * 6.033).epsilon(1e-14));
}

TEST_CASE("single-excitation resonator block of the A parameters splits by 2J") {
  SystemParams p = bare_matched(6.033, -0.310, 7.600);
  Operator h = build_static_hamiltonian(p);
  const int i10 = h.space.index_of_label("g10");
  const int i01 = h.space.index_of_label("g01");
  Eigen::Matrix2cd block;
  block << h.matrix(i10, i10), h.matrix(i10, i01), h.matrix(i01, i10), h.matrix(i01, i01);
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(block);
  const double gap = (es.eigenvalues()(1) - es.eigenvalues()(0)) / kTwoPi;
  REQUIRE(gap == Approx(2.0 * p.rp_coupling).epsilon(1e-12));
}

TEST_CASE("H0 is Hermitian for all presets") {
  for (const char* name : {"D1", "A", "D2"}) {
    Operator h = build_static_hamiltonian(presets::transmon_preset(name).params);
    REQUIRE((h.matrix - h.matrix.adjoint()).norm() < 1e-12 * h.matrix.norm());
    REQUIRE(h.is_hermitian());
  }
}

TEST_CASE("dressed resonator modes") {
  SECTION("matched resonators split symmetrically by 2J") {
    SystemParams p = bare_matched(6.033, -0.310, 7.600);
    p.rp_coupling = 0.010;
    auto [lo, hi] = dressed_resonator_modes(p);
    REQUIRE(lo == Approx(7.590).epsilon(1e-13));
    REQUIRE(hi == Approx(7.610).epsilon(1e-13));
    REQUIRE(hi - lo == Approx(2.0 * p.rp_coupling).epsilon(1e-12));
  }
  SECTION("J = 0 is degenerate") {
    SystemParams p = bare_matched(6.033, -0.310, 7.600);
    p.rp_coupling = 0.0;
    auto [lo, hi] = dressed_resonator_modes(p);
    REQUIRE(lo == Approx(7.600).epsilon(1e-14));
    REQUIRE(hi == Approx(7.600).epsilon(1e-14));
  }
  SECTION("detuned case matches a direct 2x2 eigensolve") {
    SystemParams p = bare_matched(6.033, -0.310, 7.600);
    p.readout_freq = 7.60;
    p.purcell_freq = 7.62;
    p.rp_coupling = 0.010;
    auto [lo, hi] = dressed_resonator_modes(p);
    // Independent oracle: diagonalize [[wR, J], [J, wP]] directly.
    Eigen::Matrix2d block;
    block << 7.60, 0.010, 0.010, 7.62;
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(block);
    REQUIRE(lo == Approx(es.eigenvalues()(0)).epsilon(1e-13));
    REQUIRE(hi == Approx(es.eigenvalues()(1)).epsilon(1e-13));
    // Frozen: mean +- sqrt(delta^2/4 + J^2) = 7.61 -+ 0.0141421...
    REQUIRE(lo == Approx(7.5958578643762691).epsilon(1e-12));
    REQUIRE(hi == Approx(7.6241421356237309).epsilon(1e-12));
  }
}

TEST_CASE("f transition frequency estimate") {
  SECTION("D2 parameters hit 2.150 GHz, 2 MHz from the measured drive") {
    SystemParams p = bare_matched(4.788, -0.321, 7.105);
    REQUIRE(f_transition_frequency(p) == Approx(2.150).epsilon(1e-12));
    REQUIRE(std::abs(f_transition_frequency(p) - 2.152) <= 0.005);
  }
  SECTION("A parameters: 4.156 GHz, within 30 MHz of the measured 4.135") {
    SystemParams p = bare_matched(6.033, -0.310, 7.600);
    REQUIRE(f_transition_frequency(p) == Approx(4.156).epsilon(1e-12));
    REQUIRE(std::abs(f_transition_frequency(p) - 4.135) <= 0.030);
  }
  SECTION("alpha = 0 and wRP = 2 wQ gives zero") {
    SystemParams p = bare_matched(3.8, -0.3, 7.6);
    p.anharmonicity = 0.0;
    REQUIRE(f_transition_frequency(p) == Approx(0.0).margin(1e-14));
  }
  SECTION("shipped presets estimate the measured drives to g^2-order") {
    for (const char* name : {"D1", "A", "D2"}) {
      auto t = presets::transmon_preset(name);
      REQUIRE(std::abs(f_transition_frequency(t.params) - t.f_drive_freq_measured) <= 0.030);
    }
  }
}

TEST_CASE("h transition frequency") {
  SECTION("A parameters: 3.536 GHz (measured 3.496)") {
    SystemParams p = bare_matched(6.033, -0.310, 7.600);
    REQUIRE(h_transition_frequency(p) == Approx(3.536).epsilon(1e-12));
    REQUIRE(std::abs(h_transition_frequency(p) - 3.496) <= 0.060);
  }
  SECTION("sits exactly 2 alpha below the f transition") {
    util::Rng rng(7);
    for (int i = 0; i < 50; ++i) {
      SystemParams p = bare_matched(4.0 + 3.0 * rng.uniform(), -0.5 + 0.45 * rng.uniform(),
                                    6.5 + 2.0 * rng.uniform());
      p.purcell_freq += 0.1 * rng.uniform();
      REQUIRE(h_transition_frequency(p) - f_transition_frequency(p) ==
              Approx(2.0 * p.anharmonicity).epsilon(1e-12));
    }
  }
  SECTION("alpha = 0 degenerates to the f transition") {
    SystemParams p = bare_matched(6.0, -0.3, 7.6);
    p.anharmonicity = 0.0;
    REQUIRE(h_transition_frequency(p) == Approx(f_transition_frequency(p)).epsilon(1e-14));
  }
  SECTION("requires four transmon levels") {
    SystemParams p = bare_matched(6.033, -0.310, 7.600);
    p.n_transmon_levels = 3;
    REQUIRE_THROWS_AS(h_transition_frequency(p), ConfigError);
    REQUIRE_THROWS_AS(dressed_h_transitions(p), ConfigError);
  }
}

TEST_CASE("exact dressed f gaps: split by ~2J, offset from Eq.-1 estimate is g^2-order") {
  auto p = presets::transmon_preset("A").params;
  DressedGaps gaps = dressed_f_transitions(p);
  const double est = f_transition_frequency(p);
  const double sep = gaps.lower - gaps.upper;
  REQUIRE(sep == Approx(2.0 * p.rp_coupling).epsilon(0.10));
  // Both gaps agree with the estimate up to J plus g^2-order level pulls.
  REQUIRE(std::abs(0.5 * (gaps.lower + gaps.upper) - est) < 0.040);
  REQUIRE(std::abs(gaps.lower - est) < p.rp_coupling + 0.040);
  REQUIRE(std::abs(gaps.upper - est) < p.rp_coupling + 0.040);
}

TEST_CASE("SystemParams validation") {
  auto good = presets::transmon_preset("A").params;
  REQUIRE_NOTHROW(good.validate());

  auto p = good;
  p.purcell_linewidth = -0.01;
  REQUIRE_THROWS_AS(p.validate(), ConfigError);

  p = good;
  p.anharmonicity = 0.2;
  REQUIRE_THROWS_AS(p.validate(), ConfigError);

  p = good;
  p.t2 = 2.5 * p.t1;  // exceeds the 2 T1 dephasing bound
  REQUIRE_THROWS_AS(p.validate(), ConfigError);

  p = good;
  p.n_readout_photons = 1;
  REQUIRE_THROWS_AS(p.validate(), ConfigError);

  p = good;
  p.n_transmon_levels = 2;
  REQUIRE_THROWS_AS(p.validate(), ConfigError);
  REQUIRE_THROWS_AS(build_static_hamiltonian(p), ConfigError);
}

TEST_CASE("presets carry the device table values") {
  auto a = presets::transmon_preset("A");
  REQUIRE(a.params.qubit_freq == 6.033);
  REQUIRE(a.params.anharmonicity == -0.310);
  REQUIRE(a.params.readout_freq == 7.600);
  REQUIRE(a.params.t1 == 26000.0);
  REQUIRE(a.params.t2 == 22000.0);
  REQUIRE(a.removal_fraction_f == 0.992);
  REQUIRE(a.removal_fraction_h == 0.961);
  REQUIRE(a.params.purcell_freq ==
          Approx(matched_purcell_frequency(6.033, 7.600, a.params.tr_coupling)).epsilon(1e-14));
  REQUIRE_THROWS_AS(presets::transmon_preset("X"), ConfigError);
}
