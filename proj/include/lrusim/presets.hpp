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

#ifndef LRUSIM_PRESETS_HPP
#define LRUSIM_PRESETS_HPP

#include <string>

#include "lrusim/model.hpp"

namespace lrusim::presets {

/// Device-style metrics for one transmon: the three shipped presets D1, A,
/// D2. Couplings g and J are configuration defaults (not device-measured);
/// they are chosen so the two spectroscopy dips are resolvable and >99%
/// removal is reachable at 220 ns, and can be overridden in config. The
/// Purcell frequency is set to match the readout mode at the dressed level
/// (see model::matched_purcell_frequency); the readout frequency itself is
/// the measured device value.
struct TransmonPreset {
  model::SystemParams params;
  double f_drive_freq_measured = 0.0;  // GHz, device value for reference
  double h_drive_freq_measured = 0.0;  // GHz, 0 when not applicable
  double removal_fraction_f = 0.0;     // R^f
  double removal_fraction_h = 0.0;     // R^h, 0 when not applicable
  std::string name;
};

inline constexpr double kDefaultTrCoupling = 0.120;  // g (GHz)
inline constexpr double kDefaultRpCoupling = 0.025;  // J (GHz)

// Circuit-slot durations (ns).
inline constexpr double kSingleQubitGateNs = 20.0;
inline constexpr double kTwoQubitGateNs = 60.0;
inline constexpr double kMeasurementNs = 340.0;
inline constexpr double kLruNs = 220.0;
inline constexpr double kRoundNoLruNs = 500.0;
inline constexpr double kRoundWithLruNs = 720.0;

inline TransmonPreset transmon_preset(const std::string& name) {
  TransmonPreset t;
  t.name = name;
  model::SystemParams& p = t.params;
  p.tr_coupling = kDefaultTrCoupling;
  p.rp_coupling = kDefaultRpCoupling;
  p.n_transmon_levels = 4;
  p.n_readout_photons = 3;
  p.n_purcell_photons = 3;
  if (name == "D1") {
    p.qubit_freq = 6.802;
    p.anharmonicity = -0.295;
    p.readout_freq = 7.786;
    p.purcell_linewidth = 0.0155;
    p.t1 = 17000.0;
    p.t2 = 19000.0;
    t.f_drive_freq_measured = 5.498;
    t.removal_fraction_f = 0.847;
  } else if (name == "A") {
    p.qubit_freq = 6.033;
    p.anharmonicity = -0.310;
    p.readout_freq = 7.600;
    p.purcell_linewidth = 0.0225;
    p.t1 = 26000.0;
    p.t2 = 22000.0;
    t.f_drive_freq_measured = 4.135;
    t.h_drive_freq_measured = 3.496;
    t.removal_fraction_f = 0.992;
    t.removal_fraction_h = 0.961;
  } else if (name == "D2") {
    p.qubit_freq = 4.788;
    p.anharmonicity = -0.321;
    p.readout_freq = 7.105;
    p.purcell_linewidth = 0.0126;
    p.t1 = 37000.0;
    p.t2 = 27000.0;
    t.f_drive_freq_measured = 2.152;
    t.removal_fraction_f = 0.803;
  } else {
    throw ConfigError("unknown transmon preset: " + name + " (expected D1, A or D2)");
  }
  p.purcell_freq = model::matched_purcell_frequency(p.qubit_freq, p.readout_freq, p.tr_coupling);
  return t;
}

// Two-qubit gate metrics: first value for the D1-A gate, second for A-D2.
inline constexpr double kCzErrorD1A = 0.011;
inline constexpr double kCzErrorAD2 = 0.019;
inline constexpr double kCzLeakageD1A = 0.0037;
inline constexpr double kCzLeakageAD2 = 0.0011;

}  // namespace lrusim::presets

#endif  // LRUSIM_PRESETS_HPP
