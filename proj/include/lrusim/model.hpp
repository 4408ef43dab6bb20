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

#ifndef LRUSIM_MODEL_HPP
#define LRUSIM_MODEL_HPP

#include <Eigen/Dense>
#include <complex>
#include <string>
#include <vector>

#include "lrusim/util.hpp"

namespace lrusim::model {

using Complex = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

/// Physical parameters of one transmon and its readout/Purcell resonator
/// pair. Frequencies are linear (GHz); conversion to angular units happens
/// inside Hamiltonian construction. Times are in ns.
struct SystemParams {
  double qubit_freq = 0.0;        // omega_Q, g-e transition (GHz)
  double anharmonicity = 0.0;     // alpha, negative (GHz)
  double readout_freq = 0.0;      // omega_R (GHz)
  double purcell_freq = 0.0;      // omega_P (GHz)
  double tr_coupling = 0.0;       // g, transmon-readout (GHz)
  double rp_coupling = 0.0;       // J, readout-Purcell (GHz)
  double purcell_linewidth = 0.0; // kappa (GHz, linear; angular rate is 2*pi*kappa)
  double t1 = 0.0;                // ns
  double t2 = 0.0;                // ns
  int n_transmon_levels = 4;
  int n_readout_photons = 3;      // Fock-space dimension of the readout resonator
  int n_purcell_photons = 3;      // Fock-space dimension of the Purcell resonator

  /// Pure-dephasing rate 1/T2 - 1/(2 T1), in 1/ns.
  double pure_dephasing_rate() const { return 1.0 / t2 - 0.5 / t1; }

  void validate() const {
    if (!(anharmonicity < 0.0)) throw ConfigError("SystemParams: anharmonicity must be < 0");
    if (!(qubit_freq > 0.0 && readout_freq > 0.0 && purcell_freq > 0.0))
      throw ConfigError("SystemParams: all frequencies must be > 0");
    if (!(purcell_linewidth > 0.0)) throw ConfigError("SystemParams: kappa must be > 0");
    if (!(t1 > 0.0 && t2 > 0.0)) throw ConfigError("SystemParams: T1, T2 must be > 0");
    if (t2 > 2.0 * t1 + 1e-12) throw ConfigError("SystemParams: T2 must be <= 2*T1");
    if (n_transmon_levels < 3) throw ConfigError("SystemParams: need >= 3 transmon levels");
    if (n_readout_photons < 2) throw ConfigError("SystemParams: need >= 2 readout levels");
    if (n_purcell_photons < 2) throw ConfigError("SystemParams: need >= 2 Purcell levels");
  }
};

inline const char* kTransmonLetters = "gefhij";

/// Truncated composite space transmon (x) readout (x) Purcell with basis
/// labels |T,R,P> such as "f00". Index order is transmon-major.
struct HilbertSpace {
  std::vector<int> dims;  // {n_transmon, n_readout, n_purcell}

  HilbertSpace() = default;
  HilbertSpace(int nt, int nr, int np) : dims{nt, nr, np} {
    if (nt < 2 || nr < 1 || np < 1 || nt > 6 || nr > 9 || np > 9)
      throw ConfigError("HilbertSpace: unsupported truncation");
  }
  static HilbertSpace of(const SystemParams& p) {
    return HilbertSpace(p.n_transmon_levels, p.n_readout_photons, p.n_purcell_photons);
  }

  int size() const { return dims[0] * dims[1] * dims[2]; }
  int index(int t, int r, int p) const { return (t * dims[1] + r) * dims[2] + p; }
  int transmon_of(int idx) const { return idx / (dims[1] * dims[2]); }
  int readout_of(int idx) const { return (idx / dims[2]) % dims[1]; }
  int purcell_of(int idx) const { return idx % dims[2]; }
  int excitation_of(int idx) const {
    return transmon_of(idx) + readout_of(idx) + purcell_of(idx);
  }

  std::string label(int idx) const {
    std::string s;
    s += kTransmonLetters[transmon_of(idx)];
    s += static_cast<char>('0' + readout_of(idx));
    s += static_cast<char>('0' + purcell_of(idx));
    return s;
  }

  /// Inverse of label(); throws on malformed or out-of-range labels.
  int index_of_label(const std::string& lbl) const {
    if (lbl.size() != 3) throw ConfigError("bad basis label: " + lbl);
    int t = -1;
    for (int i = 0; i < 6; ++i)
      if (kTransmonLetters[i] == lbl[0]) t = i;
    const int r = lbl[1] - '0';
    const int p = lbl[2] - '0';
    if (t < 0 || t >= dims[0] || r < 0 || r >= dims[1] || p < 0 || p >= dims[2])
      throw ConfigError("basis label out of range: " + lbl);
    return index(t, r, p);
  }

  bool operator==(const HilbertSpace& o) const { return dims == o.dims; }
};

/// A square operator over a HilbertSpace.
struct Operator {
  Mat matrix;
  HilbertSpace space;

  int dim() const { return static_cast<int>(matrix.rows()); }
  bool is_hermitian(double rel_tol = 1e-12) const {
    const double scale = std::max(1.0, matrix.norm());
    return (matrix - matrix.adjoint()).norm() < rel_tol * scale;
  }
};

namespace detail {

/// Annihilation operator acting on one tensor factor of the composite space.
/// factor: 0 = transmon, 1 = readout, 2 = Purcell.
inline Mat annihilation(const HilbertSpace& hs, int factor) {
  const int n = hs.size();
  Mat a = Mat::Zero(n, n);
  for (int idx = 0; idx < n; ++idx) {
    int t = hs.transmon_of(idx), r = hs.readout_of(idx), p = hs.purcell_of(idx);
    int q[3] = {t, r, p};
    if (q[factor] == 0) continue;
    const double amp = std::sqrt(static_cast<double>(q[factor]));
    q[factor] -= 1;
    a(hs.index(q[0], q[1], q[2]), idx) = amp;
  }
  return a;
}

}  // namespace detail

inline Mat transmon_lowering(const HilbertSpace& hs) { return detail::annihilation(hs, 0); }
inline Mat readout_lowering(const HilbertSpace& hs) { return detail::annihilation(hs, 1); }
inline Mat purcell_lowering(const HilbertSpace& hs) { return detail::annihilation(hs, 2); }

inline Mat total_number_operator(const HilbertSpace& hs) {
  const int n = hs.size();
  Mat m = Mat::Zero(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = static_cast<double>(hs.excitation_of(i));
  return m;
}

/// Static Hamiltonian
///   H0 = wQ b'b + (alpha/2) b'b'bb + wR a'a + wP c'c + g(b'a + ba') + J(a'c + ac')
/// in angular units (rad/ns); parameters are linear GHz and multiplied by
/// 2*pi here.
inline Operator build_static_hamiltonian(const SystemParams& p) {
  if (p.n_transmon_levels < 3 || p.n_readout_photons < 2 || p.n_purcell_photons < 2)
    throw ConfigError("build_static_hamiltonian: truncation below minimum dimensions");
  const HilbertSpace hs = HilbertSpace::of(p);
  const int n = hs.size();
  Mat h = Mat::Zero(n, n);
  // Diagonal part.
  for (int idx = 0; idx < n; ++idx) {
    const double t = hs.transmon_of(idx);
    const double r = hs.readout_of(idx);
    const double q = hs.purcell_of(idx);
    double e = p.qubit_freq * t + 0.5 * p.anharmonicity * t * (t - 1.0) +
               p.readout_freq * r + p.purcell_freq * q;
    h(idx, idx) = kTwoPi * e;
  }
  // Couplings (number-conserving hopping terms).
  for (int idx = 0; idx < n; ++idx) {
    const int t = hs.transmon_of(idx), r = hs.readout_of(idx), q = hs.purcell_of(idx);
    // g (b'a + b a'): move one quantum readout -> transmon.
    if (r > 0 && t + 1 < hs.dims[0]) {
      const int jdx = hs.index(t + 1, r - 1, q);
      const double amp = kTwoPi * p.tr_coupling * std::sqrt(double(t + 1)) * std::sqrt(double(r));
      h(jdx, idx) += amp;
      h(idx, jdx) += amp;
    }
    // J (a'c + a c'): move one quantum Purcell -> readout.
    if (q > 0 && r + 1 < hs.dims[1]) {
      const int jdx = hs.index(t, r + 1, q - 1);
      const double amp = kTwoPi * p.rp_coupling * std::sqrt(double(r + 1)) * std::sqrt(double(q));
      h(jdx, idx) += amp;
      h(idx, jdx) += amp;
    }
  }
  return Operator{std::move(h), hs};
}

/// Bare Purcell frequency that matches the pair at the dressed level: the
/// transmon pulls the readout mode up by ~g^2/(wR - wQ), so matching the
/// bare frequencies would leave the pair effectively detuned by that much
/// and localize the hybrid modes. Devices match the measured (dressed)
/// frequencies, which this reproduces.
inline double matched_purcell_frequency(double qubit_freq, double readout_freq,
                                        double tr_coupling) {
  return readout_freq + tr_coupling * tr_coupling / (readout_freq - qubit_freq);
}

/// Eigenfrequencies (GHz) of the single-photon resonator block
/// [[wR, J], [J, wP]]: mean -/+ sqrt(delta^2/4 + J^2). For matched
/// resonators this is wRP -/+ J. The mean of the two defines the wRP used
/// in the transition-frequency estimates.
inline std::pair<double, double> dressed_resonator_modes(const SystemParams& p) {
  const double mean = 0.5 * (p.readout_freq + p.purcell_freq);
  const double half = 0.5 * (p.purcell_freq - p.readout_freq);
  const double disc = std::sqrt(half * half + p.rp_coupling * p.rp_coupling);
  return {mean - disc, mean + disc};
}

inline double resonator_mode_mean(const SystemParams& p) {
  auto [lo, hi] = dressed_resonator_modes(p);
  return 0.5 * (lo + hi);
}

/// Approximate |f00> <-> |g1+-> drive frequency, 2 wQ + alpha - wRP (GHz).
/// The exact dressed value from H0 eigenvalues agrees with this up to
/// corrections of order |g|^2 over the detunings.
inline double f_transition_frequency(const SystemParams& p) {
  return 2.0 * p.qubit_freq + p.anharmonicity - resonator_mode_mean(p);
}

/// Approximate |h00> <-> |e1+-> drive frequency, 2 wQ + 3 alpha - wRP (GHz);
/// sits 2 alpha below the f transition. Requires at least 4 transmon levels.
inline double h_transition_frequency(const SystemParams& p) {
  if (p.n_transmon_levels < 4)
    throw ConfigError("h_transition_frequency: needs >= 4 transmon levels");
  return 2.0 * p.qubit_freq + 3.0 * p.anharmonicity - resonator_mode_mean(p);
}

/// Exact dressed transition gaps from H0 eigenvalues, identifying dressed
/// states by maximum overlap with the given bare levels. Returns GHz.
struct DressedGaps {
  double lower = 0.0;  // transition into the lower resonator mode |1->
  double upper = 0.0;  // transition into the upper resonator mode |1+>
};

namespace detail {

inline int max_overlap_eigenvector(const Eigen::SelfAdjointEigenSolver<Mat>& es, const Vec& target) {
  int best = 0;
  double best_ov = -1.0;
  for (int i = 0; i < es.eigenvectors().cols(); ++i) {
    const double ov = std::norm(target.dot(es.eigenvectors().col(i)));
    if (ov > best_ov) {
      best_ov = ov;
      best = i;
    }
  }
  return best;
}

/// Gap between the dressed state nearest |T=hi_level,0,0> and the two dressed
/// single-photon resonator modes taken against transmon level lo_level.
inline DressedGaps dressed_gaps(const SystemParams& p, int hi_level, int lo_level) {
  const Operator h0 = build_static_hamiltonian(p);
  const HilbertSpace& hs = h0.space;
  Eigen::SelfAdjointEigenSolver<Mat> es(h0.matrix);
  if (es.info() != Eigen::Success) throw NumericalError("eigensolver failed");

  Vec up = Vec::Zero(hs.size());
  up(hs.index(hi_level, 0, 0)) = 1.0;
  Vec lo_minus = Vec::Zero(hs.size());
  Vec lo_plus = Vec::Zero(hs.size());
  // |1-+> = (|10> -+ |01>)/sqrt(2) for matched resonators; for detuned
  // resonators max-overlap against these still picks the two hybrid modes.
  lo_minus(hs.index(lo_level, 1, 0)) = 1.0 / std::sqrt(2.0);
  lo_minus(hs.index(lo_level, 0, 1)) = -1.0 / std::sqrt(2.0);
  lo_plus(hs.index(lo_level, 1, 0)) = 1.0 / std::sqrt(2.0);
  lo_plus(hs.index(lo_level, 0, 1)) = 1.0 / std::sqrt(2.0);

  const double e_up = es.eigenvalues()(max_overlap_eigenvector(es, up));
  const double e_m = es.eigenvalues()(max_overlap_eigenvector(es, lo_minus));
  const double e_p = es.eigenvalues()(max_overlap_eigenvector(es, lo_plus));
  DressedGaps g;
  g.lower = (e_up - e_m) / kTwoPi;
  g.upper = (e_up - e_p) / kTwoPi;
  if (g.lower < g.upper) std::swap(g.lower, g.upper);  // lower mode => larger gap
  return g;
}

}  // namespace detail

/// Exact dressed |f00> <-> |g1-+> gaps (GHz), from H0 eigenvalues.
inline DressedGaps dressed_f_transitions(const SystemParams& p) {
  return detail::dressed_gaps(p, 2, 0);
}

/// Exact dressed |h00> <-> |e1-+> gaps (GHz), from H0 eigenvalues.
inline DressedGaps dressed_h_transitions(const SystemParams& p) {
  if (p.n_transmon_levels < 4)
    throw ConfigError("dressed_h_transitions: needs >= 4 transmon levels");
  return detail::dressed_gaps(p, 3, 1);
}

}  // namespace lrusim::model

#endif  // LRUSIM_MODEL_HPP
