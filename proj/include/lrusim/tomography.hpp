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

#ifndef LRUSIM_TOMOGRAPHY_HPP
#define LRUSIM_TOMOGRAPHY_HPP

#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "lrusim/dynamics.hpp"

namespace lrusim::tomography {

using model::Complex;

/// Physical (or to-be-projected) qubit state.
struct QubitDensityMatrix {
  Eigen::Matrix2cd rho;
};

inline Eigen::Matrix2cd pauli(int k) {
  Eigen::Matrix2cd m;
  const Complex i(0.0, 1.0);
  switch (k) {
    case 0: m << 1, 0, 0, 1; break;
    case 1: m << 0, 1, 1, 0; break;           // X
    case 2: m << 0, -i, i, 0; break;          // Y
    default: m << 1, 0, 0, -1; break;         // Z
  }
  return m;
}

struct PauliExpectations {
  double x = 0.0, y = 0.0, z = 0.0;
};

inline PauliExpectations pauli_expectations(const QubitDensityMatrix& q) {
  PauliExpectations e;
  e.x = (q.rho * pauli(1)).trace().real();
  e.y = (q.rho * pauli(2)).trace().real();
  e.z = (q.rho * pauli(3)).trace().real();
  return e;
}

inline QubitDensityMatrix state_from_bloch(double x, double y, double z) {
  QubitDensityMatrix q;
  q.rho = 0.5 * (pauli(0) + x * pauli(1) + y * pauli(2) + z * pauli(3));
  return q;
}

/// Nearest physical state to the linear-inversion estimate: eigenvalues of
/// (I + x X + y Y + z Z)/2 are clipped at zero and renormalized. Exact on
/// physical inputs.
inline QubitDensityMatrix reconstruct_state_mle(const PauliExpectations& e) {
  QubitDensityMatrix lin = state_from_bloch(e.x, e.y, e.z);
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(lin.rho);
  Eigen::Vector2d vals = es.eigenvalues().cwiseMax(0.0);
  const double tr = vals.sum();
  if (tr <= 0.0) {
    // All-zero can only happen for wildly unphysical input; fall back to I/2.
    QubitDensityMatrix q;
    q.rho = 0.5 * pauli(0);
    return q;
  }
  vals /= tr;
  QubitDensityMatrix q;
  q.rho = es.eigenvectors() * vals.asDiagonal() * es.eigenvectors().adjoint();
  return q;
}

/// Real 4x4 channel representation in the {I, X, Y, Z} basis.
struct PauliTransferMatrix {
  Eigen::Matrix4d r = Eigen::Matrix4d::Identity();
};

inline PauliTransferMatrix identity_ptm() { return {}; }

inline PauliTransferMatrix z_rotation_ptm(double phi) {
  PauliTransferMatrix p;
  p.r.setIdentity();
  p.r(1, 1) = std::cos(phi);
  p.r(1, 2) = -std::sin(phi);
  p.r(2, 1) = std::sin(phi);
  p.r(2, 2) = std::cos(phi);
  return p;
}

/// The six cardinal input states |0>, |+>, |+i>, |1>, |->, |-i>.
inline std::vector<QubitDensityMatrix> cardinal_states() {
  return {state_from_bloch(0, 0, 1),  state_from_bloch(1, 0, 0),  state_from_bloch(0, 1, 0),
          state_from_bloch(0, 0, -1), state_from_bloch(-1, 0, 0), state_from_bloch(0, -1, 0)};
}

inline const std::vector<std::string>& cardinal_labels() {
  static const std::vector<std::string> l = {"0", "+", "+i", "1", "-", "-i"};
  return l;
}

using QubitChannel = std::function<QubitDensityMatrix(const QubitDensityMatrix&)>;

/// PTM reconstruction from the channel outputs on the six cardinal inputs:
/// least squares over the overcomplete input set, with the trace row
/// enforced as (1,0,0,0).
inline PauliTransferMatrix process_tomography(const QubitChannel& channel) {
  const auto inputs = cardinal_states();
  Eigen::MatrixXd design(static_cast<int>(inputs.size()), 4);
  Eigen::MatrixXd targets(static_cast<int>(inputs.size()), 3);
  for (std::size_t k = 0; k < inputs.size(); ++k) {
    const auto in = pauli_expectations(inputs[k]);
    design(static_cast<int>(k), 0) = 1.0;
    design(static_cast<int>(k), 1) = in.x;
    design(static_cast<int>(k), 2) = in.y;
    design(static_cast<int>(k), 3) = in.z;
    const QubitDensityMatrix out = channel(inputs[k]);
    const auto s = pauli_expectations(out);
    targets(static_cast<int>(k), 0) = s.x;
    targets(static_cast<int>(k), 1) = s.y;
    targets(static_cast<int>(k), 2) = s.z;
  }
  const Eigen::MatrixXd sol = design.colPivHouseholderQr().solve(targets);
  PauliTransferMatrix ptm;
  ptm.r.setZero();
  ptm.r(0, 0) = 1.0;
  for (int row = 0; row < 3; ++row)
    for (int col = 0; col < 4; ++col) ptm.r(row + 1, col) = sol(col, row);
  return ptm;
}

/// Apply a PTM to a state (used to turn a PTM back into a channel for
/// round-trip property checks).
inline QubitChannel ptm_to_channel(const PauliTransferMatrix& ptm) {
  return [ptm](const QubitDensityMatrix& in) {
    const auto e = pauli_expectations(in);
    Eigen::Vector4d v(1.0, e.x, e.y, e.z);
    Eigen::Vector4d w = ptm.r * v;
    QubitDensityMatrix out = state_from_bloch(w(1), w(2), w(3));
    out.rho *= w(0);  // trace component (1 for TP maps)
    return out;
  };
}

/// Virtual-Z correction: returns R_Z(-phi) * ptm. A pure frame rotation;
/// singular values are unchanged.
inline PauliTransferMatrix apply_virtual_z(const PauliTransferMatrix& ptm, double phi) {
  PauliTransferMatrix out;
  out.r = z_rotation_ptm(-phi).r * ptm.r;
  return out;
}

/// Rotation angle of the XY block, atan2 of the antisymmetric vs symmetric
/// parts.
inline double extract_z_angle(const PauliTransferMatrix& ptm) {
  return std::atan2(ptm.r(2, 1) - ptm.r(1, 2), ptm.r(1, 1) + ptm.r(2, 2));
}

/// Average gate fidelity for qubit channels:
/// F_avg = (Tr(ideal^T measured)/2 + 1)/3.
inline double average_gate_fidelity(const PauliTransferMatrix& measured,
                                    const PauliTransferMatrix& ideal) {
  return ((ideal.r.transpose() * measured.r).trace() / 2.0 + 1.0) / 3.0;
}

/// AC-Stark fit: ordinary least squares of phase versus pulse duration.
/// Slope is rad/ns; the shift is reported in kHz. Phases must already be
/// unwrapped (see util::unwrap_phases).
struct StarkFit {
  double shift_khz = 0.0;
  double intercept = 0.0;  // rad
  double r_squared = 0.0;
};

inline StarkFit fit_ac_stark(const std::vector<double>& durations_ns,
                             const std::vector<double>& phases_rad) {
  if (durations_ns.size() < 3)
    throw std::invalid_argument("fit_ac_stark: need at least 3 points");
  const auto fit = util::fit_line(durations_ns, phases_rad);
  StarkFit s;
  s.shift_khz = fit.slope / kTwoPi * 1e6;  // rad/ns -> GHz -> kHz
  s.intercept = fit.intercept;
  s.r_squared = fit.r_squared;
  return s;
}

// ---------------------------------------------------------------------------
// Qubit-subspace channel of a simulated LRU pulse.
// ---------------------------------------------------------------------------

/// Result of pushing a qubit state through the full pulse simulation:
/// the renormalized qubit block and the weight that leaked out of it.
struct LruChannelOutput {
  QubitDensityMatrix state;
  double leaked_weight = 0.0;
};

/// Extract the g/e block of the transmon marginal, renormalized to the
/// qubit subspace; the leaked weight is reported separately.
inline LruChannelOutput qubit_block(const dynamics::DensityState& st) {
  const model::HilbertSpace& hs = st.space;
  Eigen::Matrix2cd block = Eigen::Matrix2cd::Zero();
  for (int r = 0; r < hs.dims[1]; ++r)
    for (int p = 0; p < hs.dims[2]; ++p)
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
          block(a, b) += st.rho(hs.index(a, r, p), hs.index(b, r, p));
  LruChannelOutput out;
  const double tr = block.trace().real();
  out.leaked_weight = 1.0 - tr;
  out.state.rho = block / tr;
  return out;
}

/// Phase of the g-e coherence of the qubit block.
inline double ge_coherence_phase(const dynamics::DensityState& st) {
  const auto q = qubit_block(st);
  return std::arg(q.state.rho(1, 0));
}

struct LruQubitChannelOptions {
  dynamics::EvolveOptions evolve;
  bool idle_referenced = true;  // subtract the free-evolution frame phase
};

/// The LRU pulse as a qubit channel. Qubit states are embedded on (and read
/// back from) the dressed |g00>/|e00> eigenstates of H0 with empty
/// resonators -- the states the hardware actually prepares -- then the
/// drive runs and the renormalized dressed-qubit block is returned, with
/// the phase an undriven idle of the same duration would have accumulated
/// rotated out (the lab frame tracks the idling qubit).
class LruQubitChannel {
 public:
  LruQubitChannel(const model::SystemParams& params, std::vector<dynamics::PulseParams> drives,
                  LruQubitChannelOptions opts = {})
      : model_(dynamics::build_lindblad_model(params)), drives_(std::move(drives)), opts_(opts) {
    t_end_ = 0.0;
    for (const auto& d : drives_) t_end_ = std::max(t_end_, d.duration);

    // Dressed qubit basis vectors, phase-fixed so the bare component is
    // real positive.
    const model::HilbertSpace& hs = model_.space;
    Eigen::SelfAdjointEigenSolver<model::Mat> es(model_.h0.matrix);
    for (int level = 0; level < 2; ++level) {
      const int bare = hs.index(level, 0, 0);
      int best = 0;
      double best_ov = -1.0;
      for (int k = 0; k < hs.size(); ++k) {
        const double ov = std::norm(es.eigenvectors()(bare, k));
        if (ov > best_ov) {
          best_ov = ov;
          best = k;
        }
      }
      model::Vec v = es.eigenvectors().col(best);
      const Complex ph = v(bare) / std::abs(v(bare));
      dressed_[level] = v / ph;
    }
    if (opts_.idle_referenced) {
      idle_phase_ = coherence_phase(run(state_from_bloch(1, 0, 0), false).full_state);
    }
  }

  struct Run {
    LruChannelOutput out;
    dynamics::DensityState full_state;
  };

  /// Dressed-basis qubit block of a full register state.
  LruChannelOutput dressed_block(const dynamics::DensityState& st) const {
    LruChannelOutput out;
    Eigen::Matrix2cd block;
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) block(a, b) = dressed_[a].dot(st.rho * dressed_[b]);
    const double tr = block.trace().real();
    out.leaked_weight = 1.0 - tr;
    out.state.rho = block / tr;
    return out;
  }

  double coherence_phase(const dynamics::DensityState& st) const {
    return std::arg(dressed_block(st).state.rho(1, 0));
  }

  Run run(const QubitDensityMatrix& in, bool driven = true) const {
    const model::HilbertSpace& hs = model_.space;
    model::Mat rho0 = model::Mat::Zero(hs.size(), hs.size());
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) rho0 += in.rho(a, b) * (dressed_[a] * dressed_[b].adjoint());
    dynamics::DensityState st{rho0, hs};
    std::vector<dynamics::PulseParams> drv = drives_;
    if (!driven)
      for (auto& d : drv) d.amplitude = 0.0;
    dynamics::EvolveOptions eo = opts_.evolve;
    if (eo.frame_freq < 0.0 && !drives_.empty()) eo.frame_freq = drives_.front().frequency;
    auto res = dynamics::evolve(model_, drv, st, t_end_, eo);
    Run r{dressed_block(res.final_state), std::move(res.final_state)};
    return r;
  }

  /// Channel evaluation with the idle frame phase rotated out.
  LruChannelOutput apply(const QubitDensityMatrix& in) const {
    Run r = run(in, true);
    if (opts_.idle_referenced) {
      Eigen::Matrix2cd u;
      const Complex i(0.0, 1.0);
      u << 1.0, 0.0, 0.0, std::exp(-i * idle_phase_);
      r.out.state.rho = u * r.out.state.rho * u.adjoint();
    }
    return r.out;
  }

  QubitChannel as_channel() const {
    return [this](const QubitDensityMatrix& in) { return apply(in).state; };
  }

  /// Drive-induced qubit phase for the configured pulse: the g-e coherence
  /// phase of a driven |+> run relative to the undriven reference.
  double stark_phase() const {
    const double driven = coherence_phase(run(state_from_bloch(1, 0, 0), true).full_state);
    double d = driven - idle_phase_;
    while (d > M_PI) d -= kTwoPi;
    while (d < -M_PI) d += kTwoPi;
    return d;
  }

  const dynamics::LindbladModel& model() const { return model_; }

 private:
  dynamics::LindbladModel model_;
  std::vector<dynamics::PulseParams> drives_;
  LruQubitChannelOptions opts_;
  double t_end_ = 0.0;
  double idle_phase_ = 0.0;
  std::array<model::Vec, 2> dressed_;
};

/// Stark-shift characterization: run the pulse at several durations and fit
/// the accumulated qubit phase versus duration.
struct StarkScan {
  std::vector<double> durations;
  std::vector<double> phases;  // unwrapped
  StarkFit fit;
};

inline StarkScan scan_ac_stark(const model::SystemParams& params,
                               const dynamics::PulseParams& base,
                               const std::vector<double>& durations,
                               const LruQubitChannelOptions& opts = {}) {
  StarkScan scan;
  scan.durations = durations;
  scan.phases.resize(durations.size());
  util::parallel_for(durations.size(), 0, [&](std::size_t i) {
    dynamics::PulseParams p = base;
    p.duration = durations[i];
    LruQubitChannel ch(params, {p}, opts);
    scan.phases[i] = ch.stark_phase();
  });
  scan.phases = util::unwrap_phases(scan.phases);
  scan.fit = fit_ac_stark(scan.durations, scan.phases);
  return scan;
}

}  // namespace lrusim::tomography

#endif  // LRUSIM_TOMOGRAPHY_HPP
