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

#ifndef LRUSIM_DYNAMICS_HPP
#define LRUSIM_DYNAMICS_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lrusim/model.hpp"
#include "lrusim/util.hpp"

namespace lrusim::dynamics {

using model::Complex;
using model::HilbertSpace;
using model::Operator;
using model::SystemParams;

// Row-major storage so that the triplet kernels below touch contiguous rows.
using RowMat = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using RowMatD = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// LRU drive definition (sin^2 rise/fall envelope with flat top).
struct PulseParams {
  double amplitude = 0.0;  // A, peak drive strength (rad/ns)
  double frequency = 0.0;  // omega_d (GHz)
  double rise_time = 30.0; // t_r (ns)
  double duration = 220.0; // t_p (ns)
  double phase = 0.0;      // rad

  void validate() const {
    if (!(rise_time > 0.0) || 2.0 * rise_time > duration + 1e-12)
      throw ConfigError("PulseParams: need 0 < 2*rise_time <= duration");
    if (amplitude < 0.0) throw ConfigError("PulseParams: amplitude must be >= 0");
  }
};

/// Pulse envelope: sin^2 ramp up over t_r, flat top at A, sin^2 ramp down.
/// t must lie in [0, t_p].
inline double envelope(const PulseParams& pulse, double t) {
  if (t < 0.0 || t > pulse.duration)
    throw std::invalid_argument("envelope: t outside [0, t_p]");
  const double tr = pulse.rise_time, tp = pulse.duration;
  if (t <= tr) {
    const double s = std::sin(0.5 * M_PI * t / tr);
    return pulse.amplitude * s * s;
  }
  if (t >= tp - tr) {
    const double s = std::sin(0.5 * M_PI * (tp - t) / tr);
    return pulse.amplitude * s * s;
  }
  return pulse.amplitude;
}

namespace detail {
inline double envelope_or_zero(const PulseParams& p, double t) {
  if (t < 0.0 || t > p.duration) return 0.0;
  return envelope(p, t);
}
}  // namespace detail

/// Density operator with explicit dimension bookkeeping.
struct DensityState {
  RowMat rho;
  HilbertSpace space;

  double trace() const { return rho.trace().real(); }
  double population(int idx) const { return rho(idx, idx).real(); }
  double hermiticity_defect() const { return (rho - rho.adjoint()).cwiseAbs().maxCoeff(); }
  double purity() const { return (rho * rho).trace().real(); }

  void check_valid(double tol = 1e-9) const {
    if (std::abs(trace() - 1.0) > tol) throw NumericalError("DensityState: trace deviates from 1");
    if (hermiticity_defect() > tol) throw NumericalError("DensityState: not Hermitian");
    Eigen::SelfAdjointEigenSolver<model::Mat> es(rho);
    if (es.eigenvalues().minCoeff() < -tol) throw NumericalError("DensityState: negative eigenvalue");
  }
};

inline DensityState basis_state(const HilbertSpace& hs, const std::string& label) {
  DensityState st{RowMat::Zero(hs.size(), hs.size()), hs};
  st.rho(hs.index_of_label(label), hs.index_of_label(label)) = 1.0;
  return st;
}

inline DensityState pure_state(const HilbertSpace& hs, const model::Vec& psi) {
  DensityState st{RowMat::Zero(hs.size(), hs.size()), hs};
  st.rho = (psi * psi.adjoint()) / psi.squaredNorm();
  return st;
}

/// Transmon state labels accepted by simulate_lru_pulse: bare levels g/e/f/h
/// and the qubit-subspace cardinal superpositions +, -, +i, -i.
inline DensityState initial_transmon_state(const HilbertSpace& hs, const std::string& label) {
  if (label.size() == 1 && std::string("gefh").find(label[0]) != std::string::npos) {
    const int lvl = static_cast<int>(std::string("gefh").find(label[0]));
    if (lvl >= hs.dims[0]) throw ConfigError("initial state beyond transmon truncation: " + label);
    model::Vec psi = model::Vec::Zero(hs.size());
    psi(hs.index(lvl, 0, 0)) = 1.0;
    return pure_state(hs, psi);
  }
  model::Vec psi = model::Vec::Zero(hs.size());
  const Complex i01(0.0, 1.0);
  if (label == "+") {
    psi(hs.index(0, 0, 0)) = 1.0;
    psi(hs.index(1, 0, 0)) = 1.0;
  } else if (label == "-") {
    psi(hs.index(0, 0, 0)) = 1.0;
    psi(hs.index(1, 0, 0)) = -1.0;
  } else if (label == "+i") {
    psi(hs.index(0, 0, 0)) = 1.0;
    psi(hs.index(1, 0, 0)) = i01;
  } else if (label == "-i") {
    psi(hs.index(0, 0, 0)) = 1.0;
    psi(hs.index(1, 0, 0)) = -i01;
  } else {
    throw ConfigError("unknown initial transmon state: " + label);
  }
  return pure_state(hs, psi);
}

/// Per-time populations for every basis label plus the transmon marginals
/// g/e/f/h, and the final density operator.
struct EvolutionResult {
  std::vector<double> times;                     // ns
  std::vector<std::string> labels;               // basis labels then marginals
  std::vector<std::vector<double>> populations;  // [time][label]
  DensityState final_state;

  int label_index(const std::string& lbl) const {
    for (std::size_t i = 0; i < labels.size(); ++i)
      if (labels[i] == lbl) return static_cast<int>(i);
    throw std::invalid_argument("unknown population label: " + lbl);
  }
  double final_population(const std::string& lbl) const {
    return populations.back()[label_index(lbl)];
  }
  std::vector<double> series(const std::string& lbl) const {
    const int k = label_index(lbl);
    std::vector<double> out(times.size());
    for (std::size_t i = 0; i < times.size(); ++i) out[i] = populations[i][k];
    return out;
  }
};

namespace detail {

struct Entry {
  int r, c;
  Complex v;
};
using TripletOp = std::vector<Entry>;

inline TripletOp to_triplets(const model::Mat& m, double drop = 0.0) {
  TripletOp op;
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c)
      if (std::abs(m(r, c)) > drop) op.push_back({r, c, m(r, c)});
  return op;
}

// out += alpha * Op * in  (row kernel; rows are contiguous in RowMat).
// Raw double-pair loops: the hot path of the integrator.
inline void apply_left(RowMat& out, Complex alpha, const TripletOp& op, const RowMat& in) {
  const int n = static_cast<int>(out.cols());
  double* od = reinterpret_cast<double*>(out.data());
  const double* id = reinterpret_cast<const double*>(in.data());
  for (const Entry& e : op) {
    const Complex s = alpha * e.v;
    const double sr = s.real(), si = s.imag();
    double* __restrict dst = od + 2 * static_cast<std::size_t>(e.r) * n;
    const double* __restrict src = id + 2 * static_cast<std::size_t>(e.c) * n;
    for (int k = 0; k < n; ++k) {
      const double xr = src[2 * k], xi = src[2 * k + 1];
      dst[2 * k] += sr * xr - si * xi;
      dst[2 * k + 1] += sr * xi + si * xr;
    }
  }
}

// out += in * Op^dagger  for the same Op (column kernel)
inline void apply_right_adjoint(RowMat& out, const TripletOp& op, const RowMat& in) {
  const int n = static_cast<int>(out.cols());
  const std::size_t stride = 2 * static_cast<std::size_t>(n);
  double* od = reinterpret_cast<double*>(out.data());
  const double* id = reinterpret_cast<const double*>(in.data());
  for (const Entry& e : op) {
    const double sr = e.v.real(), si = -e.v.imag();  // conj(v)
    double* __restrict dst = od + 2 * static_cast<std::size_t>(e.r);
    const double* __restrict src = id + 2 * static_cast<std::size_t>(e.c);
    for (int k = 0; k < n; ++k) {
      const double xr = src[k * stride], xi = src[k * stride + 1];
      dst[k * stride] += sr * xr - si * xi;
      dst[k * stride + 1] += sr * xi + si * xr;
    }
  }
}

}  // namespace detail

/// Precompiled Lindblad generator pieces for one transmon-resonator system.
/// Collapse operators: sqrt(kappa) c, sqrt(1/T1) b and sqrt(2 gamma_phi) b'b
/// with gamma_phi = 1/T2 - 1/(2 T1).
struct LindbladModel {
  SystemParams params;
  HilbertSpace space;
  Operator h0;                              // lab-frame static Hamiltonian (rad/ns)
  detail::TripletOp h0_triplets;            // without the frame shift
  detail::TripletOp drive_op;               // transmon lowering b
  detail::TripletOp drive_op_dag;           // b'
  std::vector<detail::TripletOp> ladder_jumps;  // prescaled by sqrt(rate)
  Eigen::VectorXd dephasing_diag;           // sqrt(2 gamma_phi) * n_transmon
  Eigen::VectorXd jump_rate_diag;           // sum of C'C diagonals (all collapse ops)
  Eigen::VectorXd h_diag_ghz;               // bare diagonal of h0 / 2pi
};

inline LindbladModel build_lindblad_model(const SystemParams& p) {
  LindbladModel m;
  m.params = p;
  m.h0 = model::build_static_hamiltonian(p);
  m.space = m.h0.space;
  const int n = m.space.size();

  model::Mat h_offdiag = m.h0.matrix;
  m.h_diag_ghz.resize(n);
  for (int i = 0; i < n; ++i) {
    m.h_diag_ghz(i) = m.h0.matrix(i, i).real() / kTwoPi;
  }
  m.h0_triplets = detail::to_triplets(m.h0.matrix, 0.0);

  const model::Mat b = model::transmon_lowering(m.space);
  m.drive_op = detail::to_triplets(b);
  m.drive_op_dag = detail::to_triplets(model::Mat(b.adjoint()));

  m.jump_rate_diag = Eigen::VectorXd::Zero(n);
  // sqrt(kappa) c: Purcell photon loss. kappa is stored linear (GHz); the
  // angular rate 2*pi*kappa gives photon intensity decay exp(-2*pi*kappa t).
  {
    const double rate = kTwoPi * p.purcell_linewidth;
    model::Mat c = std::sqrt(rate) * model::purcell_lowering(m.space);
    m.ladder_jumps.push_back(detail::to_triplets(c));
    for (int i = 0; i < n; ++i) m.jump_rate_diag(i) += rate * m.space.purcell_of(i);
  }
  // sqrt(1/T1) b: transmon relaxation; annihilation-operator damping implies
  // Gamma_{f->e} = 2/T1 and Gamma_{h->f} = 3/T1.
  if (p.t1 > 0.0 && std::isfinite(p.t1)) {
    const double rate = 1.0 / p.t1;
    model::Mat b1 = std::sqrt(rate) * b;
    m.ladder_jumps.push_back(detail::to_triplets(b1));
    for (int i = 0; i < n; ++i) m.jump_rate_diag(i) += rate * m.space.transmon_of(i);
  }
  // sqrt(2 gamma_phi) b'b: pure dephasing; g-e coherence decays as
  // exp(-gamma_phi t).
  m.dephasing_diag = Eigen::VectorXd::Zero(n);
  if (p.t1 > 0.0 && p.t2 > 0.0 && std::isfinite(p.t2)) {
    const double gphi = std::max(0.0, p.pure_dephasing_rate());
    const double s = std::sqrt(2.0 * gphi);
    for (int i = 0; i < n; ++i) {
      m.dephasing_diag(i) = s * m.space.transmon_of(i);
      m.jump_rate_diag(i) += 2.0 * gphi * double(m.space.transmon_of(i)) * m.space.transmon_of(i);
    }
  }
  return m;
}

struct EvolveOptions {
  double step = 0.0;          // ns; 0 = auto from the detuning rule
  double frame_freq = -1.0;   // GHz; < 0 = auto (first drive frequency, else 0)
  double record_dt = 0.0;     // ns; 0 = auto (~400 snapshots)
  bool check_convergence = false;  // rerun at step/2 and compare populations
  double convergence_tol = 1e-4;
};

/// Fixed-step rule: resolve the largest residual detuning among the states
/// the drive can reach (excitation number <= 2 plus the top bare transmon
/// level) with 20 points per period, capped by an RK4 stability bound on
/// the full spectrum.
inline double suggested_step(const LindbladModel& m, double frame_freq_ghz) {
  double rel = 0.0, all = 0.0;
  const int n = m.space.size();
  for (int i = 0; i < n; ++i) {
    const double det = std::abs(m.h_diag_ghz(i) - frame_freq_ghz * m.space.excitation_of(i));
    all = std::max(all, det);
    const bool relevant = m.space.excitation_of(i) <= 2 ||
                          (m.space.transmon_of(i) == m.space.dims[0] - 1 &&
                           m.space.readout_of(i) == 0 && m.space.purcell_of(i) == 0);
    if (relevant) rel = std::max(rel, det);
  }
  rel = std::max(rel, 0.05);
  const double acc = 1.0 / (20.0 * rel);
  const double stab = all > 0.0 ? 0.35 / all : acc;
  return std::min(acc, stab);
}

namespace detail {

struct Integrator {
  const LindbladModel* m;
  std::vector<PulseParams> drives;
  double frame_freq;          // GHz
  TripletOp h_frame;          // h0 - 2 pi frame_freq N
  RowMatD damp_weights;       // W_ij = deph_i deph_j - (s_i + s_j)/2
  RowMat a, k, acc, stage, tmp;  // scratch (tmp is reserved for rhs internals)

  Integrator(const LindbladModel& model, std::vector<PulseParams> drv, double frame)
      : m(&model), drives(std::move(drv)), frame_freq(frame) {
    const int n = m->space.size();
    h_frame = m->h0_triplets;
    // Subtract the frame rotation from the diagonal in-place.
    for (auto& e : h_frame) {
      if (e.r == e.c) e.v -= kTwoPi * frame_freq * m->space.excitation_of(e.r);
    }
    // Remove exact-zero diagonal entries produced by the subtraction.
    h_frame.erase(std::remove_if(h_frame.begin(), h_frame.end(),
                                 [](const Entry& e) { return std::abs(e.v) == 0.0; }),
                  h_frame.end());
    damp_weights.resize(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        damp_weights(i, j) = m->dephasing_diag(i) * m->dephasing_diag(j) -
                             0.5 * (m->jump_rate_diag(i) + m->jump_rate_diag(j));
    a.resize(n, n);
    k.resize(n, n);
    acc.resize(n, n);
    stage.resize(n, n);
    tmp.resize(n, n);
  }

  Complex drive_coefficient(double t) const {
    Complex z(0.0, 0.0);
    for (const auto& d : drives) {
      const double env = envelope_or_zero(d, t);
      if (env == 0.0) continue;
      const double ph = kTwoPi * (d.frequency - frame_freq) * t + d.phase;
      z += 0.5 * env * Complex(std::cos(ph), std::sin(ph));
    }
    return z;
  }

  // k = RHS(t, rho); rho must be Hermitian.
  void rhs(double t, const RowMat& rho, RowMat& out) {
    const int n = m->space.size();
    a.setZero();
    apply_left(a, Complex(1.0, 0.0), h_frame, rho);
    const Complex z = drive_coefficient(t);
    if (z != Complex(0.0, 0.0)) {
      apply_left(a, z, m->drive_op, rho);
      apply_left(a, std::conj(z), m->drive_op_dag, rho);
    }
    // out = -i (A - A^dagger) + W o rho, with A = H rho (valid since
    // rho = rho^dagger), fused into one pass.
    {
      const double* ad = reinterpret_cast<const double*>(a.data());
      const double* rd = reinterpret_cast<const double*>(rho.data());
      const double* wd = damp_weights.data();
      double* od = reinterpret_cast<double*>(out.data());
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
          const std::size_t ij = 2 * (static_cast<std::size_t>(i) * n + j);
          const std::size_t ji = 2 * (static_cast<std::size_t>(j) * n + i);
          const double w = wd[static_cast<std::size_t>(i) * n + j];
          od[ij] = (ad[ij + 1] + ad[ji + 1]) + w * rd[ij];
          od[ij + 1] = -(ad[ij] - ad[ji]) + w * rd[ij + 1];
        }
      }
    }
    for (const auto& jump : m->ladder_jumps) {
      tmp.setZero();
      apply_left(tmp, Complex(1.0, 0.0), jump, rho);
      apply_right_adjoint(out, jump, tmp);
    }
  }

  void rk4_step(double t, double h, RowMat& rho) {
    rhs(t, rho, k);
    acc = rho + (h / 6.0) * k;
    stage = rho + (0.5 * h) * k;
    rhs(t + 0.5 * h, stage, k);
    acc += (h / 3.0) * k;
    stage = rho + (0.5 * h) * k;
    rhs(t + 0.5 * h, stage, k);
    acc += (h / 3.0) * k;
    stage = rho + h * k;
    rhs(t + h, stage, k);
    acc += (h / 6.0) * k;
    rho.swap(acc);
  }
};

}  // namespace detail

/// Integrate the Lindblad master equation for the driven system in a frame
/// rotating at the (first) drive frequency on every mode, with the RWA
/// applied only to the explicit drive term. Populations are frame
/// independent; coherences are reported in the rotating frame.
inline EvolutionResult evolve(const LindbladModel& m, const std::vector<PulseParams>& drives,
                              const DensityState& rho0, double t_end, const EvolveOptions& opts = {}) {
  if (!(rho0.space == m.space)) throw std::invalid_argument("evolve: dimension mismatch");
  for (const auto& d : drives) d.validate();
  const double frame = opts.frame_freq >= 0.0
                           ? opts.frame_freq
                           : (drives.empty() ? 0.0 : drives.front().frequency);
  double step = opts.step > 0.0 ? opts.step : suggested_step(m, frame);
  const long n_steps = std::max(1L, static_cast<long>(std::ceil(t_end / step - 1e-12)));
  step = t_end / static_cast<double>(n_steps);

  const double record_dt = opts.record_dt > 0.0 ? opts.record_dt : t_end / 400.0;
  long record_stride = std::max(1L, static_cast<long>(std::llround(record_dt / step)));

  detail::Integrator integ(m, drives, frame);
  RowMat rho = rho0.rho;

  EvolutionResult res;
  const int n = m.space.size();
  for (int i = 0; i < n; ++i) res.labels.push_back(m.space.label(i));
  const int n_marg = std::min(4, m.space.dims[0]);
  for (int t = 0; t < n_marg; ++t) res.labels.push_back(std::string(1, model::kTransmonLetters[t]));

  auto record = [&](double t) {
    // Re-symmetrize before reading populations; the RHS preserves
    // Hermiticity exactly, this only removes roundoff drift.
    rho = 0.5 * (rho + RowMat(rho.adjoint()));
    std::vector<double> row(res.labels.size(), 0.0);
    for (int i = 0; i < n; ++i) row[i] = rho(i, i).real();
    for (int i = 0; i < n; ++i) row[n + m.space.transmon_of(i)] += rho(i, i).real();
    res.times.push_back(t);
    res.populations.push_back(std::move(row));
    const double tr = rho.trace().real();
    if (std::abs(tr - 1.0) > 1e-7)
      throw NumericalError("evolve: trace drifted by " + std::to_string(tr - 1.0));
  };

  record(0.0);
  for (long s = 0; s < n_steps; ++s) {
    integ.rk4_step(s * step, step, rho);
    if ((s + 1) % record_stride == 0 || s + 1 == n_steps) record((s + 1) * step);
  }
  res.final_state = DensityState{rho, m.space};

  if (opts.check_convergence) {
    EvolveOptions half = opts;
    half.check_convergence = false;
    half.step = step / 2.0;
    half.record_dt = t_end;  // only need the endpoint
    EvolutionResult fine = evolve(m, drives, rho0, t_end, half);
    double max_diff = 0.0;
    for (std::size_t i = 0; i < res.labels.size(); ++i)
      max_diff = std::max(max_diff,
                          std::abs(res.populations.back()[i] - fine.populations.back()[i]));
    if (max_diff > opts.convergence_tol)
      throw NumericalError("evolve: step-halving check failed, populations moved by " +
                           std::to_string(max_diff));
  }
  return res;
}

/// Prepare |T,0,0>, apply the drive(s) for their full duration and return
/// transmon-marginal populations over time. Supports simultaneous f- and
/// h-drives; the rotating frame is anchored to the first drive.
inline EvolutionResult simulate_lru_pulse(const LindbladModel& m,
                                          const std::vector<PulseParams>& drives,
                                          const std::string& initial_transmon_label,
                                          const EvolveOptions& opts = {}) {
  double t_end = 0.0;
  for (const auto& d : drives) t_end = std::max(t_end, d.duration);
  if (t_end <= 0.0) throw std::invalid_argument("simulate_lru_pulse: no drive duration");
  const DensityState rho0 = initial_transmon_state(m.space, initial_transmon_label);
  return evolve(m, drives, rho0, t_end, opts);
}

inline EvolutionResult simulate_lru_pulse(const SystemParams& params,
                                          const std::vector<PulseParams>& drives,
                                          const std::string& initial_transmon_label,
                                          const EvolveOptions& opts = {}) {
  LindbladModel m = build_lindblad_model(params);
  return simulate_lru_pulse(m, drives, initial_transmon_label, opts);
}

struct SpectroscopyPoint {
  double frequency = 0.0;  // GHz
  double p_f_final = 0.0;
};

/// P_f after the pulse versus drive frequency, starting from |f00>.
/// Grid points are independent and evaluated in parallel; results are
/// ordered by the input grid.
inline std::vector<SpectroscopyPoint> spectroscopy_sweep(const SystemParams& params,
                                                         const PulseParams& base_pulse,
                                                         const std::vector<double>& freq_grid,
                                                         const EvolveOptions& opts = {},
                                                         unsigned n_threads = 0) {
  LindbladModel m = build_lindblad_model(params);
  std::vector<SpectroscopyPoint> out(freq_grid.size());
  util::parallel_for(freq_grid.size(), n_threads, [&](std::size_t i) {
    PulseParams p = base_pulse;
    p.frequency = freq_grid[i];
    EvolutionResult r = simulate_lru_pulse(m, {p}, "f", opts);
    out[i] = {freq_grid[i], r.final_population("f")};
  });
  return out;
}

struct Dip {
  double frequency = 0.0;   // refined minimum position (GHz)
  double depth = 0.0;       // baseline - minimum (population)
  double width = 0.0;       // full width at half depth (GHz)
};

/// Locate dips in a spectroscopy trace: local minima below a prominence
/// threshold (relative to the deepest dip), positions refined by a 3-point
/// parabola, widths measured at half depth.
inline std::vector<Dip> find_spectroscopy_dips(const std::vector<SpectroscopyPoint>& pts,
                                               double min_relative_depth = 0.25) {
  if (pts.size() < 5) return {};
  double baseline = 0.0;
  for (const auto& p : pts) baseline = std::max(baseline, p.p_f_final);
  double max_depth = 0.0;
  for (const auto& p : pts) max_depth = std::max(max_depth, baseline - p.p_f_final);
  if (max_depth <= 0.0) return {};

  std::vector<Dip> dips;
  for (std::size_t i = 1; i + 1 < pts.size(); ++i) {
    const double y0 = pts[i - 1].p_f_final, y1 = pts[i].p_f_final, y2 = pts[i + 1].p_f_final;
    if (!(y1 <= y0 && y1 < y2)) continue;
    const double depth = baseline - y1;
    if (depth < min_relative_depth * max_depth) continue;
    Dip d;
    d.depth = depth;
    // Parabolic refinement of the minimum position.
    const double denom = y0 - 2.0 * y1 + y2;
    double shift = 0.0;
    if (std::abs(denom) > 1e-15) shift = 0.5 * (y0 - y2) / denom;
    shift = std::clamp(shift, -0.5, 0.5);
    const double dx = pts[i + 1].frequency - pts[i].frequency;
    d.frequency = pts[i].frequency + shift * dx;
    // Full width at half depth with linear interpolation of the crossings.
    const double level = baseline - 0.5 * depth;
    double left = pts.front().frequency, right = pts.back().frequency;
    for (std::size_t j = i; j > 0; --j) {
      if (pts[j - 1].p_f_final >= level) {
        const double f = (level - pts[j].p_f_final) /
                         (pts[j - 1].p_f_final - pts[j].p_f_final);
        left = pts[j].frequency + f * (pts[j - 1].frequency - pts[j].frequency);
        break;
      }
    }
    for (std::size_t j = i; j + 1 < pts.size(); ++j) {
      if (pts[j + 1].p_f_final >= level) {
        const double f = (level - pts[j].p_f_final) /
                         (pts[j + 1].p_f_final - pts[j].p_f_final);
        right = pts[j].frequency + f * (pts[j + 1].frequency - pts[j].frequency);
        break;
      }
    }
    d.width = right - left;
    dips.push_back(d);
  }
  std::sort(dips.begin(), dips.end(),
            [](const Dip& a, const Dip& b) { return a.frequency < b.frequency; });
  return dips;
}

/// Uniform grid centered between the two exact dressed f transitions.
inline std::vector<double> make_spectroscopy_grid(const SystemParams& params,
                                                  double margin_ghz = 0.040,
                                                  double step_ghz = 0.001) {
  const model::DressedGaps gaps = model::dressed_f_transitions(params);
  const double lo = std::min(gaps.lower, gaps.upper) - margin_ghz;
  const double hi = std::max(gaps.lower, gaps.upper) + margin_ghz;
  std::vector<double> grid;
  for (double f = lo; f <= hi + 1e-12; f += step_ghz) grid.push_back(f);
  return grid;
}

/// Copy of params with extra Fock levels on both resonators (truncation
/// adequacy checks).
inline SystemParams with_extra_photons(SystemParams p, int extra = 1) {
  p.n_readout_photons += extra;
  p.n_purcell_photons += extra;
  return p;
}

}  // namespace lrusim::dynamics

#endif  // LRUSIM_DYNAMICS_HPP
