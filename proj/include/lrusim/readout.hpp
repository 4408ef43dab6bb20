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

#ifndef LRUSIM_READOUT_HPP
#define LRUSIM_READOUT_HPP

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "lrusim/util.hpp"

namespace lrusim::readout {

/// Per-state IQ response model: one Gaussian blob per transmon state.
struct ReadoutModel {
  std::vector<std::string> states;        // ordered labels (g, e, f[, h])
  std::vector<Eigen::Vector2d> means;     // arbitrary units
  std::vector<Eigen::Matrix2d> covs;      // PSD

  int n_states() const { return static_cast<int>(states.size()); }
  void validate() const {
    if (states.empty() || states.size() != means.size() || states.size() != covs.size())
      throw ConfigError("ReadoutModel: inconsistent state/mean/cov counts");
    for (const auto& c : covs) {
      Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(c);
      if (es.eigenvalues().minCoeff() < -1e-12)
        throw ConfigError("ReadoutModel: covariance not PSD");
    }
  }
};

/// Shipped IQ presets with 2, 3 or 4 states. The blob separations are
/// fitted (not device data) so that the mean assignment errors land at
/// 1.3%, 1.9% and 7.2% for the 2-, 3- and 4-state models.
inline ReadoutModel readout_preset(int n_states) {
  ReadoutModel m;
  const std::vector<std::string> labels = {"g", "e", "f", "h"};
  const std::vector<Eigen::Vector2d> means = {
      {0.0, 0.0},
      {4.452423538634351, 0.0},
      {6.606430308201699, 3.730848077131323},
      {7.803913200177680, 5.804949852032778},
  };
  if (n_states < 2 || n_states > 4) throw ConfigError("readout preset supports 2..4 states");
  for (int i = 0; i < n_states; ++i) {
    m.states.push_back(labels[i]);
    m.means.push_back(means[i]);
    m.covs.push_back(Eigen::Matrix2d::Identity());
  }
  return m;
}

struct IqShot {
  double i = 0.0, q = 0.0;
  int true_label = -1;
  int declared_label = -1;  // filled by classification
};

/// i.i.d. draws: label ~ probs, point ~ Gaussian(mean_label, cov_label).
/// Deterministic for a fixed seed.
inline std::vector<IqShot> simulate_iq_shots(const ReadoutModel& model,
                                             const std::vector<double>& true_state_probs,
                                             std::size_t n_shots, std::uint64_t seed) {
  model.validate();
  if (static_cast<int>(true_state_probs.size()) != model.n_states())
    throw std::invalid_argument("simulate_iq_shots: probability size mismatch");
  const double total = std::accumulate(true_state_probs.begin(), true_state_probs.end(), 0.0);
  if (std::abs(total - 1.0) > 1e-9)
    throw std::invalid_argument("simulate_iq_shots: probabilities must sum to 1");

  std::vector<Eigen::Matrix2d> chol;
  for (const auto& c : model.covs) {
    Eigen::LLT<Eigen::Matrix2d> llt(c + 1e-300 * Eigen::Matrix2d::Identity());
    Eigen::Matrix2d l = llt.matrixL();
    if (llt.info() != Eigen::Success) {
      // Allow exactly singular (e.g. zero) covariances.
      Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(c);
      l = es.eigenvectors() *
          es.eigenvalues().cwiseMax(0.0).cwiseSqrt().asDiagonal() *
          es.eigenvectors().transpose();
    }
    chol.push_back(l);
  }

  util::Rng rng(seed);
  std::vector<IqShot> shots(n_shots);
  for (auto& s : shots) {
    s.true_label = rng.discrete(true_state_probs);
    const Eigen::Vector2d z(rng.normal(), rng.normal());
    const Eigen::Vector2d pt = model.means[s.true_label] + chol[s.true_label] * z;
    s.i = pt.x();
    s.q = pt.y();
  }
  return shots;
}

/// Linear discriminant with a shared (pooled) covariance and equal priors.
/// Boundaries between classes are hyperplanes; for isotropic equal
/// covariances they are the perpendicular bisectors of the means.
class LinearClassifier {
 public:
  LinearClassifier() = default;
  LinearClassifier(std::vector<Eigen::Vector2d> means, const Eigen::Matrix2d& pooled_cov,
                   ReadoutModel fitted)
      : means_(std::move(means)), fitted_(std::move(fitted)) {
    Eigen::FullPivLU<Eigen::Matrix2d> lu(pooled_cov);
    if (!lu.isInvertible())
      throw NumericalError("fit_classifier: singular pooled covariance");
    icov_ = lu.inverse();
    for (const auto& mu : means_) {
      weights_.push_back(icov_ * mu);
      offsets_.push_back(-0.5 * mu.dot(icov_ * mu));
    }
  }

  int classify(double i, double q) const {
    const Eigen::Vector2d x(i, q);
    int best = 0;
    double best_score = -1e300;
    for (std::size_t k = 0; k < weights_.size(); ++k) {
      const double score = weights_[k].dot(x) + offsets_[k];
      if (score > best_score) {
        best_score = score;
        best = static_cast<int>(k);
      }
    }
    return best;
  }

  int n_classes() const { return static_cast<int>(means_.size()); }
  const ReadoutModel& fitted_model() const { return fitted_; }

 private:
  std::vector<Eigen::Vector2d> means_;
  Eigen::Matrix2d icov_ = Eigen::Matrix2d::Identity();
  ReadoutModel fitted_;
  std::vector<Eigen::Vector2d> weights_;
  std::vector<double> offsets_;
};

/// Per-label Gaussian fits plus the shared-covariance linear discriminant.
inline LinearClassifier fit_classifier(const std::vector<IqShot>& shots, int n_labels) {
  if (n_labels < 2) throw std::invalid_argument("fit_classifier: need >= 2 labels");
  std::vector<std::size_t> counts(n_labels, 0);
  std::vector<Eigen::Vector2d> means(n_labels, Eigen::Vector2d::Zero());
  for (const auto& s : shots) {
    if (s.true_label < 0 || s.true_label >= n_labels)
      throw std::invalid_argument("fit_classifier: shot label out of range");
    counts[s.true_label]++;
    means[s.true_label] += Eigen::Vector2d(s.i, s.q);
  }
  for (int k = 0; k < n_labels; ++k) {
    if (counts[k] < 10)
      throw std::invalid_argument("fit_classifier: need >= 10 shots per label");
    means[k] /= static_cast<double>(counts[k]);
  }
  std::vector<Eigen::Matrix2d> covs(n_labels, Eigen::Matrix2d::Zero());
  Eigen::Matrix2d pooled = Eigen::Matrix2d::Zero();
  for (const auto& s : shots) {
    const Eigen::Vector2d d = Eigen::Vector2d(s.i, s.q) - means[s.true_label];
    covs[s.true_label] += d * d.transpose();
    pooled += d * d.transpose();
  }
  for (int k = 0; k < n_labels; ++k) covs[k] /= static_cast<double>(counts[k] - 1);
  pooled /= static_cast<double>(shots.size() - n_labels);

  ReadoutModel fitted;
  for (int k = 0; k < n_labels; ++k) {
    fitted.states.push_back(std::to_string(k));
    fitted.means.push_back(means[k]);
    fitted.covs.push_back(covs[k]);
  }
  return LinearClassifier(means, pooled, fitted);
}

/// Row-stochastic confusion matrix: rows = prepared state, columns =
/// declared outcome.
struct AssignmentMatrix {
  Eigen::MatrixXd m;

  void validate(double tol = 1e-9) const {
    for (int i = 0; i < m.rows(); ++i) {
      if (std::abs(m.row(i).sum() - 1.0) > tol)
        throw NumericalError("AssignmentMatrix: row does not sum to 1");
      for (int j = 0; j < m.cols(); ++j)
        if (m(i, j) < -tol || m(i, j) > 1.0 + tol)
          throw NumericalError("AssignmentMatrix: entry outside [0,1]");
    }
  }
  double mean_assignment_error() const {
    return 1.0 - m.diagonal().mean();
  }
};

inline AssignmentMatrix assignment_matrix_from_shots(const LinearClassifier& classifier,
                                                     std::vector<IqShot>& shots) {
  const int n = classifier.n_classes();
  Eigen::MatrixXd counts = Eigen::MatrixXd::Zero(n, n);
  for (auto& s : shots) {
    s.declared_label = classifier.classify(s.i, s.q);
    counts(s.true_label, s.declared_label) += 1.0;
  }
  for (int i = 0; i < n; ++i) {
    const double row = counts.row(i).sum();
    if (row <= 0.0)
      throw std::invalid_argument("assignment_matrix_from_shots: prepared label " +
                                  std::to_string(i) + " has no shots");
    counts.row(i) /= row;
  }
  return AssignmentMatrix{counts};
}

struct CorrectedPopulations {
  std::vector<double> probs;
  double clipped_mass = 0.0;  // how much negative weight was clipped away
};

/// Invert the assignment matrix: solves p_true * M = p_measured, then clips
/// negative components to zero and renormalizes.
inline CorrectedPopulations correct_populations(const std::vector<double>& measured,
                                                const AssignmentMatrix& m) {
  const int n = static_cast<int>(measured.size());
  if (m.m.rows() != n || m.m.cols() != n)
    throw std::invalid_argument("correct_populations: dimension mismatch");
  Eigen::VectorXd meas(n);
  for (int i = 0; i < n; ++i) meas(i) = measured[i];
  Eigen::FullPivLU<Eigen::MatrixXd> lu(m.m.transpose());
  if (!lu.isInvertible()) throw NumericalError("correct_populations: singular assignment matrix");
  Eigen::VectorXd raw = lu.solve(meas);
  CorrectedPopulations out;
  double clipped = 0.0, kept = 0.0;
  out.probs.resize(n);
  for (int i = 0; i < n; ++i) {
    if (raw(i) < 0.0) {
      clipped -= raw(i);
      out.probs[i] = 0.0;
    } else {
      out.probs[i] = raw(i);
      kept += raw(i);
    }
  }
  if (kept <= 0.0) throw NumericalError("correct_populations: correction emptied the simplex");
  for (double& p : out.probs) p /= kept;
  out.clipped_mass = clipped;
  return out;
}

// ---------------------------------------------------------------------------
// Rank-3 measurement backaction tensor eps[i][m][j]: input state i, declared
// outcome m, output state j, normalized per input state.
// ---------------------------------------------------------------------------

struct MeasurementTensor {
  int n = 3;  // states == outcomes == outputs
  std::vector<double> eps;  // flattened [i][m][j]

  MeasurementTensor() = default;
  explicit MeasurementTensor(int n_states) : n(n_states), eps(n_states * n_states * n_states, 0.0) {}

  double& at(int i, int m, int j) { return eps[(i * n + m) * n + j]; }
  double at(int i, int m, int j) const { return eps[(i * n + m) * n + j]; }

  void validate(double tol = 1e-9) const {
    if (static_cast<int>(eps.size()) != n * n * n)
      throw ConfigError("MeasurementTensor: wrong element count");
    for (int i = 0; i < n; ++i) {
      double sum = 0.0;
      for (int m = 0; m < n; ++m)
        for (int j = 0; j < n; ++j) {
          if (at(i, m, j) < -tol) throw ConfigError("MeasurementTensor: negative element");
          sum += at(i, m, j);
        }
      if (std::abs(sum - 1.0) > tol)
        throw ConfigError("MeasurementTensor: input " + std::to_string(i) +
                          " is not normalized");
    }
  }

  /// Renormalize each input block to exactly 1 (cleans up roundoff).
  void normalize() {
    for (int i = 0; i < n; ++i) {
      double sum = 0.0;
      for (int k = 0; k < n * n; ++k) sum += eps[i * n * n + k];
      if (sum > 0.0)
        for (int k = 0; k < n * n; ++k) eps[i * n * n + k] /= sum;
    }
  }
};

inline MeasurementTensor ideal_qnd_tensor(int n = 3) {
  MeasurementTensor t(n);
  for (int i = 0; i < n; ++i) t.at(i, i, i) = 1.0;
  return t;
}

/// Random valid tensor: per input state a Dirichlet draw over the n^2
/// (outcome, output) cells, optionally biased toward the ideal QND element.
inline MeasurementTensor random_tensor(int n, std::uint64_t seed, double qnd_bias = 0.0) {
  util::Rng rng(seed);
  MeasurementTensor t(n);
  for (int i = 0; i < n; ++i) {
    double sum = 0.0;
    for (int m = 0; m < n; ++m)
      for (int j = 0; j < n; ++j) {
        double v = -std::log(1.0 - rng.uniform());  // Exp(1) => Dirichlet(1)
        t.at(i, m, j) = v;
        sum += v;
      }
    for (int m = 0; m < n; ++m)
      for (int j = 0; j < n; ++j) {
        t.at(i, m, j) /= sum;
        t.at(i, m, j) = (1.0 - qnd_bias) * t.at(i, m, j) +
                        qnd_bias * ((m == i && j == i) ? 1.0 : 0.0);
      }
  }
  return t;
}

/// Exact double-measurement distribution P_i(M0 = k, M1 = l):
/// sum_s sum_j eps[i][k][s] eps[s][l][j].
inline Eigen::MatrixXd double_measurement_probs(const MeasurementTensor& t, int input) {
  const int n = t.n;
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(n, n);
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l) {
      double sum = 0.0;
      for (int s = 0; s < n; ++s) {
        double row = 0.0;
        for (int j = 0; j < n; ++j) row += t.at(s, l, j);
        sum += t.at(input, k, s) * row;
      }
      p(k, l) = sum;
    }
  return p;
}

/// Sampled double-measurement outcome frequencies for one input state.
/// n_shots = 0 returns the exact distribution.
inline Eigen::MatrixXd simulate_double_measurement(const MeasurementTensor& t, int input,
                                                   std::size_t n_shots, std::uint64_t seed) {
  t.validate();
  if (n_shots == 0) return double_measurement_probs(t, input);
  const int n = t.n;
  util::Rng rng(seed);
  Eigen::MatrixXd counts = Eigen::MatrixXd::Zero(n, n);
  std::vector<double> cell(n * n);
  for (std::size_t shot = 0; shot < n_shots; ++shot) {
    // First measurement: joint (outcome, output) cell for the input state.
    for (int k = 0; k < n * n; ++k) cell[k] = t.eps[input * n * n + k];
    int c0 = rng.discrete(cell);
    const int m0 = c0 / n, s = c0 % n;
    for (int k = 0; k < n * n; ++k) cell[k] = t.eps[s * n * n + k];
    int c1 = rng.discrete(cell);
    const int m1 = c1 / n;
    counts(m0, m1) += 1.0;
  }
  return counts / static_cast<double>(n_shots);
}

struct QNDMatrix {
  Eigen::MatrixXd q;
  void validate(double tol = 1e-9) const {
    for (int i = 0; i < q.rows(); ++i)
      if (std::abs(q.row(i).sum() - 1.0) > tol)
        throw NumericalError("QNDMatrix: row does not sum to 1");
  }
};

struct DerivedMatrices {
  AssignmentMatrix assignment;  // M_{i,m} = sum_j eps[i][m][j]
  QNDMatrix qnd;                // Q_{i,j} = sum_m eps[i][m][j]
  double mean_qndness = 0.0;    // diagonal average of Q
  double leakage_rate = 0.0;    // (Q_{g,f} + Q_{e,f}) / 2
};

inline DerivedMatrices derived_matrices(const MeasurementTensor& t) {
  const int n = t.n;
  DerivedMatrices d;
  d.assignment.m = Eigen::MatrixXd::Zero(n, n);
  d.qnd.q = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int m = 0; m < n; ++m)
      for (int j = 0; j < n; ++j) {
        d.assignment.m(i, m) += t.at(i, m, j);
        d.qnd.q(i, j) += t.at(i, m, j);
      }
  d.mean_qndness = d.qnd.q.diagonal().mean();
  if (n >= 3) d.leakage_rate = 0.5 * (d.qnd.q(0, 2) + d.qnd.q(1, 2));
  return d;
}

// ---------------------------------------------------------------------------
// Tensor fitting: simplex-constrained nonlinear least squares on the
// double-measurement equations, solved with multi-start projected gradient
// descent (per-input simplex projection).
// ---------------------------------------------------------------------------

namespace detail {

/// Euclidean projection of v onto the probability simplex.
inline void project_simplex(std::vector<double>& v) {
  const int n = static_cast<int>(v.size());
  std::vector<double> u = v;
  std::sort(u.begin(), u.end(), std::greater<double>());
  double cumsum = 0.0, theta = 0.0;
  int rho = -1;
  for (int k = 0; k < n; ++k) {
    cumsum += u[k];
    const double t = (cumsum - 1.0) / (k + 1);
    if (u[k] - t > 0.0) {
      rho = k;
      theta = t;
    }
  }
  if (rho < 0) theta = (cumsum - 1.0) / n;
  for (double& x : v) x = std::max(0.0, x - theta);
}

struct TensorObjective {
  int n;
  std::vector<Eigen::MatrixXd> data;  // per input: n x n joint frequencies

  double value(const std::vector<double>& x) const {
    double f = 0.0;
    // M2_s(l) = sum_j x[s][l][j]
    std::vector<double> m2(n * n, 0.0);
    for (int s = 0; s < n; ++s)
      for (int l = 0; l < n; ++l) {
        double sum = 0.0;
        for (int j = 0; j < n; ++j) sum += x[(s * n + l) * n + j];
        m2[s * n + l] = sum;
      }
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          double t = 0.0;
          for (int s = 0; s < n; ++s) t += x[(i * n + k) * n + s] * m2[s * n + l];
          const double r = t - data[i](k, l);
          f += r * r;
        }
    return f;
  }

  void gradient(const std::vector<double>& x, std::vector<double>& g) const {
    std::vector<double> m2(n * n, 0.0);
    for (int s = 0; s < n; ++s)
      for (int l = 0; l < n; ++l) {
        double sum = 0.0;
        for (int j = 0; j < n; ++j) sum += x[(s * n + l) * n + j];
        m2[s * n + l] = sum;
      }
    std::vector<double> r(n * n * n, 0.0);  // residuals r[i][k][l]
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          double t = 0.0;
          for (int s = 0; s < n; ++s) t += x[(i * n + k) * n + s] * m2[s * n + l];
          r[(i * n + k) * n + l] = t - data[i](k, l);
        }
    std::fill(g.begin(), g.end(), 0.0);
    for (int a = 0; a < n; ++a)
      for (int m = 0; m < n; ++m)
        for (int j = 0; j < n; ++j) {
          double acc = 0.0;
          for (int l = 0; l < n; ++l) acc += 2.0 * r[(a * n + m) * n + l] * m2[j * n + l];
          for (int i = 0; i < n; ++i)
            for (int k = 0; k < n; ++k)
              acc += 2.0 * r[(i * n + k) * n + m] * x[(i * n + k) * n + a];
          g[(a * n + m) * n + j] = acc;
        }
  }
};

}  // namespace detail

struct TensorFitOptions {
  int n_random_starts = 8;
  std::uint64_t seed = 1;
  long max_iterations = 400000;
  double improvement_tol = 1e-16;  // over a 100-iteration window
  double spread_warning = 1e-3;
};

struct TensorFitResult {
  MeasurementTensor eps;
  double residual = 0.0;          // squared residual at the best solution
  double element_spread = 0.0;    // max element spread among equally good starts
  bool ambiguous = false;         // spread above the warning threshold
  bool converged = false;         // improvement tolerance reached on the best start
  int best_start = -1;
};

/// Fit eps from per-input double-measurement frequencies. Multi-start
/// projected gradient descent: the data itself (exact when the second
/// measurement is ideal), the ideal-QND tensor, and seeded random tensors.
inline TensorFitResult fit_measurement_tensor(const std::vector<Eigen::MatrixXd>& joint_freqs,
                                              const TensorFitOptions& opts = {}) {
  const int n = static_cast<int>(joint_freqs.size());
  if (n != 3) throw std::invalid_argument("fit_measurement_tensor: expects 3 input states");
  for (const auto& m : joint_freqs)
    if (m.rows() != n || m.cols() != n)
      throw std::invalid_argument("fit_measurement_tensor: expects 3x3 outcome tables");

  detail::TensorObjective obj{n, joint_freqs};
  const int dim = n * n * n;

  auto run_start = [&](std::vector<double> x, double& f_out, bool& converged) {
    // Project the start onto the constraint set.
    for (int i = 0; i < n; ++i) {
      std::vector<double> blockv(x.begin() + i * n * n, x.begin() + (i + 1) * n * n);
      detail::project_simplex(blockv);
      std::copy(blockv.begin(), blockv.end(), x.begin() + i * n * n);
    }
    std::vector<double> g(dim), xn(dim);
    double f = obj.value(x);
    double step = 0.25;
    double window_best = f;
    long window_mark = 0;
    converged = false;
    for (long it = 0; it < opts.max_iterations; ++it) {
      obj.gradient(x, g);
      bool accepted = false;
      for (int bt = 0; bt < 60; ++bt) {
        for (int k = 0; k < dim; ++k) xn[k] = x[k] - step * g[k];
        for (int i = 0; i < n; ++i) {
          std::vector<double> blockv(xn.begin() + i * n * n, xn.begin() + (i + 1) * n * n);
          detail::project_simplex(blockv);
          std::copy(blockv.begin(), blockv.end(), xn.begin() + i * n * n);
        }
        const double fn = obj.value(xn);
        if (fn <= f) {
          x.swap(xn);
          f = fn;
          step *= 1.6;
          accepted = true;
          break;
        }
        step *= 0.5;
      }
      if (!accepted) {
        converged = true;  // no descent direction at machine precision
        break;
      }
      if (it - window_mark >= 100) {
        if (window_best - f < opts.improvement_tol) {
          converged = true;
          break;
        }
        window_best = f;
        window_mark = it;
      }
    }
    f_out = f;
    return x;
  };

  std::vector<std::vector<double>> starts;
  // Plug-in start: exact if the second measurement were ideal.
  {
    std::vector<double> x(dim);
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) x[(i * n + k) * n + l] = joint_freqs[i](k, l);
    starts.push_back(std::move(x));
  }
  starts.push_back(ideal_qnd_tensor(n).eps);
  for (int s = 0; s < opts.n_random_starts; ++s)
    starts.push_back(random_tensor(n, util::derive_seed(opts.seed, s + 1)).eps);

  std::vector<std::vector<double>> solutions(starts.size());
  std::vector<double> residuals(starts.size());
  std::vector<char> conv(starts.size(), 0);
  util::parallel_for(starts.size(), 0, [&](std::size_t s) {
    double f = 0.0;
    bool c = false;
    solutions[s] = run_start(starts[s], f, c);
    residuals[s] = f;
    conv[s] = c ? 1 : 0;
  });

  TensorFitResult out;
  std::size_t best = 0;
  for (std::size_t s = 0; s < solutions.size(); ++s)
    if (residuals[s] < residuals[best]) best = s;
  out.best_start = static_cast<int>(best);
  out.residual = residuals[best];
  out.converged = conv[best] != 0;
  out.eps = MeasurementTensor(n);
  out.eps.eps = solutions[best];
  out.eps.normalize();

  for (std::size_t s = 0; s < solutions.size(); ++s) {
    if (residuals[s] <= out.residual + 1e-9) {
      double spread = 0.0;
      for (int k = 0; k < dim; ++k)
        spread = std::max(spread, std::abs(solutions[s][k] - solutions[best][k]));
      out.element_spread = std::max(out.element_spread, spread);
    }
  }
  out.ambiguous = out.element_spread > opts.spread_warning;
  return out;
}

/// Gaussian-overlap misclassification rate of two equal isotropic blobs
/// separated by distance d: erfc(d / (2 sqrt(2) sigma)) / 2.
inline double two_state_overlap_error(double distance, double sigma) {
  return 0.5 * std::erfc(distance / (2.0 * std::sqrt(2.0) * sigma));
}

}  // namespace lrusim::readout

#endif  // LRUSIM_READOUT_HPP
