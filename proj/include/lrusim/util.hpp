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

#ifndef LRUSIM_UTIL_HPP
#define LRUSIM_UTIL_HPP

#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace lrusim {

constexpr double kTwoPi = 6.283185307179586476925286766559;

/// Raised when an integration or fit fails to converge. The CLI maps this
/// to exit code 3.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

/// Raised on invalid configuration or arguments. The CLI maps this to exit
/// code 2 when it originates from config parsing/validation.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

namespace util {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Derive an independent stream seed from a base seed and a stream index.
/// Used so that parallel work items (trajectories, multi-starts) are
/// reproducible regardless of thread count.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
  return splitmix64(base ^ splitmix64(stream + 0x1234abcd5678ef00ULL));
}

/// Small deterministic RNG (splitmix64 core, Box-Muller normals). We roll
/// our own so that seeded outputs are identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed = 0) : state_(splitmix64(seed ^ 0x5bf0fe3c1a2bd4e9ULL)) {}

  std::uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t x = state_;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  }

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n) {
    // Rejection-free modulo is fine here; n is always tiny relative to 2^64.
    return next_u64() % n;
  }

  /// Standard normal via Box-Muller (no cached spare, keeps streams simple).
  double normal() {
    double u1 = 0.0;
    do { u1 = uniform(); } while (u1 <= 0.0);
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
  }

  /// Sample an index from a discrete distribution (probabilities sum to ~1).
  int discrete(const std::vector<double>& probs) {
    double r = uniform();
    double acc = 0.0;
    for (std::size_t i = 0; i < probs.size(); ++i) {
      acc += probs[i];
      if (r < acc) return static_cast<int>(i);
    }
    return static_cast<int>(probs.size()) - 1;
  }

 private:
  std::uint64_t state_;
};

/// Run fn(i) for i in [0, n) on up to n_threads threads. Work items must be
/// independent; results should be written to pre-sized slots so that the
/// outcome does not depend on the thread count.
inline void parallel_for(std::size_t n, unsigned n_threads,
                         const std::function<void(std::size_t)>& fn) {
  if (n == 0) return;
  if (n_threads == 0) n_threads = std::thread::hardware_concurrency();
  if (n_threads <= 1 || n == 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  n_threads = static_cast<unsigned>(std::min<std::size_t>(n_threads, n));
  std::vector<std::thread> pool;
  pool.reserve(n_threads);
  std::atomic<std::size_t> next{0};
  for (unsigned t = 0; t < n_threads; ++t) {
    pool.emplace_back([&]() {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= n) break;
        fn(i);
      }
    });
  }
  for (auto& th : pool) th.join();
}

/// Format a double with 17 significant digits so that CSV output
/// round-trips bit-exactly.
inline std::string fmt_g17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

inline std::string fmt_int(long long v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%lld", v);
  return buf;
}

/// Ordinary least squares fit y = a*x + b. Returns {slope, intercept, r2}.
/// r2 is defined as 1 when the residuals vanish (including the degenerate
/// all-equal-y case).
struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 1.0;
};

inline LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw std::invalid_argument("fit_line: need >= 2 points with matching sizes");
  }
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double det = n * sxx - sx * sx;
  if (std::abs(det) < 1e-300) throw std::invalid_argument("fit_line: degenerate x values");
  LineFit f;
  f.slope = (n * sxy - sx * sy) / det;
  f.intercept = (sy - f.slope * sx) / n;
  double ss_res = 0, ss_tot = 0;
  const double ymean = sy / n;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double e = y[i] - (f.slope * x[i] + f.intercept);
    ss_res += e * e;
    ss_tot += (y[i] - ymean) * (y[i] - ymean);
  }
  f.r_squared = (ss_tot <= 1e-30) ? 1.0 : 1.0 - ss_res / ss_tot;
  if (f.r_squared < 0.0) f.r_squared = 0.0;
  if (f.r_squared > 1.0) f.r_squared = 1.0;
  return f;
}

/// Sequentially unwrap phases assuming < pi advance between neighbors.
inline std::vector<double> unwrap_phases(std::vector<double> phases) {
  for (std::size_t i = 1; i < phases.size(); ++i) {
    const double d = phases[i] - phases[i - 1];
    phases[i] -= kTwoPi * std::round(d / kTwoPi);
  }
  return phases;
}

}  // namespace util
}  // namespace lrusim

#endif  // LRUSIM_UTIL_HPP
