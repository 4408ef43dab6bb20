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

#ifndef LRUSIM_CALIBRATION_HPP
#define LRUSIM_CALIBRATION_HPP

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "lrusim/dynamics.hpp"

namespace lrusim::calibration {

using dynamics::EvolveOptions;
using dynamics::PulseParams;
using model::SystemParams;

/// Fraction of prepared leakage population removed by one LRU application.
struct RemovalFraction {
  double value = 0.0;
  double initial_pop = 0.0;
  double final_pop = 0.0;
  bool baseline_subtracted = false;
};

inline RemovalFraction removal_fraction(double initial_pop, double final_pop) {
  if (!(initial_pop > 0.0))
    throw std::invalid_argument("removal_fraction: initial population must be > 0");
  return {(initial_pop - final_pop) / initial_pop, initial_pop, final_pop, false};
}

/// Variant with the decay-only baseline divided out, so that pure T1 decay
/// of |f> reports ~0 removal.
inline RemovalFraction removal_fraction_vs_baseline(double initial_pop, double final_pop,
                                                    double baseline_final_pop) {
  if (!(baseline_final_pop > 0.0))
    throw std::invalid_argument("removal_fraction: baseline population must be > 0");
  RemovalFraction r = removal_fraction(baseline_final_pop, final_pop);
  r.initial_pop = initial_pop;
  r.baseline_subtracted = true;
  return r;
}

struct Axis {
  std::string name;  // one of frequency | amplitude | duration
  std::vector<double> values;
};

inline void apply_axis_value(PulseParams& pulse, const std::string& name, double v) {
  if (name == "frequency") {
    pulse.frequency = v;
  } else if (name == "amplitude") {
    pulse.amplitude = v;
  } else if (name == "duration") {
    pulse.duration = v;
  } else {
    throw ConfigError("unknown calibration axis: " + name);
  }
}

struct CalibrationMap {
  Axis axis1, axis2;
  std::vector<std::vector<double>> values;  // values[i1][i2] = removal fraction

  double at(std::size_t i1, std::size_t i2) const { return values[i1][i2]; }
  double max_value() const {
    double m = -1.0;
    for (const auto& row : values)
      for (double v : row) m = std::max(m, v);
    return m;
  }
  std::pair<std::size_t, std::size_t> argmax() const {
    std::pair<std::size_t, std::size_t> best{0, 0};
    double m = -2.0;
    for (std::size_t i = 0; i < values.size(); ++i)
      for (std::size_t j = 0; j < values[i].size(); ++j)
        if (values[i][j] > m) {
          m = values[i][j];
          best = {i, j};
        }
    return best;
  }
};

/// Removal fraction of a pulse prepared in |f>, per grid point of two pulse
/// parameters. Points are independent and evaluated in parallel; output
/// ordering follows the grids.
inline CalibrationMap calibration_map_2d(const SystemParams& params, const PulseParams& base_pulse,
                                         const Axis& axis1, const Axis& axis2,
                                         const EvolveOptions& opts = {}, unsigned n_threads = 0) {
  if (axis1.values.empty() || axis2.values.empty())
    throw std::invalid_argument("calibration_map_2d: empty axis grid");
  // Validate axis names before spending any simulation time.
  {
    PulseParams probe = base_pulse;
    apply_axis_value(probe, axis1.name, axis1.values.front());
    apply_axis_value(probe, axis2.name, axis2.values.front());
  }
  dynamics::LindbladModel m = dynamics::build_lindblad_model(params);
  const std::size_t n1 = axis1.values.size(), n2 = axis2.values.size();
  CalibrationMap out;
  out.axis1 = axis1;
  out.axis2 = axis2;
  out.values.assign(n1, std::vector<double>(n2, 0.0));
  util::parallel_for(n1 * n2, n_threads, [&](std::size_t k) {
    const std::size_t i = k / n2, j = k % n2;
    PulseParams pulse = base_pulse;
    apply_axis_value(pulse, axis1.name, axis1.values[i]);
    apply_axis_value(pulse, axis2.name, axis2.values[j]);
    auto r = dynamics::simulate_lru_pulse(m, {pulse}, "f", opts);
    out.values[i][j] = removal_fraction(1.0, r.final_population("f")).value;
  });
  return out;
}

// ---------------------------------------------------------------------------
// Contour extraction: marching squares on the bilinear interpolant, with
// ambiguous (saddle) cells decided by the cell-center value.
// ---------------------------------------------------------------------------

struct ContourPolyline {
  double level = 0.0;
  std::vector<std::pair<double, double>> points;  // (axis1, axis2) coordinates
  bool closed = false;
};

namespace detail {

struct Seg {
  double x0, y0, x1, y1;
};

inline double lerp_cross(double a, double b, double va, double vb, double level) {
  const double t = (level - va) / (vb - va);
  return a + t * (b - a);
}

inline void cell_segments(double x0, double x1, double y0, double y1, double v00, double v10,
                          double v01, double v11, double level, std::vector<Seg>& segs) {
  // Corner order: v00=(x0,y0) v10=(x1,y0) v11=(x1,y1) v01=(x0,y1).
  int c = 0;
  if (v00 >= level) c |= 1;
  if (v10 >= level) c |= 2;
  if (v11 >= level) c |= 4;
  if (v01 >= level) c |= 8;
  if (c == 0 || c == 15) return;

  // Edge crossing points (bottom, right, top, left), valid when the edge
  // corners straddle the level.
  const double bx = (v00 >= level) != (v10 >= level) ? lerp_cross(x0, x1, v00, v10, level) : 0.0;
  const double rx = x1, lx = x0;
  const double ry = (v10 >= level) != (v11 >= level) ? lerp_cross(y0, y1, v10, v11, level) : 0.0;
  const double tx = (v01 >= level) != (v11 >= level) ? lerp_cross(x0, x1, v01, v11, level) : 0.0;
  const double ly = (v00 >= level) != (v01 >= level) ? lerp_cross(y0, y1, v00, v01, level) : 0.0;

  auto B = [&] { return std::pair<double, double>{bx, y0}; };
  auto R = [&] { return std::pair<double, double>{rx, ry}; };
  auto T = [&] { return std::pair<double, double>{tx, y1}; };
  auto L = [&] { return std::pair<double, double>{lx, ly}; };
  auto add = [&](std::pair<double, double> p, std::pair<double, double> q) {
    segs.push_back({p.first, p.second, q.first, q.second});
  };

  switch (c) {
    case 1: add(L(), B()); break;
    case 2: add(B(), R()); break;
    case 3: add(L(), R()); break;
    case 4: add(R(), T()); break;
    case 6: add(B(), T()); break;
    case 7: add(L(), T()); break;
    case 8: add(T(), L()); break;
    case 9: add(T(), B()); break;
    case 11: add(T(), R()); break;
    case 12: add(R(), L()); break;
    case 13: add(R(), B()); break;
    case 14: add(B(), L()); break;
    case 5:   // saddle: corners 00 and 11 above
    case 10:  // saddle: corners 10 and 01 above
    {
      const double center = 0.25 * (v00 + v10 + v01 + v11);
      const bool center_above = center >= level;
      if (c == 5) {
        if (center_above) {
          add(L(), T());
          add(R(), B());
        } else {
          add(L(), B());
          add(R(), T());
        }
      } else {
        if (center_above) {
          add(B(), L());
          add(T(), R());
        } else {
          add(B(), R());
          add(T(), L());
        }
      }
      break;
    }
    default: break;
  }
}

}  // namespace detail

/// Marching-squares contours at the given level, chained into polylines.
inline std::vector<ContourPolyline> extract_contours(const CalibrationMap& map,
                                                     const std::vector<double>& levels) {
  const auto& xs = map.axis1.values;
  const auto& ys = map.axis2.values;
  std::vector<ContourPolyline> out;
  for (double level : levels) {
    std::vector<detail::Seg> segs;
    for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
      for (std::size_t j = 0; j + 1 < ys.size(); ++j) {
        detail::cell_segments(xs[i], xs[i + 1], ys[j], ys[j + 1], map.values[i][j],
                              map.values[i + 1][j], map.values[i][j + 1], map.values[i + 1][j + 1],
                              level, segs);
      }
    }
    // Chain segments into polylines by matching endpoints on a quantized key.
    const double sx = (xs.back() - xs.front());
    const double sy = (ys.back() - ys.front());
    auto key = [&](double x, double y) {
      const long long qx = std::llround((x - xs.front()) / (sx > 0 ? sx : 1.0) * 1e9);
      const long long qy = std::llround((y - ys.front()) / (sy > 0 ? sy : 1.0) * 1e9);
      return std::make_pair(qx, qy);
    };
    std::multimap<std::pair<long long, long long>, std::size_t> ends;
    for (std::size_t s = 0; s < segs.size(); ++s) {
      ends.insert({key(segs[s].x0, segs[s].y0), s});
      ends.insert({key(segs[s].x1, segs[s].y1), s});
    }
    std::vector<bool> used(segs.size(), false);
    for (std::size_t s0 = 0; s0 < segs.size(); ++s0) {
      if (used[s0]) continue;
      used[s0] = true;
      ContourPolyline line;
      line.level = level;
      line.points.push_back({segs[s0].x0, segs[s0].y0});
      line.points.push_back({segs[s0].x1, segs[s0].y1});
      // Extend forward then backward.
      for (int dir = 0; dir < 2; ++dir) {
        for (;;) {
          auto [cx, cy] = dir == 0 ? line.points.back() : line.points.front();
          auto range = ends.equal_range(key(cx, cy));
          std::size_t next = segs.size();
          for (auto it = range.first; it != range.second; ++it)
            if (!used[it->second]) {
              next = it->second;
              break;
            }
          if (next == segs.size()) break;
          used[next] = true;
          const bool from_start =
              key(segs[next].x0, segs[next].y0) == key(cx, cy);
          const std::pair<double, double> np =
              from_start ? std::pair<double, double>{segs[next].x1, segs[next].y1}
                         : std::pair<double, double>{segs[next].x0, segs[next].y0};
          if (dir == 0)
            line.points.push_back(np);
          else
            line.points.insert(line.points.begin(), np);
        }
      }
      line.closed = key(line.points.front().first, line.points.front().second) ==
                    key(line.points.back().first, line.points.back().second);
      out.push_back(std::move(line));
    }
  }
  return out;
}

/// True when every polyline either closes on itself or terminates on the
/// map boundary; used to check that contours come out without gaps.
inline bool contours_have_no_gaps(const CalibrationMap& map,
                                  const std::vector<ContourPolyline>& lines) {
  const double x0 = map.axis1.values.front(), x1 = map.axis1.values.back();
  const double y0 = map.axis2.values.front(), y1 = map.axis2.values.back();
  const double ex = 1e-9 * std::max(std::abs(x1 - x0), 1.0);
  const double ey = 1e-9 * std::max(std::abs(y1 - y0), 1.0);
  auto on_boundary = [&](const std::pair<double, double>& p) {
    return std::abs(p.first - x0) < ex || std::abs(p.first - x1) < ex ||
           std::abs(p.second - y0) < ey || std::abs(p.second - y1) < ey;
  };
  for (const auto& l : lines) {
    if (l.closed) continue;
    if (!on_boundary(l.points.front()) || !on_boundary(l.points.back())) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Repeated-LRU round model (reduced Markov chain over the leakage population).
// ---------------------------------------------------------------------------

/// Per-round leakage/seepage rates, plus the LRU removal applied once per
/// round when enabled.
struct LeakageRoundModel {
  double leakage_rate = 0.0;  // L1
  double seepage_rate = 0.0;  // s (natural)
  double lru_removal = 0.0;   // R

  double effective_seepage(bool lru_on) const {
    return lru_on ? 1.0 - (1.0 - seepage_rate) * (1.0 - lru_removal) : seepage_rate;
  }
  void validate() const {
    for (double v : {leakage_rate, seepage_rate, lru_removal})
      if (v < 0.0 || v > 1.0) throw ConfigError("LeakageRoundModel: rates must be in [0,1]");
  }
};

/// Leakage rate induced by an e-f rotation of angle theta: sin^2(theta/2)/2.
inline double induced_leakage_rate(double theta) {
  const double s = std::sin(0.5 * theta);
  return 0.5 * s * s;
}

/// Rotation angle that induces a target per-round leakage rate.
inline double leakage_angle_for_rate(double l1) {
  if (l1 < 0.0 || l1 > 0.5) throw std::invalid_argument("leakage rate must be in [0, 0.5]");
  return 2.0 * std::asin(std::sqrt(2.0 * l1));
}

/// Iterate P_{t+1} = (1 - s_eff) P_t + L1 (1 - P_t); returns P after each of
/// n_rounds rounds.
inline std::vector<double> repeated_lru_rounds(const LeakageRoundModel& m, int n_rounds,
                                               bool lru_on, double p0 = 0.0) {
  if (n_rounds < 1) throw std::invalid_argument("repeated_lru_rounds: need n_rounds >= 1");
  m.validate();
  const double s_eff = m.effective_seepage(lru_on);
  std::vector<double> out;
  out.reserve(n_rounds);
  double p = p0;
  for (int t = 0; t < n_rounds; ++t) {
    p = (1.0 - s_eff) * p + m.leakage_rate * (1.0 - p);
    out.push_back(p);
  }
  return out;
}

/// Fixed point L1 / (L1 + s_eff) of the round recursion.
inline double steady_state_leakage(const LeakageRoundModel& m, bool lru_on) {
  m.validate();
  const double s_eff = m.effective_seepage(lru_on);
  if (m.leakage_rate + s_eff <= 0.0)
    throw std::invalid_argument("steady_state_leakage: undefined for L1 = s_eff = 0");
  return m.leakage_rate / (m.leakage_rate + s_eff);
}

/// Seepage implied by an observed steady state: s = L1 (1/P_inf - 1).
inline double fit_seepage_from_steady_state(double l1, double p_inf) {
  if (!(p_inf > 0.0 && p_inf < 1.0)) throw std::invalid_argument("P_inf must be in (0,1)");
  return l1 * (1.0 / p_inf - 1.0);
}

// ---------------------------------------------------------------------------
// Operating-point search (grid sweep + argmax, as in the experiment).
// ---------------------------------------------------------------------------

struct OperatingPoint {
  double frequency = 0.0;  // GHz
  double amplitude = 0.0;  // rad/ns
  double duration = 0.0;   // ns
  double removal = 0.0;    // R at the point
};

/// Sweep drive frequency at fixed amplitude/duration and return the best
/// point (optionally refined by a parabolic fit of R around the maximum).
inline OperatingPoint best_frequency(const SystemParams& params, const PulseParams& base,
                                     const std::vector<double>& freqs,
                                     const std::string& initial_state = "f",
                                     const EvolveOptions& opts = {}, unsigned n_threads = 0) {
  if (freqs.size() < 3) throw std::invalid_argument("best_frequency: need >= 3 grid points");
  dynamics::LindbladModel m = dynamics::build_lindblad_model(params);
  const std::string marginal(1, initial_state[0] == 'h' ? 'h' : 'f');
  std::vector<double> r(freqs.size());
  util::parallel_for(freqs.size(), n_threads, [&](std::size_t i) {
    PulseParams p = base;
    p.frequency = freqs[i];
    auto res = dynamics::simulate_lru_pulse(m, {p}, initial_state, opts);
    r[i] = 1.0 - res.final_population(marginal);
  });
  std::size_t best = 0;
  for (std::size_t i = 0; i < r.size(); ++i)
    if (r[i] > r[best]) best = i;
  OperatingPoint op{freqs[best], base.amplitude, base.duration, r[best]};
  if (best > 0 && best + 1 < r.size()) {
    const double y0 = r[best - 1], y1 = r[best], y2 = r[best + 1];
    const double denom = y0 - 2.0 * y1 + y2;
    if (std::abs(denom) > 1e-15) {
      double shift = std::clamp(0.5 * (y0 - y2) / denom, -0.5, 0.5);
      op.frequency = freqs[best] + shift * (freqs[best + 1] - freqs[best]);
    }
  }
  return op;
}

}  // namespace lrusim::calibration

#endif  // LRUSIM_CALIBRATION_HPP
