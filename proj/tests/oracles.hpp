#pragma once

// Independent reference implementations used to freeze expected values.
// Everything here is deliberately written the plain quadratic way and
// stays decoupled from the code paths it checks.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include "coach/motion.hpp"

namespace oracle {

inline double wrap(double a) {
  double r = std::fmod(a, 360.0);
  if (r <= -180.0) r += 360.0;
  if (r > 180.0) r -= 360.0;
  return r;
}

inline double frame_cost(const coach::FrameRotations& a,
                         const coach::FrameRotations& b) {
  double s = 0.0;
  for (std::size_t j = 0; j < coach::kJointCount; ++j) {
    for (std::size_t x = 0; x < coach::kAxisCount; ++x) {
      const double d = wrap(a[j][x] - b[j][x]);
      s += d * d;
    }
  }
  return std::sqrt(s);
}

/// Full-matrix DTW distance, no path.
inline double dtw_distance(const coach::MotionSequence& user,
                           std::size_t start, std::size_t len,
                           const coach::MotionSequence& ref) {
  const std::size_t n = len;
  const std::size_t m = ref.frames.size();
  constexpr double inf = std::numeric_limits<double>::infinity();
  std::vector<std::vector<double>> d(n, std::vector<double>(m, inf));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      const double c = frame_cost(user.frames[start + i], ref.frames[j]);
      if (i == 0 && j == 0) {
        d[i][j] = c;
      } else {
        double best = inf;
        if (i > 0 && j > 0) best = std::min(best, d[i - 1][j - 1]);
        if (i > 0) best = std::min(best, d[i - 1][j]);
        if (j > 0) best = std::min(best, d[i][j - 1]);
        d[i][j] = c + best;
      }
    }
  }
  return d[n - 1][m - 1];
}

/// Exhaustive first-stage scan: best start of an L_i-length window.
inline std::size_t brute_find_start(const coach::MotionSequence& user,
                                    const coach::MotionSequence& ref) {
  const std::size_t lu = user.frames.size();
  const std::size_t li = ref.frames.size();
  std::size_t best_t = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t t = 0; t + li <= lu; ++t) {
    const double d = dtw_distance(user, t, li, ref);
    if (d < best_d) {
      best_d = d;
      best_t = t;
    }
  }
  return best_t;
}

/// Exhaustive second-stage scan over window lengths in
/// [ceil(0.5 L_i), L_u - t*], ties to the length nearest L_i then smaller.
inline std::size_t brute_find_length(const coach::MotionSequence& user,
                                     const coach::MotionSequence& ref,
                                     std::size_t t_star) {
  const std::size_t lu = user.frames.size();
  const std::size_t li = ref.frames.size();
  const std::size_t lmin = (li + 1) / 2;
  const std::size_t lmax = lu - t_star;
  std::size_t best_len = 0;
  double best_d = std::numeric_limits<double>::infinity();
  auto native_gap = [&](std::size_t l) { return l > li ? l - li : li - l; };
  for (std::size_t len = lmin; len <= lmax; ++len) {
    const double d = dtw_distance(user, t_star, len, ref);
    const bool better =
        d < best_d ||
        (d == best_d && (native_gap(len) < native_gap(best_len) ||
                         (native_gap(len) == native_gap(best_len) &&
                          len < best_len)));
    if (best_len == 0 || better) {
      best_d = d;
      best_len = len;
    }
  }
  return best_len;
}

/// Confusion-count accumulator for micro metrics.
struct Confusion {
  std::size_t tp = 0, fp = 0, fn = 0, tn = 0;

  void add(bool predicted, bool truth) {
    if (predicted && truth) ++tp;
    else if (predicted && !truth) ++fp;
    else if (!predicted && truth) ++fn;
    else ++tn;
  }
  double precision() const {
    return (tp + fp) ? static_cast<double>(tp) / static_cast<double>(tp + fp)
                     : 0.0;
  }
  double recall() const {
    return (tp + fn) ? static_cast<double>(tp) / static_cast<double>(tp + fn)
                     : 0.0;
  }
  double f1() const {
    const double p = precision(), r = recall();
    return (p + r) > 0.0 ? 2.0 * p * r / (p + r) : 0.0;
  }
};

} // namespace oracle
