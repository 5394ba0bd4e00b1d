#include "coach/align.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "coach/error.hpp"

namespace coach {
namespace align {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double wrap_diff(double a, double b) {
  double r = std::fmod(a - b, 360.0);
  if (r <= -180.0) {
    r += 360.0;
  } else if (r > 180.0) {
    r -= 360.0;
  }
  return r;
}

/// Flattened 72-value frame used by the DTW kernels.
using FlatFrame = std::array<double, kFeatureCount>;

FlatFrame flatten(const FrameRotations& f) {
  FlatFrame out;
  std::size_t k = 0;
  for (const auto& joint : f) {
    for (double v : joint) out[k++] = v;
  }
  return out;
}

std::vector<FlatFrame> flatten_range(const MotionSequence& seq,
                                     std::size_t start, std::size_t len) {
  std::vector<FlatFrame> out;
  out.reserve(len);
  for (std::size_t i = 0; i < len; ++i) {
    out.push_back(flatten(seq.frames[start + i]));
  }
  return out;
}

double flat_distance(const FlatFrame& a, const FlatFrame& b) {
  double s = 0.0;
  for (std::size_t k = 0; k < kFeatureCount; ++k) {
    const double d = wrap_diff(a[k], b[k]);
    s += d * d;
  }
  return std::sqrt(s);
}

/// Pairwise costs between user rows [start, start+rows) and all ref frames.
std::vector<double> cost_matrix(const std::vector<FlatFrame>& user,
                                std::size_t start, std::size_t rows,
                                const std::vector<FlatFrame>& ref) {
  const std::size_t cols = ref.size();
  std::vector<double> c(rows * cols);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      c[i * cols + j] = flat_distance(user[start + i], ref[j]);
    }
  }
  return c;
}

/// Accumulated-cost DP over a precomputed cost slice, rolling two rows.
/// When `last_column` is given it receives D[i][cols-1] for every i.
double dtw_distance_from_costs(const double* c, std::size_t rows,
                               std::size_t cols,
                               std::vector<double>* last_column = nullptr) {
  std::vector<double> prev(cols), cur(cols);
  if (last_column) last_column->assign(rows, 0.0);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      const double d = c[i * cols + j];
      if (i == 0 && j == 0) {
        cur[j] = d;
      } else {
        double best = kInf;
        if (i > 0 && j > 0) best = std::min(best, prev[j - 1]);
        if (i > 0) best = std::min(best, prev[j]);
        if (j > 0) best = std::min(best, cur[j - 1]);
        cur[j] = d + best;
      }
    }
    if (last_column) (*last_column)[i] = cur[cols - 1];
    std::swap(prev, cur);
  }
  return prev[cols - 1];
}

/// Full-matrix DP with backtracking. Ties prefer the diagonal step, then
/// the user step, then the reference step.
AlignmentResult dtw_with_path(const std::vector<FlatFrame>& user,
                              std::size_t start, std::size_t rows,
                              const std::vector<FlatFrame>& ref) {
  const std::size_t cols = ref.size();
  std::vector<double> acc(rows * cols);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      const double d = flat_distance(user[start + i], ref[j]);
      if (i == 0 && j == 0) {
        acc[0] = d;
      } else {
        double best = kInf;
        if (i > 0 && j > 0) best = std::min(best, acc[(i - 1) * cols + j - 1]);
        if (i > 0) best = std::min(best, acc[(i - 1) * cols + j]);
        if (j > 0) best = std::min(best, acc[i * cols + j - 1]);
        acc[i * cols + j] = d + best;
      }
    }
  }

  AlignmentResult res;
  res.start_index = start;
  res.window_length = rows;
  res.distance = acc[rows * cols - 1];

  std::size_t i = rows - 1, j = cols - 1;
  res.path.emplace_back(start + i, j);
  while (i > 0 || j > 0) {
    if (i > 0 && j > 0) {
      const double diag = acc[(i - 1) * cols + j - 1];
      const double up = acc[(i - 1) * cols + j];
      const double left = acc[i * cols + j - 1];
      if (diag <= up && diag <= left) {
        --i;
        --j;
      } else if (up <= left) {
        --i;
      } else {
        --j;
      }
    } else if (i > 0) {
      --i;
    } else {
      --j;
    }
    res.path.emplace_back(start + i, j);
  }
  std::reverse(res.path.begin(), res.path.end());
  return res;
}

std::size_t min_window_length(std::size_t ref_len) {
  return (ref_len + 1) / 2; // ceil(0.5 * L_i)
}

// --- radius-constrained approximation ------------------------------------

struct SearchWindow {
  std::vector<std::size_t> lo, hi; // inclusive column range per row
};

std::vector<FlatFrame> halve(const std::vector<FlatFrame>& s) {
  std::vector<FlatFrame> out;
  out.reserve((s.size() + 1) / 2);
  for (std::size_t i = 0; i + 1 < s.size(); i += 2) {
    FlatFrame f;
    for (std::size_t k = 0; k < kFeatureCount; ++k) {
      f[k] = 0.5 * (s[i][k] + s[i + 1][k]);
    }
    out.push_back(f);
  }
  if (s.size() % 2 == 1) out.push_back(s.back());
  return out;
}

SearchWindow expand_window(
    const std::vector<std::pair<std::size_t, std::size_t>>& coarse_path,
    std::size_t rows, std::size_t cols, int radius) {
  std::vector<long> lo(rows, std::numeric_limits<long>::max());
  std::vector<long> hi(rows, -1);
  auto mark = [&](long i, long j) {
    if (i < 0 || i >= static_cast<long>(rows)) return;
    lo[i] = std::min(lo[i], std::max(0L, j));
    hi[i] = std::max(hi[i], std::min(static_cast<long>(cols) - 1, j));
  };
  for (const auto& [ci, cj] : coarse_path) {
    for (long di = 0; di < 2; ++di) {
      for (long dj = 0; dj < 2; ++dj) {
        mark(2 * static_cast<long>(ci) + di, 2 * static_cast<long>(cj) + dj);
      }
    }
  }

  SearchWindow w;
  w.lo.resize(rows);
  w.hi.resize(rows);
  const long r = radius;
  for (long i = 0; i < static_cast<long>(rows); ++i) {
    long best_lo = std::numeric_limits<long>::max();
    long best_hi = -1;
    for (long di = -r; di <= r; ++di) {
      const long k = i + di;
      if (k < 0 || k >= static_cast<long>(rows)) continue;
      if (hi[k] < 0) continue;
      best_lo = std::min(best_lo, lo[k]);
      best_hi = std::max(best_hi, hi[k]);
    }
    if (best_hi < 0) { // row not reached by the projected path
      best_lo = 0;
      best_hi = static_cast<long>(cols) - 1;
    }
    w.lo[i] = static_cast<std::size_t>(std::max(0L, best_lo - r));
    w.hi[i] = static_cast<std::size_t>(
        std::min(static_cast<long>(cols) - 1, best_hi + r));
  }
  w.lo[0] = 0;
  w.hi[rows - 1] = cols - 1;
  // keep consecutive rows connected so the DP never dead-ends
  for (std::size_t i = 1; i < rows; ++i) {
    if (w.lo[i] > w.hi[i - 1] + 1) w.lo[i] = w.hi[i - 1] + 1;
    if (w.hi[i] < w.lo[i]) w.hi[i] = w.lo[i];
  }
  return w;
}

AlignmentResult dtw_windowed(const std::vector<FlatFrame>& user,
                             const std::vector<FlatFrame>& ref,
                             const SearchWindow& w) {
  const std::size_t rows = user.size();
  const std::size_t cols = ref.size();
  std::vector<std::vector<double>> acc(rows);
  for (std::size_t i = 0; i < rows; ++i) {
    acc[i].assign(w.hi[i] - w.lo[i] + 1, kInf);
  }
  auto at = [&](std::size_t i, std::size_t j) -> double {
    if (j < w.lo[i] || j > w.hi[i]) return kInf;
    return acc[i][j - w.lo[i]];
  };
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = w.lo[i]; j <= w.hi[i]; ++j) {
      const double d = flat_distance(user[i], ref[j]);
      double v;
      if (i == 0 && j == 0) {
        v = d;
      } else {
        double best = kInf;
        if (i > 0 && j > 0) best = std::min(best, at(i - 1, j - 1));
        if (i > 0) best = std::min(best, at(i - 1, j));
        if (j > 0) best = std::min(best, at(i, j - 1));
        v = d + best;
      }
      acc[i][j - w.lo[i]] = v;
    }
  }

  AlignmentResult res;
  res.window_length = rows;
  res.distance = at(rows - 1, cols - 1);

  std::size_t i = rows - 1, j = cols - 1;
  res.path.emplace_back(i, j);
  while (i > 0 || j > 0) {
    const double diag = (i > 0 && j > 0) ? at(i - 1, j - 1) : kInf;
    const double up = (i > 0) ? at(i - 1, j) : kInf;
    const double left = (j > 0) ? at(i, j - 1) : kInf;
    if (diag <= up && diag <= left) {
      --i;
      --j;
    } else if (up <= left) {
      --i;
    } else {
      --j;
    }
    res.path.emplace_back(i, j);
  }
  std::reverse(res.path.begin(), res.path.end());
  return res;
}

AlignmentResult fast_dtw_flat(const std::vector<FlatFrame>& user,
                              const std::vector<FlatFrame>& ref, int radius) {
  const std::size_t min_size = static_cast<std::size_t>(radius) + 2;
  if (user.size() <= min_size || ref.size() <= min_size) {
    return dtw_with_path(user, 0, user.size(), ref);
  }
  const auto coarse_user = halve(user);
  const auto coarse_ref = halve(ref);
  const AlignmentResult coarse = fast_dtw_flat(coarse_user, coarse_ref, radius);
  const SearchWindow w =
      expand_window(coarse.path, user.size(), ref.size(), radius);
  return dtw_windowed(user, ref, w);
}

} // namespace

double frame_distance(const FrameRotations& a, const FrameRotations& b) {
  return flat_distance(flatten(a), flatten(b));
}

AlignmentResult dtw(const MotionSequence& user, std::size_t start,
                    std::size_t len, const MotionSequence& ref) {
  if (len == 0 || ref.frames.empty()) {
    throw Error(ErrorKind::InvalidInput, "dtw: empty input range");
  }
  if (start + len > user.frames.size()) {
    throw Error(ErrorKind::InvalidInput, "dtw: window exceeds learner length");
  }
  const auto flat_user = flatten_range(user, 0, user.frames.size());
  const auto flat_ref = flatten_range(ref, 0, ref.frames.size());
  return dtw_with_path(flat_user, start, len, flat_ref);
}

AlignmentResult fast_dtw(const MotionSequence& user, std::size_t start,
                         std::size_t len, const MotionSequence& ref,
                         int radius) {
  if (len == 0 || ref.frames.empty()) {
    throw Error(ErrorKind::InvalidInput, "fast_dtw: empty input range");
  }
  if (start + len > user.frames.size()) {
    throw Error(ErrorKind::InvalidInput,
                "fast_dtw: window exceeds learner length");
  }
  if (radius < 0) {
    throw Error(ErrorKind::InvalidConfig, "fast_dtw: radius must be >= 0");
  }
  const auto flat_user = flatten_range(user, start, len);
  const auto flat_ref = flatten_range(ref, 0, ref.frames.size());
  AlignmentResult res = fast_dtw_flat(flat_user, flat_ref, radius);
  res.start_index = start;
  for (auto& p : res.path) p.first += start;
  return res;
}

std::size_t find_start(const MotionSequence& user, const MotionSequence& ref) {
  const std::size_t lu = user.frames.size();
  const std::size_t li = ref.frames.size();
  if (lu < li) {
    throw Error(ErrorKind::LearnerTooShort,
                "find_start: learner has " + std::to_string(lu) +
                    " frames, reference needs " + std::to_string(li));
  }
  const auto flat_user = flatten_range(user, 0, lu);
  const auto flat_ref = flatten_range(ref, 0, li);
  const std::vector<double> costs = cost_matrix(flat_user, 0, lu, flat_ref);

  std::size_t best_t = 0;
  double best_d = kInf;
  for (std::size_t t = 0; t + li <= lu; ++t) {
    const double d = dtw_distance_from_costs(costs.data() + t * li, li, li);
    if (d < best_d) {
      best_d = d;
      best_t = t;
    }
  }
  return best_t;
}

std::size_t find_length(const MotionSequence& user, const MotionSequence& ref,
                        std::size_t t_star) {
  const std::size_t lu = user.frames.size();
  const std::size_t li = ref.frames.size();
  const std::size_t lmin = min_window_length(li);
  if (t_star >= lu || lu - t_star < lmin) {
    throw Error(ErrorKind::LearnerTooShort,
                "find_length: no admissible window length at start " +
                    std::to_string(t_star));
  }
  const std::size_t lmax = lu - t_star;

  const auto flat_user = flatten_range(user, 0, lu);
  const auto flat_ref = flatten_range(ref, 0, li);
  const std::vector<double> costs =
      cost_matrix(flat_user, t_star, lmax, flat_ref);

  // One DP over the longest window yields every candidate length: the
  // distance for length L is the accumulated cost at row L-1, last column.
  std::vector<double> last_col;
  dtw_distance_from_costs(costs.data(), lmax, li, &last_col);

  std::size_t best_len = lmin;
  double best_d = kInf;
  auto closer_to_native = [&](std::size_t cand, std::size_t cur) {
    const auto dist = [&](std::size_t l) {
      return l > li ? l - li : li - l;
    };
    if (dist(cand) != dist(cur)) return dist(cand) < dist(cur);
    return cand < cur;
  };
  for (std::size_t len = lmin; len <= lmax; ++len) {
    const double d = last_col[len - 1];
    if (d < best_d || (d == best_d && closer_to_native(len, best_len))) {
      best_d = d;
      best_len = len;
    }
  }
  return best_len;
}

AlignmentResult align(const MotionSequence& user, const MotionSequence& ref,
                      const AlignOptions& options) {
  const std::size_t t_star = find_start(user, ref);
  const std::size_t len = find_length(user, ref, t_star);
  if (options.fast) {
    return fast_dtw(user, t_star, len, ref, options.fast_radius);
  }
  return dtw(user, t_star, len, ref);
}

} // namespace align
} // namespace coach
