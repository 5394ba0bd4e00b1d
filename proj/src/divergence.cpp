#include "coach/divergence.hpp"

#include <cmath>

#include "coach/error.hpp"

namespace coach {
namespace sim {

std::vector<double> smooth_normalize(const std::vector<double>& counts,
                                     double epsilon) {
  double total = 0.0;
  for (double c : counts) total += c + epsilon;
  std::vector<double> p(counts.size());
  for (std::size_t i = 0; i < counts.size(); ++i) {
    p[i] = (counts[i] + epsilon) / total;
  }
  return p;
}

double kl_divergence(const std::vector<double>& p,
                     const std::vector<double>& q) {
  if (p.size() != q.size() || p.empty()) {
    throw Error(ErrorKind::InvalidInput,
                "kl_divergence: histogram sizes must match and be nonempty");
  }
  double kl = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] > 0.0) kl += p[i] * std::log(p[i] / q[i]);
  }
  return kl;
}

double js_divergence(const std::vector<double>& p,
                     const std::vector<double>& q) {
  if (p.size() != q.size() || p.empty()) {
    throw Error(ErrorKind::InvalidInput,
                "js_divergence: histogram sizes must match and be nonempty");
  }
  std::vector<double> m(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) m[i] = 0.5 * (p[i] + q[i]);
  return 0.5 * kl_divergence(p, m) + 0.5 * kl_divergence(q, m);
}

std::vector<double> angle_histogram(const std::vector<double>& angles,
                                    std::size_t bins) {
  if (bins == 0) {
    throw Error(ErrorKind::InvalidConfig, "angle_histogram: bins must be > 0");
  }
  std::vector<double> counts(bins, 0.0);
  const double width = 360.0 / static_cast<double>(bins);
  for (double a : angles) {
    // bins are half-open on the left: bin i covers (-180 + i*w, -180 + (i+1)*w]
    long idx = static_cast<long>(std::ceil((a + 180.0) / width)) - 1;
    idx = std::max(0L, std::min(static_cast<long>(bins) - 1, idx));
    counts[static_cast<std::size_t>(idx)] += 1.0;
  }
  return counts;
}

namespace {

void pool_angles(const std::vector<MotionSequence>& set,
                 std::array<std::vector<double>, kAxisCount>& per_axis) {
  for (const auto& seq : set) {
    for (const auto& frame : seq.frames) {
      for (const auto& joint : frame) {
        for (std::size_t a = 0; a < kAxisCount; ++a) {
          per_axis[a].push_back(joint[a]);
        }
      }
    }
  }
}

AxisDivergence divergence_between(const std::vector<double>& real,
                                  const std::vector<double>& sim,
                                  std::size_t bins) {
  const auto p = smooth_normalize(angle_histogram(real, bins));
  const auto q = smooth_normalize(angle_histogram(sim, bins));
  return {kl_divergence(p, q), js_divergence(p, q)};
}

} // namespace

DivergenceReport distribution_divergence(
    const std::vector<MotionSequence>& real,
    const std::vector<MotionSequence>& sim, std::size_t bins) {
  if (real.empty() || sim.empty()) {
    throw Error(ErrorKind::InvalidInput,
                "distribution_divergence: both motion sets must be nonempty");
  }
  std::array<std::vector<double>, kAxisCount> real_axes, sim_axes;
  pool_angles(real, real_axes);
  pool_angles(sim, sim_axes);

  DivergenceReport report;
  report.bins = bins;
  std::vector<double> real_all, sim_all;
  for (std::size_t a = 0; a < kAxisCount; ++a) {
    report.per_axis[a] = divergence_between(real_axes[a], sim_axes[a], bins);
    real_all.insert(real_all.end(), real_axes[a].begin(), real_axes[a].end());
    sim_all.insert(sim_all.end(), sim_axes[a].begin(), sim_axes[a].end());
  }
  report.combined = divergence_between(real_all, sim_all, bins);
  return report;
}

} // namespace sim
} // namespace coach
