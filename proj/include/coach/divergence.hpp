#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "coach/motion.hpp"

namespace coach {
namespace sim {

inline constexpr std::size_t kDefaultHistogramBins = 72; // 5 degree bins
inline constexpr double kHistogramSmoothing = 1e-9;

/// KL(p||q) with natural log over two smoothed, normalized histograms.
double kl_divergence(const std::vector<double>& p, const std::vector<double>& q);

/// JS(p,q) = 0.5 KL(p||m) + 0.5 KL(q||m), m = (p+q)/2. Bounded by ln 2.
double js_divergence(const std::vector<double>& p, const std::vector<double>& q);

/// Adds the smoothing mass to raw bin counts and normalizes to sum 1.
std::vector<double> smooth_normalize(const std::vector<double>& counts,
                                     double epsilon = kHistogramSmoothing);

/// Histogram of angles over (-180, 180] with uniform bins.
std::vector<double> angle_histogram(const std::vector<double>& angles,
                                    std::size_t bins);

struct AxisDivergence {
  double kl = 0.0;
  double js = 0.0;
};

/// Divergence between the pooled Euler-angle distributions of two motion
/// sets, per axis and pooled over all axes.
struct DivergenceReport {
  std::array<AxisDivergence, kAxisCount> per_axis{};
  AxisDivergence combined;
  std::size_t bins = kDefaultHistogramBins;
};

DivergenceReport distribution_divergence(
    const std::vector<MotionSequence>& real,
    const std::vector<MotionSequence>& sim,
    std::size_t bins = kDefaultHistogramBins);

} // namespace sim
} // namespace coach
