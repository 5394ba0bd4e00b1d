#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "coach/motion.hpp"
#include "coach/rng.hpp"

namespace coach {
namespace sim {

inline constexpr double kDefaultJointFraction = 0.25;
inline constexpr double kDefaultSigmaScale = 0.25;

/// Per joint/axis noise parameters fitted from a motion's frame-to-frame
/// angle deltas. Axes with no measurable motion are skipped outright.
struct NoiseModel {
  std::array<std::array<double, kAxisCount>, kJointCount> lambda{};
  std::array<std::array<double, kAxisCount>, kJointCount> sigma{};
  std::array<std::array<bool, kAxisCount>, kJointCount> skip{};
  double sigma_scale = kDefaultSigmaScale;
};

/// One training unit: flattened perturbed-minus-original rotations plus
/// the per-joint perturbation labels.
struct LabeledFrame {
  std::array<double, kFeatureCount> x{};
  std::array<bool, kJointCount> y{};
  int source = 0; // index into SyntheticDataset::sources
};

struct SimulateConfig {
  double joint_fraction = kDefaultJointFraction;
  double sigma_scale = kDefaultSigmaScale;
};

struct SyntheticDataset {
  std::vector<LabeledFrame> train;
  std::vector<LabeledFrame> test;
  std::uint64_t seed = 0;
  SimulateConfig config;
  std::vector<std::string> sources;
  std::vector<int> train_sources;
  std::vector<int> test_sources;
};

/// Exponential rates via maximum likelihood (1 / mean |delta|), Gaussian
/// widths as sigma_scale * mean |delta|.
NoiseModel fit_noise_model(const MotionSequence& seq,
                           double sigma_scale = kDefaultSigmaScale);

/// Signed exponential plus Gaussian perturbation for one joint/axis.
double sample_noise(const NoiseModel& model, int joint, int axis, Rng& rng);

struct PerturbResult {
  MotionSequence sequence;
  std::vector<std::array<bool, kJointCount>> labels; // per frame
  std::vector<int> selected_joints;
};

/// Perturbs a fixed random subset of joints (fraction of 24, at least
/// one) on every frame and all three axes; other joints are untouched.
PerturbResult perturb(const MotionSequence& seq, const NoiseModel& model,
                      double joint_fraction, Rng& rng);

/// Fits, perturbs, and labels every motion, then splits 80/20 at the
/// sequence level with a seeded shuffle.
SyntheticDataset build_dataset(const std::vector<MotionSequence>& motions,
                               const SimulateConfig& config,
                               std::uint64_t seed,
                               const std::vector<std::string>& names = {});

} // namespace sim
} // namespace coach
