#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <vector>

#include "coach/joints.hpp"

namespace coach {

/// Per-joint Euler rotations in degrees, intrinsic x->y->z axis order,
/// each angle wrapped to (-180, 180].
using FrameRotations = std::array<std::array<double, kAxisCount>, kJointCount>;

/// Per-joint positions in meters.
using FramePositions = std::array<std::array<double, kAxisCount>, kJointCount>;

/// Time series of full-body joint rotations (optionally positions) at a
/// fixed frame rate. The universal currency of the pipeline.
struct MotionSequence {
  std::vector<FrameRotations> frames;
  std::optional<std::vector<FramePositions>> positions;
  double fps = 30.0;
  std::optional<double> subject_height;

  std::size_t size() const { return frames.size(); }
  bool has_positions() const { return positions.has_value(); }
};

/// Frame-to-frame shortest-arc rotation deltas; one entry fewer than the
/// source frame count.
struct AngleDiffSequence {
  std::vector<std::array<std::array<double, kAxisCount>, kJointCount>> diffs;
};

/// Reduces an angle to (-180, 180], congruent modulo 360.
double wrap_angle(double a);

/// diffs[t][j][a] = shortest-arc difference theta_{t+1} - theta_t.
AngleDiffSequence temporal_diff(const MotionSequence& seq);

/// Scales positions into the canonical reference scale (1.0 m) given the
/// subject's height; rotations are untouched.
MotionSequence normalize_by_height(const MotionSequence& seq, double height);

/// Rotation-matrix distance arccos((trace(Ra^T Rb) - 1)/2) in degrees,
/// rotation matrices built from the Euler triples in intrinsic x->y->z
/// order. Result in [0, 180].
double rotation_geodesic_angle(const std::array<double, 3>& a,
                               const std::array<double, 3>& b);

} // namespace coach
