#include "coach/motion.hpp"

#include <Eigen/Geometry>
#include <algorithm>
#include <cmath>

#include "coach/error.hpp"

namespace coach {

double wrap_angle(double a) {
  if (!std::isfinite(a)) {
    throw Error(ErrorKind::InvalidInput, "wrap_angle: non-finite angle");
  }
  double r = std::fmod(a, 360.0);
  if (r <= -180.0) {
    r += 360.0;
  } else if (r > 180.0) {
    r -= 360.0;
  }
  return r;
}

AngleDiffSequence temporal_diff(const MotionSequence& seq) {
  if (seq.frames.size() < 2) {
    throw Error(ErrorKind::InsufficientFrames,
                "temporal_diff: need at least 2 frames, got " +
                    std::to_string(seq.frames.size()));
  }
  AngleDiffSequence out;
  out.diffs.resize(seq.frames.size() - 1);
  for (std::size_t t = 0; t + 1 < seq.frames.size(); ++t) {
    for (std::size_t j = 0; j < kJointCount; ++j) {
      for (std::size_t a = 0; a < kAxisCount; ++a) {
        out.diffs[t][j][a] =
            wrap_angle(seq.frames[t + 1][j][a] - seq.frames[t][j][a]);
      }
    }
  }
  return out;
}

MotionSequence normalize_by_height(const MotionSequence& seq, double height) {
  if (!seq.has_positions()) {
    throw Error(ErrorKind::MissingData,
                "normalize_by_height: sequence carries no positions");
  }
  if (!(height > 0.0) || !std::isfinite(height)) {
    throw Error(ErrorKind::InvalidInput,
                "normalize_by_height: height must be positive");
  }
  constexpr double kReferenceHeight = 1.0;
  const double scale = kReferenceHeight / height;
  MotionSequence out = seq;
  for (auto& frame : *out.positions) {
    for (auto& joint : frame) {
      for (auto& c : joint) c *= scale;
    }
  }
  out.subject_height = kReferenceHeight;
  return out;
}

namespace {

Eigen::Matrix3d euler_to_matrix(const std::array<double, 3>& deg) {
  constexpr double kDegToRad = M_PI / 180.0;
  return (Eigen::AngleAxisd(deg[0] * kDegToRad, Eigen::Vector3d::UnitX()) *
          Eigen::AngleAxisd(deg[1] * kDegToRad, Eigen::Vector3d::UnitY()) *
          Eigen::AngleAxisd(deg[2] * kDegToRad, Eigen::Vector3d::UnitZ()))
      .toRotationMatrix();
}

} // namespace

double rotation_geodesic_angle(const std::array<double, 3>& a,
                               const std::array<double, 3>& b) {
  for (int i = 0; i < 3; ++i) {
    if (!std::isfinite(a[i]) || !std::isfinite(b[i])) {
      throw Error(ErrorKind::InvalidInput,
                  "rotation_geodesic_angle: non-finite Euler angle");
    }
  }
  const Eigen::Matrix3d ra = euler_to_matrix(a);
  const Eigen::Matrix3d rb = euler_to_matrix(b);
  const double t = (ra.transpose() * rb).trace();
  const double c = std::clamp((t - 1.0) / 2.0, -1.0, 1.0);
  return std::acos(c) * (180.0 / M_PI);
}

} // namespace coach
