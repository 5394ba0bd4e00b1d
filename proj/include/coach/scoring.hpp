#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "coach/align.hpp"
#include "coach/motion.hpp"

namespace coach {
namespace score {

inline constexpr double kDefaultAngularToleranceDeg = 30.0;
inline constexpr double kDefaultPositionToleranceM = 0.1;
inline constexpr double kAdvanceFraction = 0.75;

enum class HitLabel { Perfect, Excellent, Great, Good, Imprecise, Miss };

const char* hit_label_name(HitLabel label);

/// Rhythm-game style timing score for one segment.
struct SegmentScore {
  std::size_t segment_index = 0;
  double t_ideal = 0.0;  // seconds
  double t_actual = 0.0; // seconds
  double score = 0.0;    // [0, 100]
  HitLabel label = HitLabel::Miss;
};

/// Positional deviation of one joint at one aligned frame pair. Flagged
/// deviations correspond to red markers, the rest to gray ones.
struct JointDeviation {
  int joint = 0;
  std::size_t frame = 0; // expert frame index
  double positional_error = 0.0;
  double angular_error = 0.0;
  bool flagged = false;
};

struct PoseMatchVerdict {
  std::array<bool, kJointCount> per_joint_aligned{};
  double aligned_fraction = 0.0;
  bool advance = false;
};

struct FrameRange {
  std::size_t begin = 0;
  std::size_t end = 0; // half-open
  std::size_t size() const { return end - begin; }
};

/// Splits [0, ref_length) into k contiguous ranges whose sizes differ by
/// at most one, larger ones first. k must be 4 or 8.
std::vector<FrameRange> segment_boundaries(std::size_t ref_length,
                                           std::size_t k);

/// Ideal and performed duration per segment, in seconds. A learner frame
/// whose path partners span several segments counts toward the earliest.
struct SegmentDurations {
  std::vector<double> t_ideal;
  std::vector<double> t_actual;
};

SegmentDurations segment_durations(const align::AlignmentResult& alignment,
                                   const std::vector<FrameRange>& boundaries,
                                   double fps_user, double fps_ref);

/// Maps a timing score to its label with inclusive lower bounds.
HitLabel label_for_score(double score);

/// Score = max(0, 100 - |t_ideal - t_actual| / t_ideal * 100).
SegmentScore hit_judgement(double t_ideal, double t_actual);

std::vector<SegmentScore> score_segments(
    const align::AlignmentResult& alignment,
    const std::vector<FrameRange>& boundaries, double fps_user,
    double fps_ref);

/// Per path pair and joint: positional error between height-normalized
/// positions, flagged when strictly above the tolerance. Angular error is
/// recorded for diagnostics only.
std::vector<JointDeviation> spatial_diff(
    const align::AlignmentResult& alignment, const MotionSequence& user,
    const MotionSequence& ref,
    double tolerance = kDefaultPositionToleranceM);

/// Live segment-gated check: a joint is aligned when its angular error is
/// strictly below `angular_tolerance` and its positional error strictly
/// below `position_tolerance`; the segment advances when at least 75% of
/// joints are aligned.
PoseMatchVerdict pose_match_step(
    const MotionSequence& user, std::size_t user_frame,
    const MotionSequence& ref, std::size_t ref_frame,
    double angular_tolerance = kDefaultAngularToleranceDeg,
    double position_tolerance = kDefaultPositionToleranceM,
    double advance_fraction = kAdvanceFraction);

} // namespace score
} // namespace coach
