#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "coach/motion.hpp"

namespace coach {
namespace align {

/// Result of aligning a learner window against the full expert reference.
/// Path pairs are (learner_frame, expert_frame) with learner indices in
/// the learner sequence's global frame numbering.
struct AlignmentResult {
  std::size_t start_index = 0;
  std::size_t window_length = 0;
  double distance = 0.0;
  std::vector<std::pair<std::size_t, std::size_t>> path;
};

struct AlignOptions {
  bool fast = false;     // radius-constrained approximation
  int fast_radius = 10;
};

/// Euclidean norm of the 72 wrapped per-axis rotation differences.
double frame_distance(const FrameRotations& a, const FrameRotations& b);

/// Exact DTW (step set {(1,0),(0,1),(1,1)}) between user[start, start+len)
/// and the full reference. Path learner indices are offset by `start`.
AlignmentResult dtw(const MotionSequence& user, std::size_t start,
                    std::size_t len, const MotionSequence& ref);

/// Radius-constrained multi-resolution approximation of `dtw`.
AlignmentResult fast_dtw(const MotionSequence& user, std::size_t start,
                         std::size_t len, const MotionSequence& ref,
                         int radius);

/// Best window start t*: argmin over t in [0, L_u - L_i] of
/// DTW(user[t : t + L_i], ref); ties resolved to the smallest t.
std::size_t find_start(const MotionSequence& user, const MotionSequence& ref);

/// Best window length L_w*: argmin over L_w in [ceil(0.5 L_i), L_u - t*]
/// of DTW(user[t* : t* + L_w], ref); ties resolved to the length closest
/// to L_i, then the smaller one.
std::size_t find_length(const MotionSequence& user, const MotionSequence& ref,
                        std::size_t t_star);

/// find_start + find_length + DTW on the selected window.
AlignmentResult align(const MotionSequence& user, const MotionSequence& ref,
                      const AlignOptions& options = {});

} // namespace align
} // namespace coach
