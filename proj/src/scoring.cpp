#include "coach/scoring.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "coach/error.hpp"

namespace coach {
namespace score {

const char* hit_label_name(HitLabel label) {
  switch (label) {
  case HitLabel::Perfect: return "Perfect";
  case HitLabel::Excellent: return "Excellent";
  case HitLabel::Great: return "Great";
  case HitLabel::Good: return "Good";
  case HitLabel::Imprecise: return "Imprecise";
  case HitLabel::Miss: return "Miss";
  }
  return "Miss";
}

std::vector<FrameRange> segment_boundaries(std::size_t ref_length,
                                           std::size_t k) {
  if (k != 4 && k != 8) {
    throw Error(ErrorKind::InvalidConfig,
                "segment count must be 4 or 8, got " + std::to_string(k));
  }
  if (ref_length < k) {
    throw Error(ErrorKind::InvalidInput,
                "reference too short for " + std::to_string(k) + " segments");
  }
  std::vector<FrameRange> ranges;
  ranges.reserve(k);
  const std::size_t base = ref_length / k;
  const std::size_t remainder = ref_length % k;
  std::size_t begin = 0;
  for (std::size_t s = 0; s < k; ++s) {
    const std::size_t size = base + (s < remainder ? 1 : 0);
    ranges.push_back({begin, begin + size});
    begin += size;
  }
  return ranges;
}

SegmentDurations segment_durations(const align::AlignmentResult& alignment,
                                   const std::vector<FrameRange>& boundaries,
                                   double fps_user, double fps_ref) {
  if (alignment.path.empty()) {
    throw Error(ErrorKind::InvalidInput, "segment_durations: empty path");
  }
  SegmentDurations out;
  out.t_ideal.reserve(boundaries.size());
  for (const auto& r : boundaries) {
    out.t_ideal.push_back(static_cast<double>(r.size()) / fps_ref);
  }

  auto segment_of = [&](std::size_t expert_frame) -> std::size_t {
    for (std::size_t s = 0; s < boundaries.size(); ++s) {
      if (expert_frame >= boundaries[s].begin &&
          expert_frame < boundaries[s].end) {
        return s;
      }
    }
    return boundaries.size() - 1;
  };

  // Earliest segment any of the learner frame's partners falls in.
  std::vector<std::size_t> counts(boundaries.size(), 0);
  constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
  std::size_t current_learner = kNone;
  std::size_t current_segment = 0;
  auto flush = [&]() {
    if (current_learner != kNone) ++counts[current_segment];
  };
  for (const auto& [uf, ef] : alignment.path) {
    const std::size_t seg = segment_of(ef);
    if (uf != current_learner) {
      flush();
      current_learner = uf;
      current_segment = seg;
    } else {
      current_segment = std::min(current_segment, seg);
    }
  }
  flush();

  out.t_actual.reserve(boundaries.size());
  for (std::size_t c : counts) {
    out.t_actual.push_back(static_cast<double>(c) / fps_user);
  }
  return out;
}

HitLabel label_for_score(double s) {
  if (s >= 90.0) return HitLabel::Perfect;
  if (s >= 80.0) return HitLabel::Excellent;
  if (s >= 70.0) return HitLabel::Great;
  if (s >= 60.0) return HitLabel::Good;
  if (s >= 50.0) return HitLabel::Imprecise;
  return HitLabel::Miss;
}

SegmentScore hit_judgement(double t_ideal, double t_actual) {
  if (!(t_ideal > 0.0)) {
    throw Error(ErrorKind::InvalidInput,
                "hit_judgement: ideal duration must be positive");
  }
  if (t_actual < 0.0) {
    throw Error(ErrorKind::InvalidInput,
                "hit_judgement: actual duration must be nonnegative");
  }
  SegmentScore s;
  s.t_ideal = t_ideal;
  s.t_actual = t_actual;
  s.score = std::max(0.0, 100.0 - std::abs(t_ideal - t_actual) / t_ideal * 100.0);
  s.label = label_for_score(s.score);
  return s;
}

std::vector<SegmentScore> score_segments(
    const align::AlignmentResult& alignment,
    const std::vector<FrameRange>& boundaries, double fps_user,
    double fps_ref) {
  const SegmentDurations d =
      segment_durations(alignment, boundaries, fps_user, fps_ref);
  std::vector<SegmentScore> out;
  out.reserve(boundaries.size());
  for (std::size_t s = 0; s < boundaries.size(); ++s) {
    SegmentScore sc = hit_judgement(d.t_ideal[s], d.t_actual[s]);
    sc.segment_index = s;
    out.push_back(sc);
  }
  return out;
}

namespace {

double position_error(const FramePositions& a, int joint,
                      const FramePositions& b) {
  const auto& pa = a[static_cast<std::size_t>(joint)];
  const auto& pb = b[static_cast<std::size_t>(joint)];
  const double dx = pa[0] - pb[0];
  const double dy = pa[1] - pb[1];
  const double dz = pa[2] - pb[2];
  return std::sqrt(dx * dx + dy * dy + dz * dz);
}

} // namespace

std::vector<JointDeviation> spatial_diff(
    const align::AlignmentResult& alignment, const MotionSequence& user,
    const MotionSequence& ref, double tolerance) {
  if (!user.has_positions() || !ref.has_positions()) {
    throw Error(ErrorKind::MissingData,
                "spatial_diff: both sequences must carry positions");
  }
  std::vector<JointDeviation> out;
  out.reserve(alignment.path.size() * kJointCount);
  for (const auto& [uf, ef] : alignment.path) {
    const auto& upos = (*user.positions)[uf];
    const auto& rpos = (*ref.positions)[ef];
    for (std::size_t j = 0; j < kJointCount; ++j) {
      JointDeviation d;
      d.joint = static_cast<int>(j);
      d.frame = ef;
      d.positional_error = position_error(upos, d.joint, rpos);
      d.angular_error =
          rotation_geodesic_angle(user.frames[uf][j], ref.frames[ef][j]);
      d.flagged = d.positional_error > tolerance;
      out.push_back(d);
    }
  }
  return out;
}

PoseMatchVerdict pose_match_step(const MotionSequence& user,
                                 std::size_t user_frame,
                                 const MotionSequence& ref,
                                 std::size_t ref_frame,
                                 double angular_tolerance,
                                 double position_tolerance,
                                 double advance_fraction) {
  if (!user.has_positions() || !ref.has_positions()) {
    throw Error(ErrorKind::MissingData,
                "pose_match_step: both frames must carry positions");
  }
  if (user_frame >= user.frames.size() || ref_frame >= ref.frames.size()) {
    throw Error(ErrorKind::InvalidInput, "pose_match_step: frame out of range");
  }
  PoseMatchVerdict v;
  std::size_t aligned = 0;
  const auto& upos = (*user.positions)[user_frame];
  const auto& rpos = (*ref.positions)[ref_frame];
  for (std::size_t j = 0; j < kJointCount; ++j) {
    const double ang = rotation_geodesic_angle(user.frames[user_frame][j],
                                               ref.frames[ref_frame][j]);
    const double pos = position_error(upos, static_cast<int>(j), rpos);
    const bool ok = ang < angular_tolerance && pos < position_tolerance;
    v.per_joint_aligned[j] = ok;
    if (ok) ++aligned;
  }
  v.aligned_fraction =
      static_cast<double>(aligned) / static_cast<double>(kJointCount);
  v.advance = v.aligned_fraction >= advance_fraction;
  return v;
}

} // namespace score
} // namespace coach
