#pragma once

#include <array>
#include <string>
#include <vector>

#include "coach/align.hpp"
#include "coach/forest.hpp"
#include "coach/motion.hpp"

namespace coach {
namespace verbal {

inline constexpr double kDefaultAngleThresholdDeg = 15.0;
inline constexpr std::size_t kDefaultDescriptorCap = 6;

enum class Direction { Left, Right, Up, Down, Forward, Backward };

enum class Action { ReduceExcessive, MoveToward, Maintain };

const char* direction_word(Direction d);

/// One templated coaching sentence: a joint, a direction, an action.
struct Descriptor {
  int joint = 0;
  Direction direction = Direction::Left;
  Action action = Action::ReduceExcessive;
  std::string sentence;
};

/// Fixed axis-to-word convention: x is lateral (+right/-left), y vertical
/// (+up/-down), z anterior (+forward/-backward). Stamped into reports so
/// outputs stay auditable.
Direction axis_to_direction(int axis, int sign);

/// The recorded convention table, for report stamping.
std::vector<std::pair<std::string, std::string>> direction_convention();

std::string render_sentence(int joint, Direction direction, Action action);

Descriptor make_descriptor(int joint, Direction direction, Action action);

/// Baseline verbalization: one descriptor per joint/axis whose mean
/// absolute wrapped difference along the warping path exceeds the
/// threshold. No cap, no region filtering; prone to listing too many
/// joints, which is the point of the forest-based variant.
std::vector<Descriptor> naive_descriptors(
    const align::AlignmentResult& alignment, const MotionSequence& user,
    const MotionSequence& ref,
    double angle_threshold = kDefaultAngleThresholdDeg);

/// Forest-guided verbalization: one descriptor per predicted-positive
/// joint in explanation rank order, spine/torso entries dropped unless
/// they are the only ones, truncated to `cap`.
std::vector<Descriptor> rf_descriptors(
    const forest::PathExplanation& explanation,
    const std::array<double, kFeatureCount>& x,
    std::size_t cap = kDefaultDescriptorCap);

/// Mean signed wrapped rotation difference per feature along the warping
/// path; the instance vector handed to the forest at feedback time.
std::array<double, kFeatureCount> path_mean_difference(
    const align::AlignmentResult& alignment, const MotionSequence& user,
    const MotionSequence& ref);

} // namespace verbal
} // namespace coach
