#include "coach/descriptors.hpp"

#include <cmath>

#include "coach/error.hpp"
#include "coach/joints.hpp"

namespace coach {
namespace verbal {

const char* direction_word(Direction d) {
  switch (d) {
  case Direction::Left: return "left";
  case Direction::Right: return "right";
  case Direction::Up: return "up";
  case Direction::Down: return "down";
  case Direction::Forward: return "forward";
  case Direction::Backward: return "backward";
  }
  return "left";
}

Direction axis_to_direction(int axis, int sign) {
  if (sign != 1 && sign != -1) {
    throw Error(ErrorKind::InvalidInput,
                "axis_to_direction: sign must be +1 or -1");
  }
  switch (axis) {
  case 0: return sign > 0 ? Direction::Right : Direction::Left;
  case 1: return sign > 0 ? Direction::Up : Direction::Down;
  case 2: return sign > 0 ? Direction::Forward : Direction::Backward;
  default:
    throw Error(ErrorKind::InvalidInput, "axis_to_direction: axis out of range");
  }
}

std::vector<std::pair<std::string, std::string>> direction_convention() {
  return {
      {"x+", "right"}, {"x-", "left"},     {"y+", "up"},
      {"y-", "down"},  {"z+", "forward"},  {"z-", "backward"},
  };
}

std::string render_sentence(int joint, Direction direction, Action action) {
  const std::string name = joint_display_name(joint);
  switch (action) {
  case Action::ReduceExcessive:
    return "Move your " + name + " " + direction_word(direction) +
           " and Reduce movement.";
  case Action::MoveToward:
    return "Move your " + name + " " + direction_word(direction) + ".";
  case Action::Maintain:
    return "Keep the movement as it is.";
  }
  return {};
}

Descriptor make_descriptor(int joint, Direction direction, Action action) {
  Descriptor d;
  d.joint = joint;
  d.direction = direction;
  d.action = action;
  d.sentence = render_sentence(joint, direction, action);
  return d;
}

std::array<double, kFeatureCount> path_mean_difference(
    const align::AlignmentResult& alignment, const MotionSequence& user,
    const MotionSequence& ref) {
  if (alignment.path.empty()) {
    throw Error(ErrorKind::InvalidInput, "path_mean_difference: empty path");
  }
  std::array<double, kFeatureCount> mean{};
  for (const auto& [uf, ef] : alignment.path) {
    for (std::size_t j = 0; j < kJointCount; ++j) {
      for (std::size_t a = 0; a < kAxisCount; ++a) {
        mean[j * kAxisCount + a] +=
            wrap_angle(user.frames[uf][j][a] - ref.frames[ef][j][a]);
      }
    }
  }
  const double n = static_cast<double>(alignment.path.size());
  for (auto& v : mean) v /= n;
  return mean;
}

std::vector<Descriptor> naive_descriptors(
    const align::AlignmentResult& alignment, const MotionSequence& user,
    const MotionSequence& ref, double angle_threshold) {
  if (alignment.path.empty()) {
    throw Error(ErrorKind::InvalidInput, "naive_descriptors: empty path");
  }
  std::array<double, kFeatureCount> mean_abs{};
  std::array<double, kFeatureCount> mean_signed{};
  for (const auto& [uf, ef] : alignment.path) {
    for (std::size_t j = 0; j < kJointCount; ++j) {
      for (std::size_t a = 0; a < kAxisCount; ++a) {
        const double d =
            wrap_angle(user.frames[uf][j][a] - ref.frames[ef][j][a]);
        mean_abs[j * kAxisCount + a] += std::abs(d);
        mean_signed[j * kAxisCount + a] += d;
      }
    }
  }
  const double n = static_cast<double>(alignment.path.size());
  std::vector<Descriptor> out;
  for (std::size_t j = 0; j < kJointCount; ++j) {
    for (std::size_t a = 0; a < kAxisCount; ++a) {
      const std::size_t f = j * kAxisCount + a;
      if (mean_abs[f] / n <= angle_threshold) continue;
      const double signed_mean = mean_signed[f] / n;
      if (signed_mean == 0.0) continue; // no direction to report
      const Direction dir = axis_to_direction(
          static_cast<int>(a), signed_mean > 0.0 ? 1 : -1);
      out.push_back(make_descriptor(static_cast<int>(j), dir,
                                    Action::ReduceExcessive));
    }
  }
  return out;
}

std::vector<Descriptor> rf_descriptors(
    const forest::PathExplanation& explanation,
    const std::array<double, kFeatureCount>& x, std::size_t cap) {
  struct Candidate {
    Descriptor descriptor;
    bool spine_torso = false;
  };
  std::vector<Candidate> candidates;

  for (const auto& je : explanation.positives) {
    // Direction comes from the dominant-axis feature among the joint's
    // ranked conditions; rank order breaks magnitude ties.
    int feature = -1;
    double magnitude = -1.0;
    for (const auto& c : je.conditions) {
      const double m = std::abs(x[static_cast<std::size_t>(c.feature)]);
      if (m > magnitude) {
        magnitude = m;
        feature = c.feature;
      }
    }
    if (feature < 0 || x[static_cast<std::size_t>(feature)] == 0.0) {
      // No usable condition (e.g. a root-leaf tree): fall back to the
      // joint's own dominant axis.
      feature = je.joint * static_cast<int>(kAxisCount);
      for (int a = 1; a < static_cast<int>(kAxisCount); ++a) {
        const int f = je.joint * static_cast<int>(kAxisCount) + a;
        if (std::abs(x[static_cast<std::size_t>(f)]) >
            std::abs(x[static_cast<std::size_t>(feature)])) {
          feature = f;
        }
      }
    }
    const double value = x[static_cast<std::size_t>(feature)];
    if (value == 0.0) continue; // zero-magnitude descriptors are not emitted
    const int axis = feature % static_cast<int>(kAxisCount);
    const Direction dir = axis_to_direction(axis, value > 0.0 ? 1 : -1);

    Candidate c;
    c.descriptor =
        make_descriptor(je.joint, dir, Action::ReduceExcessive);
    c.spine_torso = kJoints[static_cast<std::size_t>(je.joint)].region ==
                    Region::SpineTorso;
    candidates.push_back(std::move(c));
  }

  const bool only_spine = std::all_of(
      candidates.begin(), candidates.end(),
      [](const Candidate& c) { return c.spine_torso; });

  std::vector<Descriptor> out;
  for (const auto& c : candidates) {
    if (c.spine_torso && !only_spine) continue;
    out.push_back(c.descriptor);
    if (out.size() >= cap) break;
  }
  return out;
}

} // namespace verbal
} // namespace coach
