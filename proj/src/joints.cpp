#include "coach/joints.hpp"

#include <algorithm>

namespace coach {

int joint_index_by_name(const std::string& name) {
  for (const auto& j : kJoints) {
    if (name == j.name) return j.index;
  }
  return -1;
}

std::string joint_display_name(int joint) {
  std::string s = kJoints[static_cast<std::size_t>(joint)].name;
  std::replace(s.begin(), s.end(), '_', ' ');
  return s;
}

} // namespace coach
