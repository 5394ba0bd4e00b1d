#pragma once

#include <array>
#include <cstddef>
#include <string>

namespace coach {

inline constexpr std::size_t kJointCount = 24;
inline constexpr std::size_t kAxisCount = 3;
inline constexpr std::size_t kFeatureCount = kJointCount * kAxisCount;

enum class Side { Left, Right, Center };

enum class Region { Arm, Leg, SpineTorso, Head };

/// One entry of the 24-joint body taxonomy. Index order matches the
/// rotation layout of the motion file format.
struct JointInfo {
  int index;
  const char* name;
  Side side;
  Region region;
};

/// Canonical joint table. Collars sit on the arm chain; pelvis and the
/// three spine joints form the torso group that verbal feedback
/// de-emphasizes.
inline constexpr std::array<JointInfo, kJointCount> kJoints = {{
    {0, "pelvis", Side::Center, Region::SpineTorso},
    {1, "left_hip", Side::Left, Region::Leg},
    {2, "right_hip", Side::Right, Region::Leg},
    {3, "spine1", Side::Center, Region::SpineTorso},
    {4, "left_knee", Side::Left, Region::Leg},
    {5, "right_knee", Side::Right, Region::Leg},
    {6, "spine2", Side::Center, Region::SpineTorso},
    {7, "left_ankle", Side::Left, Region::Leg},
    {8, "right_ankle", Side::Right, Region::Leg},
    {9, "spine3", Side::Center, Region::SpineTorso},
    {10, "left_foot", Side::Left, Region::Leg},
    {11, "right_foot", Side::Right, Region::Leg},
    {12, "neck", Side::Center, Region::Head},
    {13, "left_collar", Side::Left, Region::Arm},
    {14, "right_collar", Side::Right, Region::Arm},
    {15, "head", Side::Center, Region::Head},
    {16, "left_shoulder", Side::Left, Region::Arm},
    {17, "right_shoulder", Side::Right, Region::Arm},
    {18, "left_elbow", Side::Left, Region::Arm},
    {19, "right_elbow", Side::Right, Region::Arm},
    {20, "left_wrist", Side::Left, Region::Arm},
    {21, "right_wrist", Side::Right, Region::Arm},
    {22, "left_hand", Side::Left, Region::Arm},
    {23, "right_hand", Side::Right, Region::Arm},
}};

/// Looks up a joint by canonical name; returns -1 when unknown.
int joint_index_by_name(const std::string& name);

/// "left_knee" -> "left knee" for rendered sentences.
std::string joint_display_name(int joint);

} // namespace coach
