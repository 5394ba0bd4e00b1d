#pragma once

#include <iosfwd>
#include <string>

#include "coach/motion.hpp"

namespace coach {

/// Text format, version 1:
///
///   MOTION/1
///   fps <value>
///   axes intrinsic_xyz
///   joints <24 canonical names>
///   height <meters>          (only when subject height is known)
///   positions <0|1>
///   frames <N>
///   <N lines of 72 rotation values, +72 position values when present>
///
/// Values are written with 9 significant digits; a load/save cycle is
/// byte-identical.
std::string write_motion(const MotionSequence& seq);

void write_motion_file(const MotionSequence& seq, const std::string& path);

/// `source` names the input in parse errors ("file.motion:12: ...").
MotionSequence read_motion(const std::string& text, const std::string& source);

MotionSequence read_motion_file(const std::string& path);

/// Formats one value with the format's fixed 9-significant-digit rule.
std::string format_value(double v);

} // namespace coach
