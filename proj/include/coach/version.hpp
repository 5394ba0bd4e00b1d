#pragma once

namespace coach {

inline constexpr const char* kVersion = "1.0.0";

} // namespace coach
