#pragma once

#include <string>
#include <vector>

#include "coach/descriptors.hpp"

namespace coach {
namespace verbal {

/// Fixed system instruction block plus one rendered descriptor sentence
/// per input line. The system text is covered by a byte-exact golden test
/// and must never be edited casually.
struct CoachingPrompt {
  std::string system_text;
  std::vector<std::string> input_lines;
};

/// The canonical coaching system prompt, byte-for-byte.
const std::string& coaching_system_text();

/// Renders descriptors into the prompt; an empty list yields the sentinel
/// line "No significant deviations detected."
CoachingPrompt assemble_prompt(const std::vector<Descriptor>& descriptors);

/// FNV-1a 64-bit hash, used to pin the golden prompt bytes in reports.
std::uint64_t fnv1a64(const std::string& data);

} // namespace verbal
} // namespace coach
