#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "coach/motion.hpp"

namespace coach {
namespace synth {

/// Procedurally generated expert motion: smooth multi-sine rotation
/// trajectories on every joint/axis plus skeleton positions with coherent
/// sway. Deterministic in (seed, index).
MotionSequence make_expert_motion(std::uint64_t seed, int index,
                                  std::size_t frames = 120, double fps = 30.0);

/// Corpus of `count` expert motions with mildly varied lengths.
std::vector<MotionSequence> make_corpus(std::uint64_t seed, std::size_t count,
                                        std::size_t min_frames = 100);

/// The 300-frame benchmark pair: an expert reference and a learner take
/// of the same motion with tempo drift, joint noise, and junk padding on
/// both ends.
struct FixturePair {
  MotionSequence reference;
  MotionSequence learner;
};

FixturePair make_fixture_pair(std::uint64_t seed, std::size_t ref_frames = 300);

} // namespace synth
} // namespace coach
