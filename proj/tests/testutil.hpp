#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "coach/motion.hpp"
#include "coach/rng.hpp"

namespace testutil {

using coach::kAxisCount;
using coach::kJointCount;
using coach::MotionSequence;

/// Random wrapped-angle sequence, optionally with positions.
inline MotionSequence random_motion(coach::Rng& rng, std::size_t frames,
                                    bool with_positions = false,
                                    double angle_span = 180.0) {
  MotionSequence seq;
  seq.fps = 30.0;
  seq.frames.resize(frames);
  if (with_positions) {
    seq.positions.emplace();
    seq.positions->resize(frames);
  }
  for (std::size_t t = 0; t < frames; ++t) {
    for (std::size_t j = 0; j < kJointCount; ++j) {
      for (std::size_t a = 0; a < kAxisCount; ++a) {
        seq.frames[t][j][a] =
            coach::wrap_angle(angle_span * (2.0 * rng.uniform01() - 1.0));
        if (with_positions) {
          (*seq.positions)[t][j][a] = 2.0 * rng.uniform01() - 1.0;
        }
      }
    }
  }
  return seq;
}

/// Constant-angle sequence (every frame identical).
inline MotionSequence constant_motion(std::size_t frames, double value = 0.0,
                                      bool with_positions = false) {
  MotionSequence seq;
  seq.fps = 30.0;
  coach::FrameRotations fr{};
  for (auto& j : fr) {
    for (auto& a : j) a = value;
  }
  seq.frames.assign(frames, fr);
  if (with_positions) {
    seq.positions.emplace();
    coach::FramePositions fp{};
    seq.positions->assign(frames, fp);
  }
  return seq;
}

inline MotionSequence slice(const MotionSequence& seq, std::size_t start,
                            std::size_t len) {
  MotionSequence out;
  out.fps = seq.fps;
  out.subject_height = seq.subject_height;
  out.frames.assign(seq.frames.begin() + static_cast<long>(start),
                    seq.frames.begin() + static_cast<long>(start + len));
  if (seq.positions) {
    out.positions.emplace(
        seq.positions->begin() + static_cast<long>(start),
        seq.positions->begin() + static_cast<long>(start + len));
  }
  return out;
}

inline MotionSequence concat(const MotionSequence& a,
                             const MotionSequence& b) {
  MotionSequence out = a;
  out.frames.insert(out.frames.end(), b.frames.begin(), b.frames.end());
  if (out.positions && b.positions) {
    out.positions->insert(out.positions->end(), b.positions->begin(),
                          b.positions->end());
  } else {
    out.positions.reset();
  }
  return out;
}

} // namespace testutil
