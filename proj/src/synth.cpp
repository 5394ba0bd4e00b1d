#include "coach/synth.hpp"

#include <cmath>

#include "coach/noise.hpp"
#include "coach/rng.hpp"

namespace coach {
namespace synth {

namespace {

/// Rough T-pose joint offsets at unit body height.
constexpr std::array<std::array<double, 3>, kJointCount> kBasePose = {{
    {0.00, 0.55, 0.00},  // pelvis
    {-0.09, 0.52, 0.00}, // left_hip
    {0.09, 0.52, 0.00},  // right_hip
    {0.00, 0.65, 0.00},  // spine1
    {-0.10, 0.28, 0.00}, // left_knee
    {0.10, 0.28, 0.00},  // right_knee
    {0.00, 0.72, 0.00},  // spine2
    {-0.10, 0.05, 0.00}, // left_ankle
    {0.10, 0.05, 0.00},  // right_ankle
    {0.00, 0.78, 0.00},  // spine3
    {-0.10, 0.02, 0.06}, // left_foot
    {0.10, 0.02, 0.06},  // right_foot
    {0.00, 0.86, 0.00},  // neck
    {-0.07, 0.82, 0.00}, // left_collar
    {0.07, 0.82, 0.00},  // right_collar
    {0.00, 0.93, 0.00},  // head
    {-0.18, 0.82, 0.00}, // left_shoulder
    {0.18, 0.82, 0.00},  // right_shoulder
    {-0.30, 0.68, 0.00}, // left_elbow
    {0.30, 0.68, 0.00},  // right_elbow
    {-0.40, 0.55, 0.00}, // left_wrist
    {0.40, 0.55, 0.00},  // right_wrist
    {-0.44, 0.50, 0.00}, // left_hand
    {0.44, 0.50, 0.00},  // right_hand
}};

struct AxisWave {
  double amp1, freq1, phase1;
  double amp2, freq2, phase2;
  double offset;
};

double region_amplitude(Region region, Rng& rng) {
  switch (region) {
  case Region::Arm: return 18.0 + 22.0 * rng.uniform01();
  case Region::Leg: return 14.0 + 18.0 * rng.uniform01();
  case Region::SpineTorso: return 5.0 + 7.0 * rng.uniform01();
  case Region::Head: return 4.0 + 6.0 * rng.uniform01();
  }
  return 10.0;
}

AxisWave make_wave(Region region, Rng& rng) {
  AxisWave w;
  w.amp1 = region_amplitude(region, rng);
  w.freq1 = 0.3 + 0.7 * rng.uniform01();   // Hz
  w.phase1 = 2.0 * M_PI * rng.uniform01();
  w.amp2 = 2.0 + 6.0 * rng.uniform01();
  w.freq2 = 1.0 + 1.5 * rng.uniform01();
  w.phase2 = 2.0 * M_PI * rng.uniform01();
  w.offset = -25.0 + 50.0 * rng.uniform01();
  return w;
}

double eval_wave(const AxisWave& w, double seconds) {
  return w.offset + w.amp1 * std::sin(2.0 * M_PI * w.freq1 * seconds + w.phase1) +
         w.amp2 * std::sin(2.0 * M_PI * w.freq2 * seconds + w.phase2);
}

} // namespace

MotionSequence make_expert_motion(std::uint64_t seed, int index,
                                  std::size_t frames, double fps) {
  Rng rng = Rng::derive(seed, 11, static_cast<std::uint64_t>(index));
  const double height = 1.60 + 0.35 * rng.uniform01();

  std::array<std::array<AxisWave, kAxisCount>, kJointCount> waves;
  std::array<std::array<AxisWave, kAxisCount>, kJointCount> pos_waves;
  for (std::size_t j = 0; j < kJointCount; ++j) {
    const Region region = kJoints[j].region;
    for (std::size_t a = 0; a < kAxisCount; ++a) {
      waves[j][a] = make_wave(region, rng);
      AxisWave p = make_wave(region, rng);
      p.amp1 = 0.015 + 0.035 * rng.uniform01(); // meters at unit height
      p.amp2 = 0.005 + 0.010 * rng.uniform01();
      p.offset = 0.0;
      pos_waves[j][a] = p;
    }
  }
  // Whole-body sway shared by all joints.
  AxisWave sway = make_wave(Region::Leg, rng);
  sway.amp1 = 0.02;
  sway.amp2 = 0.01;
  sway.offset = 0.0;

  MotionSequence seq;
  seq.fps = fps;
  seq.subject_height = height;
  seq.frames.resize(frames);
  seq.positions.emplace();
  seq.positions->resize(frames);
  for (std::size_t t = 0; t < frames; ++t) {
    const double s = static_cast<double>(t) / fps;
    const double sway_x = eval_wave(sway, s);
    for (std::size_t j = 0; j < kJointCount; ++j) {
      for (std::size_t a = 0; a < kAxisCount; ++a) {
        seq.frames[t][j][a] = wrap_angle(eval_wave(waves[j][a], s));
        const double wobble = eval_wave(pos_waves[j][a], s);
        double base = kBasePose[j][a] + wobble;
        if (a == 0) base += sway_x;
        (*seq.positions)[t][j][a] = base * height;
      }
    }
  }
  return seq;
}

std::vector<MotionSequence> make_corpus(std::uint64_t seed, std::size_t count,
                                        std::size_t min_frames) {
  std::vector<MotionSequence> out;
  out.reserve(count);
  Rng rng = Rng::derive(seed, 12);
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t frames = min_frames + rng.uniform_index(41);
    out.push_back(make_expert_motion(seed, static_cast<int>(i), frames));
  }
  return out;
}

FixturePair make_fixture_pair(std::uint64_t seed, std::size_t ref_frames) {
  FixturePair pair;
  pair.reference = make_expert_motion(seed, 9000, ref_frames);

  Rng rng = Rng::derive(seed, 13);

  // Tempo-drifted resample of the reference (speed 0.9..1.1).
  MotionSequence learner;
  learner.fps = pair.reference.fps;
  learner.subject_height = 1.72;
  learner.positions.emplace();
  const double ref_height = *pair.reference.subject_height;
  const double height_ratio = 1.72 / ref_height;
  double src = 0.0;
  std::size_t t = 0;
  while (src < static_cast<double>(ref_frames) - 1.0) {
    const auto i = static_cast<std::size_t>(src);
    learner.frames.push_back(pair.reference.frames[i]);
    FramePositions pos = (*pair.reference.positions)[i];
    for (auto& joint : pos) {
      for (auto& c : joint) c *= height_ratio;
    }
    learner.positions->push_back(pos);
    const double rate =
        1.0 + 0.22 * std::sin(2.0 * M_PI * static_cast<double>(t) /
                              static_cast<double>(ref_frames));
    src += rate;
    ++t;
  }

  // Joint rotation noise fitted from the reference itself.
  const sim::NoiseModel model = sim::fit_noise_model(pair.reference);
  Rng noise_rng = Rng::derive(seed, 14);
  const sim::PerturbResult pert =
      sim::perturb(learner, model, sim::kDefaultJointFraction, noise_rng);
  learner.frames = pert.sequence.frames;

  // Two held posture errors large enough for verbal feedback.
  for (auto& frame : learner.frames) {
    frame[18][0] = wrap_angle(frame[18][0] + 25.0); // left_elbow leans right
    frame[5][1] = wrap_angle(frame[5][1] - 20.0);   // right_knee dips
  }

  // Two joints drift spatially past the 0.1 m tolerance (at unit height).
  const double drift = 0.15 * 1.72;
  for (auto& frame : *learner.positions) {
    frame[20][0] += drift; // left_wrist
    frame[5][2] += drift;  // right_knee
  }

  // Junk padding before and after: held pose with jitter.
  auto jitter_frame = [&](const FrameRotations& base,
                          const FramePositions& pos) {
    FrameRotations r = base;
    FramePositions p = pos;
    for (std::size_t j = 0; j < kJointCount; ++j) {
      for (std::size_t a = 0; a < kAxisCount; ++a) {
        r[j][a] = wrap_angle(r[j][a] + 40.0 * (rng.uniform01() - 0.5));
        p[j][a] += 0.05 * (rng.uniform01() - 0.5);
      }
    }
    return std::make_pair(r, p);
  };

  MotionSequence padded;
  padded.fps = learner.fps;
  padded.subject_height = learner.subject_height;
  padded.positions.emplace();
  for (int k = 0; k < 15; ++k) {
    auto [r, p] = jitter_frame(learner.frames.front(),
                               learner.positions->front());
    padded.frames.push_back(r);
    padded.positions->push_back(p);
  }
  for (std::size_t i = 0; i < learner.frames.size(); ++i) {
    padded.frames.push_back(learner.frames[i]);
    padded.positions->push_back((*learner.positions)[i]);
  }
  for (int k = 0; k < 20; ++k) {
    auto [r, p] = jitter_frame(learner.frames.back(),
                               learner.positions->back());
    padded.frames.push_back(r);
    padded.positions->push_back(p);
  }
  pair.learner = padded;
  return pair;
}

} // namespace synth
} // namespace coach
