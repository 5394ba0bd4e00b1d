#include "coach/noise.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "coach/error.hpp"

namespace coach {
namespace sim {

NoiseModel fit_noise_model(const MotionSequence& seq, double sigma_scale) {
  if (seq.frames.size() < 2) {
    throw Error(ErrorKind::InsufficientFrames,
                "fit_noise_model: need at least 2 frames");
  }
  if (sigma_scale < 0.0) {
    throw Error(ErrorKind::InvalidConfig,
                "fit_noise_model: sigma_scale must be nonnegative");
  }
  const AngleDiffSequence diffs = temporal_diff(seq);
  NoiseModel model;
  model.sigma_scale = sigma_scale;
  const double n = static_cast<double>(diffs.diffs.size());
  for (std::size_t j = 0; j < kJointCount; ++j) {
    for (std::size_t a = 0; a < kAxisCount; ++a) {
      double sum = 0.0;
      for (const auto& d : diffs.diffs) sum += std::abs(d[j][a]);
      const double mean = sum / n;
      if (mean > 0.0) {
        model.lambda[j][a] = 1.0 / mean;
        model.sigma[j][a] = sigma_scale * mean;
        model.skip[j][a] = false;
      } else {
        model.lambda[j][a] = 0.0;
        model.sigma[j][a] = 0.0;
        model.skip[j][a] = true;
      }
    }
  }
  return model;
}

double sample_noise(const NoiseModel& model, int joint, int axis, Rng& rng) {
  const auto j = static_cast<std::size_t>(joint);
  const auto a = static_cast<std::size_t>(axis);
  if (model.skip[j][a]) {
    throw Error(ErrorKind::SkippedAxis,
                "sample_noise: joint " + std::to_string(joint) + " axis " +
                    std::to_string(axis) + " has no measurable motion");
  }
  const double e = rng.exponential(model.lambda[j][a]);
  const double g = model.sigma[j][a] > 0.0
                       ? rng.normal(0.0, model.sigma[j][a])
                       : 0.0;
  const double s = rng.sign();
  return s * e + g;
}

PerturbResult perturb(const MotionSequence& seq, const NoiseModel& model,
                      double joint_fraction, Rng& rng) {
  if (!(joint_fraction > 0.0) || joint_fraction > 1.0) {
    throw Error(ErrorKind::InvalidConfig,
                "perturb: joint_fraction must be in (0, 1]");
  }
  const auto count = static_cast<std::size_t>(std::max<long long>(
      1, std::llround(joint_fraction * static_cast<double>(kJointCount))));

  // Partial Fisher-Yates draw of `count` distinct joints.
  std::array<int, kJointCount> pool;
  std::iota(pool.begin(), pool.end(), 0);
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t k = i + rng.uniform_index(kJointCount - i);
    std::swap(pool[i], pool[k]);
  }
  std::vector<int> selected(pool.begin(), pool.begin() + count);
  std::sort(selected.begin(), selected.end());

  PerturbResult out;
  out.sequence = seq;
  out.selected_joints = selected;
  std::array<bool, kJointCount> label{};
  for (int j : selected) label[static_cast<std::size_t>(j)] = true;
  out.labels.assign(seq.frames.size(), label);

  for (int j : selected) {
    const auto ji = static_cast<std::size_t>(j);
    for (std::size_t t = 0; t < seq.frames.size(); ++t) {
      for (std::size_t a = 0; a < kAxisCount; ++a) {
        if (model.skip[ji][a]) continue;
        const double eps = sample_noise(model, j, static_cast<int>(a), rng);
        out.sequence.frames[t][ji][a] =
            wrap_angle(seq.frames[t][ji][a] + eps);
      }
    }
  }
  return out;
}

SyntheticDataset build_dataset(const std::vector<MotionSequence>& motions,
                               const SimulateConfig& config,
                               std::uint64_t seed,
                               const std::vector<std::string>& names) {
  if (motions.size() < 2) {
    throw Error(ErrorKind::InvalidInput,
                "build_dataset: need at least 2 motions, got " +
                    std::to_string(motions.size()));
  }
  SyntheticDataset ds;
  ds.seed = seed;
  ds.config = config;
  for (std::size_t i = 0; i < motions.size(); ++i) {
    ds.sources.push_back(i < names.size()
                             ? names[i]
                             : "motion" + std::to_string(i));
  }

  // Sequence-level split with a seeded shuffle; rounding keeps at least
  // one sequence on each side.
  const std::size_t n = motions.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  Rng split_rng = Rng::derive(seed, 1); // split stream
  for (std::size_t i = n; i > 1; --i) {
    const std::size_t k = split_rng.uniform_index(i);
    std::swap(order[i - 1], order[k]);
  }
  auto n_train = static_cast<std::size_t>(
      std::llround(0.8 * static_cast<double>(n)));
  n_train = std::clamp<std::size_t>(n_train, 1, n - 1);
  std::vector<bool> in_train(n, false);
  for (std::size_t i = 0; i < n_train; ++i) in_train[order[i]] = true;

  for (std::size_t i = 0; i < n; ++i) {
    Rng rng = Rng::derive(seed, 2, i);
    const NoiseModel model = fit_noise_model(motions[i], config.sigma_scale);
    const PerturbResult pert =
        perturb(motions[i], model, config.joint_fraction, rng);
    auto& sink = in_train[i] ? ds.train : ds.test;
    (in_train[i] ? ds.train_sources : ds.test_sources)
        .push_back(static_cast<int>(i));
    for (std::size_t t = 0; t < motions[i].frames.size(); ++t) {
      LabeledFrame f;
      f.source = static_cast<int>(i);
      f.y = pert.labels[t];
      for (std::size_t j = 0; j < kJointCount; ++j) {
        for (std::size_t a = 0; a < kAxisCount; ++a) {
          f.x[j * kAxisCount + a] = wrap_angle(
              pert.sequence.frames[t][j][a] - motions[i].frames[t][j][a]);
        }
      }
      sink.push_back(f);
    }
  }
  return ds;
}

} // namespace sim
} // namespace coach
