#pragma once

#include <cstdint>
#include <string>

#include "coach/completion.hpp"
#include "coach/descriptors.hpp"
#include "coach/forest.hpp"
#include "coach/noise.hpp"
#include "coach/scoring.hpp"

namespace coach {
namespace pipeline {

/// Every tolerance, seed, and knob of the pipeline. Defaults reproduce
/// the adopted constants: 30 degrees, 0.1 m, 75% advance, 4 segments,
/// 5 estimators with unlimited depth.
struct PipelineConfig {
  std::size_t segments = 4;
  double angular_tolerance_deg = score::kDefaultAngularToleranceDeg;
  double position_tolerance_m = score::kDefaultPositionToleranceM;
  double advance_fraction = score::kAdvanceFraction;

  sim::SimulateConfig simulate;
  std::uint64_t simulate_seed = 7;

  forest::ForestParams forest;
  std::uint64_t forest_seed = 7;

  double naive_threshold_deg = verbal::kDefaultAngleThresholdDeg;
  std::size_t descriptor_cap = verbal::kDefaultDescriptorCap;

  bool use_fast_dtw = false;
  int fast_radius = 10;

  bool stub = true;
  verbal::HttpCompletionConfig completion;
};

/// Text config file, version 1: "key value" lines mirroring the fields.
PipelineConfig read_config(const std::string& text, const std::string& source);

PipelineConfig read_config_file(const std::string& path);

std::string write_config(const PipelineConfig& config);

/// Applies the credential environment overrides (endpoint and key); only
/// service credentials may come from the environment.
void apply_env_overrides(PipelineConfig& config);

} // namespace pipeline
} // namespace coach
