#pragma once

#include <string>

#include "coach/noise.hpp"

namespace coach {
namespace sim {

/// Text format, version 1: provenance header (seed, perturbation config,
/// source names with their split), then the train and test frame blocks.
/// Each frame record is "<source> <24 label bits> <72 feature values>".
std::string write_dataset(const SyntheticDataset& ds);

void write_dataset_file(const SyntheticDataset& ds, const std::string& path);

SyntheticDataset read_dataset(const std::string& text,
                              const std::string& source);

SyntheticDataset read_dataset_file(const std::string& path);

} // namespace sim
} // namespace coach
