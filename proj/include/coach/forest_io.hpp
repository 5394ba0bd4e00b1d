#pragma once

#include <string>

#include "coach/forest.hpp"

namespace coach {
namespace forest {

/// Self-describing text serialization, version 1. Thresholds and leaf
/// fractions are written with 17 significant digits so a reloaded model
/// predicts bitwise identically.
std::string write_model(const ForestModel& model);

void write_model_file(const ForestModel& model, const std::string& path);

ForestModel read_model(const std::string& text, const std::string& source);

ForestModel read_model_file(const std::string& path);

} // namespace forest
} // namespace coach
