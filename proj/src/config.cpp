#include "coach/config.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "coach/error.hpp"
#include "coach/motion_io.hpp"

namespace coach {
namespace pipeline {

std::string write_config(const PipelineConfig& c) {
  std::string out;
  out += "CONFIG/1\n";
  out += "segments " + std::to_string(c.segments) + "\n";
  out += "angular_tolerance_deg " + format_value(c.angular_tolerance_deg) + "\n";
  out += "position_tolerance_m " + format_value(c.position_tolerance_m) + "\n";
  out += "advance_fraction " + format_value(c.advance_fraction) + "\n";
  out += "joint_fraction " + format_value(c.simulate.joint_fraction) + "\n";
  out += "sigma_scale " + format_value(c.simulate.sigma_scale) + "\n";
  out += "simulate_seed " + std::to_string(c.simulate_seed) + "\n";
  out += "n_estimators " + std::to_string(c.forest.n_estimators) + "\n";
  out += "max_depth " +
         (c.forest.max_depth == 0 ? std::string("none")
                                  : std::to_string(c.forest.max_depth)) +
         "\n";
  out += "forest_seed " + std::to_string(c.forest_seed) + "\n";
  out += "naive_threshold_deg " + format_value(c.naive_threshold_deg) + "\n";
  out += "descriptor_cap " + std::to_string(c.descriptor_cap) + "\n";
  out += "use_fast_dtw " + std::string(c.use_fast_dtw ? "1" : "0") + "\n";
  out += "fast_radius " + std::to_string(c.fast_radius) + "\n";
  out += "stub " + std::string(c.stub ? "1" : "0") + "\n";
  out += "completion_endpoint " +
         (c.completion.endpoint.empty() ? std::string("-")
                                        : c.completion.endpoint) +
         "\n";
  out += "completion_model " + c.completion.model + "\n";
  out += "completion_timeout_seconds " +
         format_value(c.completion.timeout_seconds) + "\n";
  return out;
}

PipelineConfig read_config(const std::string& text,
                           const std::string& source) {
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  PipelineConfig c;

  if (!std::getline(in, line) || line != "CONFIG/1") {
    throw Error(ErrorKind::Parse, source + ":1: expected header 'CONFIG/1'");
  }
  ++lineno;

  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string key, value;
    ls >> key >> value;
    if (key.empty() || value.empty()) {
      throw Error(ErrorKind::Parse, source + ":" + std::to_string(lineno) +
                                        ": expected 'key value'");
    }
    try {
      if (key == "segments") c.segments = std::stoul(value);
      else if (key == "angular_tolerance_deg") c.angular_tolerance_deg = std::stod(value);
      else if (key == "position_tolerance_m") c.position_tolerance_m = std::stod(value);
      else if (key == "advance_fraction") c.advance_fraction = std::stod(value);
      else if (key == "joint_fraction") c.simulate.joint_fraction = std::stod(value);
      else if (key == "sigma_scale") c.simulate.sigma_scale = std::stod(value);
      else if (key == "simulate_seed") c.simulate_seed = std::stoull(value);
      else if (key == "n_estimators") c.forest.n_estimators = std::stoi(value);
      else if (key == "max_depth") c.forest.max_depth = value == "none" ? 0 : std::stoi(value);
      else if (key == "forest_seed") c.forest_seed = std::stoull(value);
      else if (key == "naive_threshold_deg") c.naive_threshold_deg = std::stod(value);
      else if (key == "descriptor_cap") c.descriptor_cap = std::stoul(value);
      else if (key == "use_fast_dtw") c.use_fast_dtw = value == "1";
      else if (key == "fast_radius") c.fast_radius = std::stoi(value);
      else if (key == "stub") c.stub = value == "1";
      else if (key == "completion_endpoint") c.completion.endpoint = value == "-" ? "" : value;
      else if (key == "completion_model") c.completion.model = value;
      else if (key == "completion_timeout_seconds") c.completion.timeout_seconds = std::stod(value);
      else {
        throw Error(ErrorKind::Parse, source + ":" + std::to_string(lineno) +
                                          ": unknown key '" + key + "'");
      }
    } catch (const Error&) {
      throw;
    } catch (const std::exception&) {
      throw Error(ErrorKind::Parse, source + ":" + std::to_string(lineno) +
                                        ": invalid value for '" + key + "'");
    }
  }
  return c;
}

PipelineConfig read_config_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) {
    throw Error(ErrorKind::Parse, path + ":1: cannot open file");
  }
  std::ostringstream ss;
  ss << f.rdbuf();
  return read_config(ss.str(), path);
}

void apply_env_overrides(PipelineConfig& config) {
  if (const char* endpoint = std::getenv("MOTIONCOACH_ENDPOINT")) {
    config.completion.endpoint = endpoint;
  }
  if (const char* key = std::getenv("MOTIONCOACH_API_KEY")) {
    config.completion.credential = key;
  }
}

} // namespace pipeline
} // namespace coach
