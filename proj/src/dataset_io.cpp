#include "coach/dataset_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "coach/error.hpp"
#include "coach/motion_io.hpp"

namespace coach {
namespace sim {

namespace {

[[noreturn]] void parse_fail(const std::string& source, std::size_t line,
                             const std::string& msg) {
  throw Error(ErrorKind::Parse,
              source + ":" + std::to_string(line) + ": " + msg);
}

void write_frames(std::string& out, const std::vector<LabeledFrame>& frames) {
  for (const auto& f : frames) {
    out += std::to_string(f.source);
    out += ' ';
    for (bool b : f.y) out += b ? '1' : '0';
    for (double v : f.x) {
      out += ' ';
      out += format_value(v);
    }
    out += '\n';
  }
}

} // namespace

std::string write_dataset(const SyntheticDataset& ds) {
  std::string out;
  out.reserve((ds.train.size() + ds.test.size()) * 700 + 512);
  out += "DATASET/1\n";
  out += "seed " + std::to_string(ds.seed) + "\n";
  out += "joint_fraction " + format_value(ds.config.joint_fraction) + "\n";
  out += "sigma_scale " + format_value(ds.config.sigma_scale) + "\n";
  out += "sources " + std::to_string(ds.sources.size()) + "\n";
  for (std::size_t i = 0; i < ds.sources.size(); ++i) {
    const bool in_train =
        std::find(ds.train_sources.begin(), ds.train_sources.end(),
                  static_cast<int>(i)) != ds.train_sources.end();
    out += std::to_string(i) + " " + ds.sources[i] + " " +
           (in_train ? "train" : "test") + "\n";
  }
  out += "train " + std::to_string(ds.train.size()) + "\n";
  write_frames(out, ds.train);
  out += "test " + std::to_string(ds.test.size()) + "\n";
  write_frames(out, ds.test);
  return out;
}

void write_dataset_file(const SyntheticDataset& ds, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) {
    throw Error(ErrorKind::InvalidInput, "cannot open for writing: " + path);
  }
  f << write_dataset(ds);
}

SyntheticDataset read_dataset(const std::string& text,
                              const std::string& source) {
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  auto next_line = [&]() -> bool {
    if (!std::getline(in, line)) return false;
    ++lineno;
    return true;
  };
  auto expect_kv = [&](const std::string& key) -> std::string {
    if (!next_line()) parse_fail(source, lineno + 1, "expected '" + key + "'");
    std::istringstream ls(line);
    std::string k, v;
    ls >> k >> v;
    if (k != key) parse_fail(source, lineno, "expected '" + key + "'");
    return v;
  };

  if (!next_line() || line != "DATASET/1") {
    parse_fail(source, lineno == 0 ? 1 : lineno, "expected header 'DATASET/1'");
  }

  SyntheticDataset ds;
  try {
    ds.seed = std::stoull(expect_kv("seed"));
    ds.config.joint_fraction = std::stod(expect_kv("joint_fraction"));
    ds.config.sigma_scale = std::stod(expect_kv("sigma_scale"));
  } catch (const Error&) {
    throw;
  } catch (const std::exception&) {
    parse_fail(source, lineno, "invalid header value");
  }

  std::size_t n_sources = 0;
  try {
    n_sources = std::stoul(expect_kv("sources"));
  } catch (const std::exception&) {
    parse_fail(source, lineno, "invalid source count");
  }
  std::vector<bool> source_in_train(n_sources, false);
  for (std::size_t i = 0; i < n_sources; ++i) {
    if (!next_line()) parse_fail(source, lineno + 1, "expected source record");
    std::istringstream ls(line);
    std::size_t idx = 0;
    std::string name, split;
    if (!(ls >> idx >> name >> split) || idx != i ||
        (split != "train" && split != "test")) {
      parse_fail(source, lineno, "malformed source record");
    }
    ds.sources.push_back(name);
    source_in_train[i] = (split == "train");
    (split == "train" ? ds.train_sources : ds.test_sources)
        .push_back(static_cast<int>(i));
  }

  auto read_block = [&](const std::string& key,
                        std::vector<LabeledFrame>& sink) {
    std::size_t count = 0;
    try {
      count = std::stoul(expect_kv(key));
    } catch (const std::exception&) {
      parse_fail(source, lineno, "invalid " + key + " frame count");
    }
    sink.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
      if (!next_line()) parse_fail(source, lineno + 1, "expected frame record");
      std::istringstream ls(line);
      LabeledFrame f;
      std::string bits;
      if (!(ls >> f.source >> bits) || bits.size() != kJointCount) {
        parse_fail(source, lineno, "malformed frame record");
      }
      for (std::size_t j = 0; j < kJointCount; ++j) {
        if (bits[j] != '0' && bits[j] != '1') {
          parse_fail(source, lineno, "label bits must be 0 or 1");
        }
        f.y[j] = bits[j] == '1';
      }
      for (std::size_t k = 0; k < kFeatureCount; ++k) {
        if (!(ls >> f.x[k]) || !std::isfinite(f.x[k])) {
          parse_fail(source, lineno, "expected 72 finite feature values");
        }
      }
      std::string extra;
      if (ls >> extra) parse_fail(source, lineno, "trailing values in record");
      sink.push_back(f);
    }
  };
  read_block("train", ds.train);
  read_block("test", ds.test);
  return ds;
}

SyntheticDataset read_dataset_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) {
    throw Error(ErrorKind::Parse, path + ":1: cannot open file");
  }
  std::ostringstream ss;
  ss << f.rdbuf();
  return read_dataset(ss.str(), path);
}

} // namespace sim
} // namespace coach
