#include "coach/forest_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "coach/error.hpp"

namespace coach {
namespace forest {

namespace {

[[noreturn]] void parse_fail(const std::string& source, std::size_t line,
                             const std::string& msg) {
  throw Error(ErrorKind::Parse,
              source + ":" + std::to_string(line) + ": " + msg);
}

std::string full_precision(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

} // namespace

std::string write_model(const ForestModel& model) {
  std::string out;
  out += "FOREST/1\n";
  out += "seed " + std::to_string(model.seed) + "\n";
  out += "n_estimators " + std::to_string(model.params.n_estimators) + "\n";
  out += "max_depth " +
         (model.params.max_depth == 0 ? std::string("none")
                                      : std::to_string(model.params.max_depth)) +
         "\n";
  out += "min_samples_leaf " + std::to_string(model.params.min_samples_leaf) +
         "\n";
  out += "feature_subsample " +
         std::to_string(model.params.feature_subsample) + "\n";
  out += "decision_threshold " +
         full_precision(model.params.decision_threshold) + "\n";
  for (std::size_t j = 0; j < kJointCount; ++j) {
    out += "joint " + std::to_string(j) + " trees " +
           std::to_string(model.joints[j].size()) + "\n";
    for (const auto& tree : model.joints[j]) {
      out += "tree " + std::to_string(tree.nodes.size()) + "\n";
      for (const auto& n : tree.nodes) {
        if (n.feature >= 0) {
          out += "I " + std::to_string(n.feature) + " " +
                 full_precision(n.threshold) + " " + std::to_string(n.left) +
                 " " + std::to_string(n.right) + "\n";
        } else {
          out += "L " + full_precision(n.positive_fraction) + "\n";
        }
      }
    }
  }
  return out;
}

void write_model_file(const ForestModel& model, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) {
    throw Error(ErrorKind::InvalidInput, "cannot open for writing: " + path);
  }
  f << write_model(model);
}

ForestModel read_model(const std::string& text, const std::string& source) {
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

  if (!next_line() || line != "FOREST/1") {
    parse_fail(source, lineno == 0 ? 1 : lineno, "expected header 'FOREST/1'");
  }

  ForestModel model;
  try {
    model.seed = std::stoull(expect_kv("seed"));
    model.params.n_estimators = std::stoi(expect_kv("n_estimators"));
    const std::string depth = expect_kv("max_depth");
    model.params.max_depth = depth == "none" ? 0 : std::stoi(depth);
    model.params.min_samples_leaf = std::stoi(expect_kv("min_samples_leaf"));
    model.params.feature_subsample =
        std::stoi(expect_kv("feature_subsample"));
    model.params.decision_threshold =
        std::stod(expect_kv("decision_threshold"));
  } catch (const Error&) {
    throw;
  } catch (const std::exception&) {
    parse_fail(source, lineno, "invalid header value");
  }

  for (std::size_t j = 0; j < kJointCount; ++j) {
    if (!next_line()) parse_fail(source, lineno + 1, "expected joint block");
    std::istringstream ls(line);
    std::string kw1, kw2;
    std::size_t idx = 0, tree_count = 0;
    if (!(ls >> kw1 >> idx >> kw2 >> tree_count) || kw1 != "joint" ||
        kw2 != "trees" || idx != j) {
      parse_fail(source, lineno, "malformed joint block header");
    }
    model.joints[j].reserve(tree_count);
    for (std::size_t t = 0; t < tree_count; ++t) {
      if (!next_line()) parse_fail(source, lineno + 1, "expected tree header");
      std::istringstream ts(line);
      std::string kw;
      std::size_t node_count = 0;
      if (!(ts >> kw >> node_count) || kw != "tree" || node_count == 0) {
        parse_fail(source, lineno, "malformed tree header");
      }
      Tree tree;
      tree.nodes.reserve(node_count);
      for (std::size_t k = 0; k < node_count; ++k) {
        if (!next_line()) parse_fail(source, lineno + 1, "expected node");
        std::istringstream ns(line);
        std::string tag;
        ns >> tag;
        TreeNode node;
        if (tag == "I") {
          if (!(ns >> node.feature >> node.threshold >> node.left >>
                node.right) ||
              node.feature < 0 ||
              node.feature >= static_cast<int>(kFeatureCount) ||
              node.left < 0 || node.right < 0 ||
              node.left >= static_cast<int>(node_count) ||
              node.right >= static_cast<int>(node_count)) {
            parse_fail(source, lineno, "malformed internal node");
          }
        } else if (tag == "L") {
          node.feature = -1;
          if (!(ns >> node.positive_fraction) ||
              !std::isfinite(node.positive_fraction)) {
            parse_fail(source, lineno, "malformed leaf node");
          }
        } else {
          parse_fail(source, lineno, "unknown node tag '" + tag + "'");
        }
        tree.nodes.push_back(node);
      }
      model.joints[j].push_back(std::move(tree));
    }
  }
  return model;
}

ForestModel read_model_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) {
    throw Error(ErrorKind::Parse, path + ":1: cannot open file");
  }
  std::ostringstream ss;
  ss << f.rdbuf();
  return read_model(ss.str(), path);
}

} // namespace forest
} // namespace coach
