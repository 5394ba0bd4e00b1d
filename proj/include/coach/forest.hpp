#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "coach/noise.hpp"

namespace coach {
namespace forest {

/// Flat node storage; `feature` is -1 for leaves. Internal nodes route
/// x[feature] <= threshold to `left`, otherwise to `right`.
struct TreeNode {
  int feature = -1;
  double threshold = 0.0;
  int left = -1;
  int right = -1;
  double positive_fraction = 0.0; // leaves only
};

struct Tree {
  std::vector<TreeNode> nodes; // root at index 0

  bool leaf_decision(const std::array<double, kFeatureCount>& x) const;
  double leaf_fraction(const std::array<double, kFeatureCount>& x) const;
};

struct ForestParams {
  int n_estimators = 5;
  int max_depth = 0; // 0 = unlimited
  int min_samples_leaf = 1;
  int feature_subsample = 9; // ceil(sqrt(72))
  double decision_threshold = 0.5;
};

/// 24 independent binary ensembles sharing one set of hyperparameters.
struct ForestModel {
  ForestParams params;
  std::uint64_t seed = 0;
  std::array<std::vector<Tree>, kJointCount> joints;
};

struct Prediction {
  std::array<bool, kJointCount> labels{};
  std::array<double, kJointCount> scores{};
};

/// One threshold condition gathered from root-to-leaf paths of trees that
/// voted positive; vote_count is the number of such trees carrying it.
struct PathCondition {
  int feature = 0; // 0..71
  int joint = 0;   // feature / 3
  int axis = 0;    // feature % 3
  bool greater = false; // comparator: true for ">", false for "<="
  double threshold = 0.0;
  int vote_count = 0;
};

struct JointExplanation {
  int joint = 0;
  double score = 0.0;
  std::vector<PathCondition> conditions; // ranked
};

struct PathExplanation {
  std::vector<JointExplanation> positives; // joint index ascending
};

struct Metrics {
  double subset_accuracy = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::size_t true_positives = 0;
  std::size_t false_positives = 0;
  std::size_t false_negatives = 0;
  std::size_t true_negatives = 0;
};

struct AblationRow {
  int n_estimators = 0;
  int max_depth = 0; // 0 = unlimited
  Metrics metrics;
  bool adopted = false; // the (5, unlimited) default configuration
};

/// Trains per-joint CART ensembles on bootstrap resamples: Gini splits,
/// 9-feature random subsets per node, growth to purity unless max_depth
/// caps it. Fully deterministic for a given seed.
ForestModel train_forest(const sim::SyntheticDataset& dataset,
                         int n_estimators, int max_depth, std::uint64_t seed);

ForestModel train_forest(const sim::SyntheticDataset& dataset,
                         const ForestParams& params, std::uint64_t seed);

/// Per joint: mean leaf positive fraction across trees; positive at >= 0.5.
Prediction predict(const ForestModel& model,
                   const std::array<double, kFeatureCount>& x);

/// Decision-path extraction for every predicted-positive joint: conditions
/// along the taken paths of positive-voting trees, merged per
/// (feature, comparator) keeping the tightest threshold, ranked by vote
/// count then |x[feature]|.
PathExplanation explain(const ForestModel& model,
                        const std::array<double, kFeatureCount>& x);

/// Micro-averaged precision/recall/F1 over all (frame, joint) decisions
/// plus subset accuracy (all 24 labels correct).
Metrics evaluate(const ForestModel& model,
                 const std::vector<sim::LabeledFrame>& test);

/// Trains and evaluates every (n_estimators, max_depth) configuration.
std::vector<AblationRow> ablation(
    const sim::SyntheticDataset& dataset,
    const std::vector<std::pair<int, int>>& grid, std::uint64_t seed);

} // namespace forest
} // namespace coach
