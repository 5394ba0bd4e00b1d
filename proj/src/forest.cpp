#include "coach/forest.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "coach/error.hpp"
#include "coach/rng.hpp"

namespace coach {
namespace forest {

namespace {

const TreeNode& descend(const Tree& tree,
                        const std::array<double, kFeatureCount>& x) {
  int idx = 0;
  while (tree.nodes[static_cast<std::size_t>(idx)].feature >= 0) {
    const TreeNode& n = tree.nodes[static_cast<std::size_t>(idx)];
    idx = x[static_cast<std::size_t>(n.feature)] <= n.threshold ? n.left
                                                                : n.right;
  }
  return tree.nodes[static_cast<std::size_t>(idx)];
}

double gini(std::size_t pos, std::size_t total) {
  if (total == 0) return 0.0;
  const double p = static_cast<double>(pos) / static_cast<double>(total);
  return 1.0 - p * p - (1.0 - p) * (1.0 - p);
}

struct SplitChoice {
  bool valid = false;
  int feature = -1;
  double threshold = 0.0;
  double impurity = 0.0; // weighted child impurity, lower is better
};

struct TrainContext {
  const std::vector<sim::LabeledFrame>* frames;
  std::size_t joint;
  int max_depth;
  int min_samples_leaf;
  int feature_subsample;
};

/// Best Gini split over a random feature subset; candidate thresholds sit
/// between consecutive distinct sorted values.
SplitChoice best_split(const TrainContext& ctx,
                       const std::vector<std::size_t>& samples, Rng& rng) {
  // Draw the feature subset (partial Fisher-Yates over 0..71).
  std::array<int, kFeatureCount> pool;
  std::iota(pool.begin(), pool.end(), 0);
  const auto subset =
      static_cast<std::size_t>(std::min<int>(ctx.feature_subsample,
                                             kFeatureCount));
  for (std::size_t i = 0; i < subset; ++i) {
    const std::size_t k = i + rng.uniform_index(kFeatureCount - i);
    std::swap(pool[i], pool[k]);
  }

  SplitChoice best;
  std::vector<std::pair<double, bool>> vals(samples.size());
  for (std::size_t fi = 0; fi < subset; ++fi) {
    const auto f = static_cast<std::size_t>(pool[fi]);
    for (std::size_t s = 0; s < samples.size(); ++s) {
      const auto& frame = (*ctx.frames)[samples[s]];
      vals[s] = {frame.x[f], frame.y[ctx.joint]};
    }
    std::sort(vals.begin(), vals.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });

    std::size_t total_pos = 0;
    for (const auto& [v, y] : vals) total_pos += y ? 1 : 0;
    const std::size_t n = vals.size();

    std::size_t left_pos = 0;
    for (std::size_t s = 0; s + 1 < n; ++s) {
      left_pos += vals[s].second ? 1 : 0;
      if (vals[s].first == vals[s + 1].first) continue;
      const std::size_t left_n = s + 1;
      const std::size_t right_n = n - left_n;
      const double impurity =
          (static_cast<double>(left_n) * gini(left_pos, left_n) +
           static_cast<double>(right_n) * gini(total_pos - left_pos, right_n)) /
          static_cast<double>(n);
      if (!best.valid || impurity < best.impurity) {
        const double a = vals[s].first;
        const double b = vals[s + 1].first;
        double mid = a + (b - a) * 0.5;
        if (!(mid > a && mid < b)) mid = a; // adjacent doubles
        best.valid = true;
        best.feature = static_cast<int>(f);
        best.threshold = mid;
        best.impurity = impurity;
      }
    }
  }
  return best;
}

int build_node(Tree& tree, const TrainContext& ctx,
               std::vector<std::size_t>& samples, int depth, Rng& rng) {
  std::size_t pos = 0;
  for (std::size_t s : samples) pos += (*ctx.frames)[s].y[ctx.joint] ? 1 : 0;

  const bool pure = pos == 0 || pos == samples.size();
  const bool depth_capped = ctx.max_depth > 0 && depth >= ctx.max_depth;
  SplitChoice split;
  if (!pure && !depth_capped &&
      samples.size() >= 2 * static_cast<std::size_t>(ctx.min_samples_leaf)) {
    split = best_split(ctx, samples, rng);
  }

  const int index = static_cast<int>(tree.nodes.size());
  tree.nodes.emplace_back();
  if (!split.valid) {
    tree.nodes[static_cast<std::size_t>(index)].positive_fraction =
        static_cast<double>(pos) / static_cast<double>(samples.size());
    return index;
  }

  std::vector<std::size_t> left, right;
  left.reserve(samples.size());
  right.reserve(samples.size());
  for (std::size_t s : samples) {
    const double v = (*ctx.frames)[s].x[static_cast<std::size_t>(split.feature)];
    (v <= split.threshold ? left : right).push_back(s);
  }
  samples.clear();
  samples.shrink_to_fit();

  const int left_child = build_node(tree, ctx, left, depth + 1, rng);
  const int right_child = build_node(tree, ctx, right, depth + 1, rng);
  TreeNode& node = tree.nodes[static_cast<std::size_t>(index)];
  node.feature = split.feature;
  node.threshold = split.threshold;
  node.left = left_child;
  node.right = right_child;
  return index;
}

Tree train_tree(const std::vector<sim::LabeledFrame>& frames,
                std::size_t joint, const ForestParams& params, Rng& rng) {
  std::vector<std::size_t> bootstrap(frames.size());
  for (auto& s : bootstrap) s = rng.uniform_index(frames.size());

  TrainContext ctx{&frames, joint, params.max_depth, params.min_samples_leaf,
                   params.feature_subsample};
  Tree tree;
  build_node(tree, ctx, bootstrap, 0, rng);
  return tree;
}

} // namespace

bool Tree::leaf_decision(const std::array<double, kFeatureCount>& x) const {
  return descend(*this, x).positive_fraction >= 0.5;
}

double Tree::leaf_fraction(const std::array<double, kFeatureCount>& x) const {
  return descend(*this, x).positive_fraction;
}

ForestModel train_forest(const sim::SyntheticDataset& dataset,
                         int n_estimators, int max_depth, std::uint64_t seed) {
  ForestParams params;
  params.n_estimators = n_estimators;
  params.max_depth = max_depth;
  return train_forest(dataset, params, seed);
}

ForestModel train_forest(const sim::SyntheticDataset& dataset,
                         const ForestParams& params, std::uint64_t seed) {
  if (dataset.train.empty()) {
    throw Error(ErrorKind::InvalidInput, "train_forest: empty train split");
  }
  if (params.n_estimators < 1) {
    throw Error(ErrorKind::InvalidConfig,
                "train_forest: n_estimators must be >= 1");
  }
  ForestModel model;
  model.params = params;
  model.seed = seed;
  for (std::size_t j = 0; j < kJointCount; ++j) {
    model.joints[j].reserve(static_cast<std::size_t>(params.n_estimators));
    for (int t = 0; t < params.n_estimators; ++t) {
      Rng rng = Rng::derive(seed, 3, j, static_cast<std::uint64_t>(t));
      model.joints[j].push_back(
          train_tree(dataset.train, j, params, rng));
    }
  }
  return model;
}

Prediction predict(const ForestModel& model,
                   const std::array<double, kFeatureCount>& x) {
  Prediction p;
  for (std::size_t j = 0; j < kJointCount; ++j) {
    double sum = 0.0;
    for (const auto& tree : model.joints[j]) sum += tree.leaf_fraction(x);
    p.scores[j] = sum / static_cast<double>(model.joints[j].size());
    p.labels[j] = p.scores[j] >= model.params.decision_threshold;
  }
  return p;
}

PathExplanation explain(const ForestModel& model,
                        const std::array<double, kFeatureCount>& x) {
  const Prediction pred = predict(model, x);
  PathExplanation out;
  for (std::size_t j = 0; j < kJointCount; ++j) {
    if (!pred.labels[j]) continue;

    // (feature, comparator) -> condition with tightest threshold and the
    // number of positive-voting trees whose taken path carries it.
    std::vector<PathCondition> merged;
    auto merge_in = [&](const PathCondition& c) {
      for (auto& m : merged) {
        if (m.feature == c.feature && m.greater == c.greater) {
          if (c.greater ? c.threshold > m.threshold
                        : c.threshold < m.threshold) {
            m.threshold = c.threshold;
          }
          m.vote_count += 1;
          return;
        }
      }
      PathCondition fresh = c;
      fresh.vote_count = 1;
      merged.push_back(fresh);
    };

    for (const auto& tree : model.joints[j]) {
      if (!tree.leaf_decision(x)) continue;

      // Conditions along the taken path, deduped within this tree.
      std::vector<PathCondition> path;
      int idx = 0;
      while (tree.nodes[static_cast<std::size_t>(idx)].feature >= 0) {
        const TreeNode& n = tree.nodes[static_cast<std::size_t>(idx)];
        const bool goes_left =
            x[static_cast<std::size_t>(n.feature)] <= n.threshold;
        PathCondition c;
        c.feature = n.feature;
        c.joint = n.feature / static_cast<int>(kAxisCount);
        c.axis = n.feature % static_cast<int>(kAxisCount);
        c.greater = !goes_left;
        c.threshold = n.threshold;
        bool seen = false;
        for (auto& p : path) {
          if (p.feature == c.feature && p.greater == c.greater) {
            if (c.greater ? c.threshold > p.threshold
                          : c.threshold < p.threshold) {
              p.threshold = c.threshold;
            }
            seen = true;
            break;
          }
        }
        if (!seen) path.push_back(c);
        idx = goes_left ? n.left : n.right;
      }
      for (const auto& c : path) merge_in(c);
    }

    std::sort(merged.begin(), merged.end(),
              [&](const PathCondition& a, const PathCondition& b) {
                if (a.vote_count != b.vote_count)
                  return a.vote_count > b.vote_count;
                const double ma = std::abs(x[static_cast<std::size_t>(a.feature)]);
                const double mb = std::abs(x[static_cast<std::size_t>(b.feature)]);
                if (ma != mb) return ma > mb;
                if (a.feature != b.feature) return a.feature < b.feature;
                return a.greater < b.greater;
              });

    JointExplanation je;
    je.joint = static_cast<int>(j);
    je.score = pred.scores[j];
    je.conditions = std::move(merged);
    out.positives.push_back(std::move(je));
  }
  // Rank joints by ensemble confidence; joint index settles ties.
  std::stable_sort(out.positives.begin(), out.positives.end(),
                   [](const JointExplanation& a, const JointExplanation& b) {
                     return a.score > b.score;
                   });
  return out;
}

Metrics evaluate(const ForestModel& model,
                 const std::vector<sim::LabeledFrame>& test) {
  if (test.empty()) {
    throw Error(ErrorKind::InvalidInput, "evaluate: empty test split");
  }
  Metrics m;
  std::size_t exact_frames = 0;
  for (const auto& frame : test) {
    const Prediction p = predict(model, frame.x);
    bool all_correct = true;
    for (std::size_t j = 0; j < kJointCount; ++j) {
      const bool truth = frame.y[j];
      const bool pred = p.labels[j];
      if (pred && truth) ++m.true_positives;
      else if (pred && !truth) ++m.false_positives;
      else if (!pred && truth) ++m.false_negatives;
      else ++m.true_negatives;
      if (pred != truth) all_correct = false;
    }
    if (all_correct) ++exact_frames;
  }
  m.subset_accuracy =
      static_cast<double>(exact_frames) / static_cast<double>(test.size());
  const double tp = static_cast<double>(m.true_positives);
  const double fp = static_cast<double>(m.false_positives);
  const double fn = static_cast<double>(m.false_negatives);
  m.precision = (tp + fp) > 0.0 ? tp / (tp + fp) : 0.0;
  m.recall = (tp + fn) > 0.0 ? tp / (tp + fn) : 0.0;
  m.f1 = (m.precision + m.recall) > 0.0
             ? 2.0 * m.precision * m.recall / (m.precision + m.recall)
             : 0.0;
  return m;
}

std::vector<AblationRow> ablation(
    const sim::SyntheticDataset& dataset,
    const std::vector<std::pair<int, int>>& grid, std::uint64_t seed) {
  if (grid.empty()) {
    throw Error(ErrorKind::InvalidConfig, "ablation: empty configuration grid");
  }
  std::vector<AblationRow> rows;
  rows.reserve(grid.size());
  for (const auto& [n_estimators, max_depth] : grid) {
    AblationRow row;
    row.n_estimators = n_estimators;
    row.max_depth = max_depth;
    const ForestModel model =
        train_forest(dataset, n_estimators, max_depth, seed);
    row.metrics = evaluate(model, dataset.test);
    row.adopted = (n_estimators == 5 && max_depth == 0);
    rows.push_back(row);
  }
  return rows;
}

} // namespace forest
} // namespace coach
