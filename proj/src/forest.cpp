/*
 * Copyright 2026 The tunebench Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "forest.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <string>

#include "errors.hpp"

namespace tunebench {
namespace {

constexpr double kPureImpurity = 1e-12;

struct SplitChoice {
  bool found = false;
  int feature = -1;
  double threshold = 0.0;
  double child_impurity = std::numeric_limits<double>::infinity();
};

struct PendingNode {
  int node = 0;
  std::vector<std::size_t> indices;
  std::int64_t depth = 0;
  SplitChoice split;
  double improvement = 0.0;
};

// Child impurities closer than this count as equal, so exact ties resolve by
// scan order rather than by rounding noise.
constexpr double kSplitTieTolerance = 1e-12;

int majority(const ClassCounts& counts) { return counts[1] > counts[0] ? 1 : 0; }

class TreeBuilder {
 public:
  TreeBuilder(const LabeledData& data, const RandomForestSpec& spec, Rng& rng,
              std::size_t total)
      : data_(data),
        spec_(spec),
        rng_(rng),
        total_weight_(static_cast<double>(total)),
        min_weight_leaf_(spec.min_weight_fraction_leaf * static_cast<double>(total)),
        max_features_(resolve_max_features(spec.max_features, data.n_features)) {}

  DecisionTree build(std::vector<std::size_t> root_indices) {
    create(std::move(root_indices), 0);
    const bool best_first = spec_.max_leaf_nodes.has_value();
    std::size_t leaves = 1;
    while (!frontier_.empty()) {
      if (best_first && leaves >= static_cast<std::size_t>(*spec_.max_leaf_nodes)) break;
      std::size_t pick = frontier_.size() - 1;  // depth-first: most recent
      if (best_first) {
        pick = 0;
        for (std::size_t i = 1; i < frontier_.size(); ++i) {
          const auto& a = frontier_[i];
          const auto& b = frontier_[pick];
          if (a.improvement > b.improvement ||
              (a.improvement == b.improvement && a.node < b.node)) {
            pick = i;
          }
        }
      }
      PendingNode pending = std::move(frontier_[pick]);
      frontier_.erase(frontier_.begin() + static_cast<std::ptrdiff_t>(pick));
      expand(std::move(pending));
      ++leaves;
    }
    return std::move(tree_);
  }

 private:
  int create(std::vector<std::size_t> indices, std::int64_t depth) {
    TreeNode node;
    for (auto i : indices) node.counts[static_cast<std::size_t>(data_.labels[i])] += 1.0;
    node.impurity = node_impurity(node.counts, spec_.criterion);
    node.label = majority(node.counts);
    const int id = static_cast<int>(tree_.nodes.size());
    tree_.nodes.push_back(node);

    const double m = static_cast<double>(indices.size());
    const bool stop =
        (spec_.max_depth && depth >= *spec_.max_depth) ||
        m < static_cast<double>(spec_.min_samples_split) ||
        m < 2.0 * static_cast<double>(spec_.min_samples_leaf) ||
        m < 2.0 * min_weight_leaf_ || node.impurity <= kPureImpurity;
    if (stop) return id;

    SplitChoice split = find_split(indices);
    if (!split.found) return id;
    const double improvement =
        (m / total_weight_) * (node.impurity - split.child_impurity);
    if (improvement + DBL_EPSILON < spec_.min_impurity_decrease) return id;

    frontier_.push_back({id, std::move(indices), depth, split, improvement});
    return id;
  }

  void expand(PendingNode pending) {
    const auto& split = pending.split;
    std::vector<std::size_t> left, right;
    for (auto i : pending.indices) {
      if (data_.row(i)[static_cast<std::size_t>(split.feature)] <= split.threshold) {
        left.push_back(i);
      } else {
        right.push_back(i);
      }
    }
    pending.indices.clear();
    pending.indices.shrink_to_fit();
    const int left_id = create(std::move(left), pending.depth + 1);
    const int right_id = create(std::move(right), pending.depth + 1);
    auto& node = tree_.nodes[static_cast<std::size_t>(pending.node)];
    node.feature = split.feature;
    node.threshold = split.threshold;
    node.left = left_id;
    node.right = right_id;
  }

  SplitChoice find_split(const std::vector<std::size_t>& indices) {
    const std::size_t d = data_.n_features;
    // Draw features in random order until max_features non-constant ones
    // have been seen; constant features do not count.
    std::vector<std::size_t> permutation(d);
    std::iota(permutation.begin(), permutation.end(), std::size_t{0});
    std::vector<std::size_t> visited;
    for (std::size_t pos = 0; pos < d && visited.size() < max_features_; ++pos) {
      const auto j = pos + static_cast<std::size_t>(rng_.uniform_index(d - pos));
      std::swap(permutation[pos], permutation[j]);
      const auto f = permutation[pos];
      double lo = std::numeric_limits<double>::infinity();
      double hi = -lo;
      for (auto i : indices) {
        const double v = data_.row(i)[f];
        lo = std::min(lo, v);
        hi = std::max(hi, v);
      }
      if (hi > lo) visited.push_back(f);
    }
    std::sort(visited.begin(), visited.end());

    SplitChoice best;
    const double m = static_cast<double>(indices.size());
    const double min_leaf = static_cast<double>(spec_.min_samples_leaf);
    std::vector<std::pair<double, int>> column(indices.size());
    ClassCounts total{};
    for (auto i : indices) total[static_cast<std::size_t>(data_.labels[i])] += 1.0;

    for (auto f : visited) {
      for (std::size_t k = 0; k < indices.size(); ++k) {
        column[k] = {data_.row(indices[k])[f], data_.labels[indices[k]]};
      }
      std::sort(column.begin(), column.end());
      ClassCounts left{};
      for (std::size_t p = 0; p + 1 < column.size(); ++p) {
        left[static_cast<std::size_t>(column[p].second)] += 1.0;
        if (!(column[p].first < column[p + 1].first)) continue;
        const double n_left = static_cast<double>(p + 1);
        const double n_right = m - n_left;
        if (n_left < min_leaf || n_right < min_leaf) continue;
        if (n_left < min_weight_leaf_ || n_right < min_weight_leaf_) continue;
        const ClassCounts right{total[0] - left[0], total[1] - left[1]};
        const double child = impurity(left, right, spec_.criterion);
        if (child < best.child_impurity - kSplitTieTolerance) {
          double threshold = column[p].first / 2.0 + column[p + 1].first / 2.0;
          if (threshold == column[p + 1].first || !std::isfinite(threshold)) {
            threshold = column[p].first;
          }
          best = {true, static_cast<int>(f), threshold, child};
        }
      }
    }
    return best;
  }

  const LabeledData& data_;
  const RandomForestSpec& spec_;
  Rng& rng_;
  double total_weight_;
  double min_weight_leaf_;
  std::size_t max_features_;
  DecisionTree tree_;
  std::vector<PendingNode> frontier_;
};

// Renumbers reachable nodes in depth-first order, dropping pruned subtrees.
DecisionTree compact(const DecisionTree& tree) {
  DecisionTree out;
  std::function<int(int)> copy = [&](int id) -> int {
    const int new_id = static_cast<int>(out.nodes.size());
    out.nodes.push_back(tree.nodes[static_cast<std::size_t>(id)]);
    if (!out.nodes.back().is_leaf()) {
      const int l = copy(tree.nodes[static_cast<std::size_t>(id)].left);
      const int r = copy(tree.nodes[static_cast<std::size_t>(id)].right);
      out.nodes[static_cast<std::size_t>(new_id)].left = l;
      out.nodes[static_cast<std::size_t>(new_id)].right = r;
    }
    return new_id;
  };
  copy(0);
  return out;
}

void prune_cost_complexity(DecisionTree& tree, double ccp_alpha,
                           double total_weight) {
  auto risk = [&](const TreeNode& n) {
    return (n.counts[0] + n.counts[1]) / total_weight * n.impurity;
  };
  while (true) {
    double weakest = std::numeric_limits<double>::infinity();
    int weakest_node = -1;
    // Post-order accumulation of subtree leaf risk and leaf counts.
    std::vector<double> subtree_risk(tree.nodes.size(), 0.0);
    std::vector<std::size_t> subtree_leaves(tree.nodes.size(), 0);
    std::function<void(int)> visit = [&](int id) {
      const auto& n = tree.nodes[static_cast<std::size_t>(id)];
      const auto u = static_cast<std::size_t>(id);
      if (n.is_leaf()) {
        subtree_risk[u] = risk(n);
        subtree_leaves[u] = 1;
        return;
      }
      visit(n.left);
      visit(n.right);
      const auto l = static_cast<std::size_t>(n.left);
      const auto r = static_cast<std::size_t>(n.right);
      subtree_risk[u] = subtree_risk[l] + subtree_risk[r];
      subtree_leaves[u] = subtree_leaves[l] + subtree_leaves[r];
      const double effective = (risk(n) - subtree_risk[u]) /
                               static_cast<double>(subtree_leaves[u] - 1);
      if (effective < weakest || (effective == weakest && id < weakest_node)) {
        weakest = effective;
        weakest_node = id;
      }
    };
    visit(0);
    if (weakest_node < 0 || weakest > ccp_alpha) break;
    auto& n = tree.nodes[static_cast<std::size_t>(weakest_node)];
    n.feature = -1;
    n.left = -1;
    n.right = -1;
    n.threshold = 0.0;
  }
  tree = compact(tree);
}

}  // namespace

double node_impurity(const ClassCounts& counts, Criterion criterion) {
  const double total = counts[0] + counts[1];
  if (total <= 0.0) return 0.0;
  double out = criterion == Criterion::kGini ? 1.0 : 0.0;
  for (double c : counts) {
    const double p = c / total;
    if (criterion == Criterion::kGini) {
      out -= p * p;
    } else if (p > 0.0) {
      out -= p * std::log2(p);
    }
  }
  return out;
}

double impurity(const ClassCounts& left, const ClassCounts& right,
                Criterion criterion) {
  const double n_left = left[0] + left[1];
  const double n_right = right[0] + right[1];
  const double total = n_left + n_right;
  if (total <= 0.0) return 0.0;
  return (n_left * node_impurity(left, criterion) +
          n_right * node_impurity(right, criterion)) /
         total;
}

int DecisionTree::predict(std::span<const double> x) const {
  std::size_t id = 0;
  while (!nodes[id].is_leaf()) {
    const auto& n = nodes[id];
    id = static_cast<std::size_t>(x[static_cast<std::size_t>(n.feature)] <= n.threshold
                                      ? n.left
                                      : n.right);
  }
  return nodes[id].label;
}

std::size_t DecisionTree::leaf_count() const {
  std::size_t leaves = 0;
  std::vector<int> stack = {0};
  while (!stack.empty()) {
    const auto& n = nodes[static_cast<std::size_t>(stack.back())];
    stack.pop_back();
    if (n.is_leaf()) {
      ++leaves;
    } else {
      stack.push_back(n.left);
      stack.push_back(n.right);
    }
  }
  return leaves;
}

std::size_t DecisionTree::depth() const {
  std::size_t deepest = 0;
  std::vector<std::pair<int, std::size_t>> stack = {{0, 0}};
  while (!stack.empty()) {
    const auto [id, d] = stack.back();
    stack.pop_back();
    deepest = std::max(deepest, d);
    const auto& n = nodes[static_cast<std::size_t>(id)];
    if (!n.is_leaf()) {
      stack.push_back({n.left, d + 1});
      stack.push_back({n.right, d + 1});
    }
  }
  return deepest;
}

std::size_t resolve_max_features(MaxFeatures mode, std::size_t n_features) {
  const double d = static_cast<double>(n_features);
  std::size_t k = n_features;
  if (mode == MaxFeatures::kSqrt) k = static_cast<std::size_t>(std::sqrt(d));
  if (mode == MaxFeatures::kLog2) k = static_cast<std::size_t>(std::log2(d));
  return std::clamp<std::size_t>(k, 1, std::max<std::size_t>(n_features, 1));
}

DecisionTree build_decision_tree(const LabeledData& data,
                                 std::span<const std::size_t> indices,
                                 const RandomForestSpec& spec, Rng& rng) {
  if (indices.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "cannot grow a tree on zero rows");
  }
  TreeBuilder builder(data, spec, rng, indices.size());
  DecisionTree tree =
      builder.build(std::vector<std::size_t>(indices.begin(), indices.end()));
  if (spec.ccp_alpha > 0.0) {
    prune_cost_complexity(tree, spec.ccp_alpha, static_cast<double>(indices.size()));
  }
  return tree;
}

PredictionOutput forest_vote(std::span<const DecisionTree> trees,
                             std::span<const double> x) {
  if (trees.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "forest has no trees");
  }
  std::size_t ones = 0;
  for (const auto& t : trees) ones += t.predict(x) == 1 ? 1 : 0;
  PredictionOutput out;
  out.score = static_cast<double>(ones) / static_cast<double>(trees.size());
  out.label = 2 * ones > trees.size() ? 1 : 0;
  return out;
}

std::vector<DecisionTree> fit_forest(const RandomForestSpec& spec,
                                     const LabeledData& train, std::uint64_t seed) {
  require_both_classes(train);
  const std::size_t n = train.rows();
  std::vector<DecisionTree> trees;
  trees.reserve(static_cast<std::size_t>(spec.n_trees));
  std::vector<std::size_t> indices(n);
  for (int t = 0; t < spec.n_trees; ++t) {
    Rng rng(mix_seed(seed, static_cast<std::uint64_t>(t)));
    if (spec.bootstrap) {
      for (auto& i : indices) i = static_cast<std::size_t>(rng.uniform_index(n));
    } else {
      std::iota(indices.begin(), indices.end(), std::size_t{0});
    }
    trees.push_back(build_decision_tree(train, indices, spec, rng));
  }
  return trees;
}

}  // namespace tunebench
