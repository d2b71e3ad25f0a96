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

#ifndef TUNEBENCH_SRC_FOREST_HPP_
#define TUNEBENCH_SRC_FOREST_HPP_

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "rng.hpp"
#include "training_data.hpp"

namespace tunebench {

enum class Criterion { kGini, kEntropy };
enum class MaxFeatures { kSqrt, kLog2, kAll };

struct RandomForestSpec {
  int n_trees = 100;
  Criterion criterion = Criterion::kGini;
  std::optional<std::int64_t> max_depth;
  MaxFeatures max_features = MaxFeatures::kSqrt;
  int min_samples_split = 2;
  int min_samples_leaf = 1;
  double min_weight_fraction_leaf = 0.0;
  std::optional<int> max_leaf_nodes;
  double min_impurity_decrease = 0.0;
  bool bootstrap = true;
  double ccp_alpha = 0.0;

  bool operator==(const RandomForestSpec&) const = default;
};

// Class counts are indexed by label: [disliked, liked].
using ClassCounts = std::array<double, 2>;

// Gini (1 - sum p^2) or entropy in bits of one node.
double node_impurity(const ClassCounts& counts, Criterion criterion);

// Size-weighted impurity of a two-way split.
double impurity(const ClassCounts& left, const ClassCounts& right,
                Criterion criterion);

struct TreeNode {
  // feature < 0 marks a leaf.
  int feature = -1;
  double threshold = 0.0;
  int left = -1;
  int right = -1;
  int label = 0;
  ClassCounts counts{};
  double impurity = 0.0;

  bool is_leaf() const { return feature < 0; }
  bool operator==(const TreeNode&) const = default;
};

// Binary tree stored in a flat array; node 0 is the root. A sample goes left
// when x[feature] <= threshold.
struct DecisionTree {
  std::vector<TreeNode> nodes;

  int predict(std::span<const double> x) const;
  std::size_t leaf_count() const;
  std::size_t depth() const;

  bool operator==(const DecisionTree&) const = default;
};

std::size_t resolve_max_features(MaxFeatures mode, std::size_t n_features);

// Greedy CART growth on the given (possibly repeated) row indices. Split
// thresholds sit at midpoints of consecutive distinct values; ties on
// impurity go to the lower feature index, then the lower threshold. With
// max_leaf_nodes set the tree grows best-first, otherwise depth-first.
// ccp_alpha > 0 applies minimal cost-complexity pruning afterwards.
DecisionTree build_decision_tree(const LabeledData& data,
                                 std::span<const std::size_t> indices,
                                 const RandomForestSpec& spec, Rng& rng);

// Majority vote over tree labels; score is the fraction voting 1 and an even
// split yields label 0.
PredictionOutput forest_vote(std::span<const DecisionTree> trees,
                             std::span<const double> x);

// Tree t uses its own stream seeded from (seed, t), so the forest does not
// depend on build order.
std::vector<DecisionTree> fit_forest(const RandomForestSpec& spec,
                                     const LabeledData& train, std::uint64_t seed);

}  // namespace tunebench

#endif  // TUNEBENCH_SRC_FOREST_HPP_
