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

#include <gtest/gtest.h>

#include <numeric>

#include "oracles.hpp"
#include "test_util.hpp"

namespace tunebench {
namespace {

std::vector<std::size_t> all_rows(const LabeledData& d) {
  std::vector<std::size_t> idx(d.rows());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  return idx;
}

// Mixes continuous features with coarse ones so that tied impurities and
// repeated values both occur.
LabeledData stump_data(Rng& rng) {
  const std::size_t n = 2 + rng.uniform_index(29);
  const std::size_t d = 1 + rng.uniform_index(4);
  LabeledData data;
  data.n_features = d;
  std::vector<double> row(d);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      row[j] = j % 2 ? static_cast<double>(rng.uniform_index(3)) : rng.normal();
    }
    data.add_row(row, static_cast<int>(rng.uniform_index(2)));
  }
  return data;
}

void expect_stumps_match(Criterion criterion, std::uint64_t seed) {
  Rng rng(seed);
  RandomForestSpec spec;
  spec.max_depth = 1;
  spec.max_features = MaxFeatures::kAll;
  spec.criterion = criterion;
  int splits = 0;
  for (int t = 0; t < 100; ++t) {
    const auto data = stump_data(rng);
    Rng tree_rng(static_cast<std::uint64_t>(t));
    const auto tree = build_decision_tree(data, all_rows(data), spec, tree_rng);
    const auto want = oracle::best_stump(data, criterion == Criterion::kEntropy);
    const auto& root = tree.nodes.at(0);
    if (!want) {
      EXPECT_TRUE(root.is_leaf()) << "dataset " << t;
      continue;
    }
    ++splits;
    ASSERT_FALSE(root.is_leaf()) << "dataset " << t;
    EXPECT_EQ(root.feature, want->feature) << "dataset " << t;
    EXPECT_EQ(root.threshold, want->threshold) << "dataset " << t;
    EXPECT_EQ(tree.depth(), 1u);
  }
  EXPECT_GT(splits, 80);
}

TEST(Impurity, HandComputedValues) {
  // Left 1 disliked / 3 liked has Gini 0.375, right is pure; 4 of 8 each.
  EXPECT_DOUBLE_EQ(impurity({1, 3}, {4, 0}, Criterion::kGini), 0.1875);
  EXPECT_DOUBLE_EQ(node_impurity({2, 2}, Criterion::kEntropy), 1.0);
  EXPECT_DOUBLE_EQ(node_impurity({4, 4}, Criterion::kGini), 0.5);
  EXPECT_DOUBLE_EQ(node_impurity({5, 0}, Criterion::kGini), 0.0);
  EXPECT_DOUBLE_EQ(node_impurity({0, 3}, Criterion::kEntropy), 0.0);
  // H(1/4) = 2 - 0.75 * log2(3).
  EXPECT_NEAR(node_impurity({1, 3}, Criterion::kEntropy), 2.0 - 0.75 * std::log2(3.0), 1e-15);
}

TEST(Stump, GiniMatchesExhaustiveEnumeration) { expect_stumps_match(Criterion::kGini, 100); }

TEST(Stump, EntropyMatchesExhaustiveEnumeration) {
  expect_stumps_match(Criterion::kEntropy, 200);
}

TEST(Tree, FullTreeFitsDistinctTrainingPoints) {
  Rng rng(5);
  const auto data = testing::random_data(rng, 60, 3);
  RandomForestSpec spec;
  spec.max_features = MaxFeatures::kAll;
  const auto tree = build_decision_tree(data, all_rows(data), spec, rng);
  for (std::size_t i = 0; i < data.rows(); ++i) EXPECT_EQ(tree.predict(data.row(i)), data.labels[i]);
  for (const auto& node : tree.nodes) {
    if (node.is_leaf()) {
      EXPECT_TRUE(node.counts[0] == 0 || node.counts[1] == 0);
    }
  }
}

TEST(Tree, RespectsGrowthLimits) {
  Rng rng(6);
  for (int t = 0; t < 20; ++t) {
    const auto data = testing::random_data(rng, 80, 4, 0.5);
    RandomForestSpec spec;
    spec.max_depth = 1 + static_cast<std::int64_t>(rng.uniform_index(4));
    spec.min_samples_leaf = 1 + static_cast<int>(rng.uniform_index(5));
    const auto tree = build_decision_tree(data, all_rows(data), spec, rng);
    EXPECT_LE(tree.depth(), static_cast<std::size_t>(*spec.max_depth));
    for (const auto& node : tree.nodes) {
      if (node.is_leaf()) {
        EXPECT_GE(node.counts[0] + node.counts[1], spec.min_samples_leaf);
      }
    }

    RandomForestSpec leafy;
    leafy.max_leaf_nodes = 2 + static_cast<int>(rng.uniform_index(8));
    const auto capped = build_decision_tree(data, all_rows(data), leafy, rng);
    EXPECT_LE(capped.leaf_count(), static_cast<std::size_t>(*leafy.max_leaf_nodes));
  }
}

TEST(Tree, PruningShrinksMonotonically) {
  Rng rng(7);
  const auto data = testing::random_data(rng, 120, 3, 0.7);
  std::size_t previous = std::numeric_limits<std::size_t>::max();
  for (double alpha : {0.0, 0.001, 0.005, 0.01, 0.03, 0.1, 1.0}) {
    RandomForestSpec spec;
    spec.max_features = MaxFeatures::kAll;
    spec.ccp_alpha = alpha;
    Rng tree_rng(1);
    const auto tree = build_decision_tree(data, all_rows(data), spec, tree_rng);
    EXPECT_LE(tree.leaf_count(), previous) << "alpha " << alpha;
    previous = tree.leaf_count();
  }
  EXPECT_EQ(previous, 1u);
}

TEST(Tree, MinImpurityDecreaseCanBlockEverySplit) {
  Rng rng(8);
  const auto data = testing::random_data(rng, 40, 2);
  RandomForestSpec spec;
  spec.min_impurity_decrease = 1.0;
  const auto tree = build_decision_tree(data, all_rows(data), spec, rng);
  EXPECT_EQ(tree.nodes.size(), 1u);
  EXPECT_EQ(tree.nodes[0].label, data.count(1) > data.count(0) ? 1 : 0);
}

TEST(Forest, DeterministicAndOrderIndependent) {
  Rng rng(9);
  const auto data = testing::random_data(rng, 100, 5, 1.0);
  RandomForestSpec spec;
  spec.n_trees = 15;
  const auto a = fit_forest(spec, data, 42);
  const auto b = fit_forest(spec, data, 42);
  EXPECT_EQ(a, b);
  spec.n_trees = 5;
  const auto prefix = fit_forest(spec, data, 42);
  for (std::size_t t = 0; t < prefix.size(); ++t) EXPECT_EQ(prefix[t], a[t]);
  EXPECT_NE(fit_forest(spec, data, 43), prefix);
}

TEST(Forest, EvenVoteGoesToDisliked) {
  DecisionTree yes, no;
  yes.nodes.push_back({});
  yes.nodes[0].label = 1;
  no.nodes.push_back({});
  no.nodes[0].label = 0;
  const std::vector<DecisionTree> trees = {yes, no};
  const std::vector<double> x = {0.0};
  const auto out = forest_vote(trees, x);
  EXPECT_EQ(out.score, 0.5);
  EXPECT_EQ(out.label, 0);
}

TEST(Forest, MaxFeaturesResolution) {
  EXPECT_EQ(resolve_max_features(MaxFeatures::kSqrt, 12), 3u);
  EXPECT_EQ(resolve_max_features(MaxFeatures::kLog2, 12), 3u);
  EXPECT_EQ(resolve_max_features(MaxFeatures::kAll, 12), 12u);
  EXPECT_EQ(resolve_max_features(MaxFeatures::kLog2, 1), 1u);
}

}  // namespace
}  // namespace tunebench
