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

#include "mlp.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "test_util.hpp"

namespace tunebench {
namespace {

std::vector<double> flatten(const std::vector<DenseLayer>& layers) {
  std::vector<double> p;
  for (const auto& l : layers) {
    p.insert(p.end(), l.weights.begin(), l.weights.end());
    p.insert(p.end(), l.biases.begin(), l.biases.end());
  }
  return p;
}

std::vector<DenseLayer> unflatten(std::vector<DenseLayer> shape, std::span<const double> p) {
  std::size_t at = 0;
  for (auto& l : shape) {
    for (auto& w : l.weights) w = p[at++];
    for (auto& b : l.biases) b = p[at++];
  }
  return shape;
}

// Random architectures between 1-1 and 12-8-4-1.
std::vector<int> random_hidden(Rng& rng) {
  static const std::vector<std::vector<int>> shapes = {
      {}, {3}, {8}, {8, 4}, {5, 2}, {8, 4}};
  return shapes[rng.uniform_index(shapes.size())];
}

double worst_gradient_error(Activation activation, int trials, std::uint64_t seed) {
  Rng rng(seed);
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    const std::size_t d = t % 10 == 0 ? 12 : 1 + rng.uniform_index(12);
    const auto hidden = t % 10 == 0 ? std::vector<int>{8, 4} : random_hidden(rng);
    const auto data = testing::random_data(rng, 3 + rng.uniform_index(10), d, 0.5);
    const auto layers = init_mlp_layers(d, hidden, rng.next_u64());
    const double alpha = rng.uniform(0.0, 0.1);
    const auto analytic = mlp_forward_backward(layers, activation, data, alpha);
    const auto numeric = oracle::numeric_gradient(
        [&](std::span<const double> p) {
          return mlp_forward_backward(unflatten(layers, p), activation, data, alpha).loss;
        },
        flatten(layers));
    worst = std::max(worst, oracle::relative_error(flatten(analytic.gradients), numeric));
  }
  return worst;
}

TEST(MlpGradient, IdentityMatchesFiniteDifferences) {
  EXPECT_LT(worst_gradient_error(Activation::kIdentity, 100, 1), 1e-4);
}

TEST(MlpGradient, LogisticMatchesFiniteDifferences) {
  EXPECT_LT(worst_gradient_error(Activation::kLogistic, 100, 2), 1e-4);
}

TEST(MlpGradient, TanhMatchesFiniteDifferences) {
  EXPECT_LT(worst_gradient_error(Activation::kTanh, 100, 3), 1e-4);
}

TEST(MlpGradient, ReluMatchesFiniteDifferences) {
  EXPECT_LT(worst_gradient_error(Activation::kRelu, 100, 4), 1e-4);
}

TEST(MlpGradient, MiniBatchUsesOnlyBatchRows) {
  Rng rng(12);
  const auto data = testing::random_data(rng, 10, 3, 1.0);
  const auto layers = init_mlp_layers(3, std::vector<int>{4}, 5);
  const std::vector<std::size_t> batch = {1, 4, 7};
  const auto part = mlp_forward_backward(layers, Activation::kTanh, data, batch, 0.01);
  const auto sub = mlp_forward_backward(layers, Activation::kTanh, select_rows(data, batch), 0.01);
  EXPECT_NEAR(part.loss, sub.loss, 1e-14);
  const auto a = flatten(part.gradients), b = flatten(sub.gradients);
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_NEAR(a[i], b[i], 1e-14);
}

TEST(MlpInit, GlorotBounds) {
  const auto layers = init_mlp_layers(12, std::vector<int>{8, 4}, 99);
  ASSERT_EQ(layers.size(), 3u);
  EXPECT_EQ(layers[0].inputs, 12u);
  EXPECT_EQ(layers[0].outputs, 8u);
  EXPECT_EQ(layers[2].outputs, 1u);
  for (const auto& l : layers) {
    const double bound = std::sqrt(6.0 / static_cast<double>(l.inputs + l.outputs));
    for (double w : l.weights) EXPECT_LE(std::abs(w), bound);
    for (double b : l.biases) EXPECT_LE(std::abs(b), bound);
  }
  EXPECT_EQ(flatten(layers), flatten(init_mlp_layers(12, std::vector<int>{8, 4}, 99)));
}

class MlpSolverTest : public ::testing::TestWithParam<MlpSolver> {};

TEST_P(MlpSolverTest, ReducesLossAndFitsShiftedClasses) {
  Rng rng(21);
  const auto data = testing::random_data(rng, 120, 4, 2.5);
  MlpSpec spec;
  spec.hidden_layers = {8};
  spec.solver = GetParam();
  spec.max_epochs = 300;
  spec.learning_rate = GetParam() == MlpSolver::kSgd ? 0.05 : 0.01;
  const auto start = mlp_forward_backward(init_mlp_layers(4, spec.hidden_layers, 7),
                                          spec.activation, data, spec.alpha)
                         .loss;
  const auto fit = fit_mlp(spec, data, 7);
  EXPECT_LT(fit.final_loss, start);
  std::size_t correct = 0;
  for (std::size_t i = 0; i < data.rows(); ++i) {
    const int label = mlp_probability(fit.layers, spec.activation, data.row(i)) >= 0.5 ? 1 : 0;
    correct += label == data.labels[i];
  }
  EXPECT_GE(correct, 108u);
  const auto again = fit_mlp(spec, data, 7);
  EXPECT_EQ(flatten(again.layers), flatten(fit.layers));
}

INSTANTIATE_TEST_SUITE_P(Solvers, MlpSolverTest,
                         ::testing::Values(MlpSolver::kLbfgs, MlpSolver::kSgd, MlpSolver::kAdam));

}  // namespace
}  // namespace tunebench
