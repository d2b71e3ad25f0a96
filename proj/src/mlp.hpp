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

#ifndef TUNEBENCH_SRC_MLP_HPP_
#define TUNEBENCH_SRC_MLP_HPP_

#include <cstdint>
#include <span>
#include <vector>

#include "training_data.hpp"

namespace tunebench {

enum class Activation { kIdentity, kLogistic, kTanh, kRelu };
enum class MlpSolver { kLbfgs, kSgd, kAdam };

struct MlpSpec {
  std::vector<int> hidden_layers = {100};
  Activation activation = Activation::kRelu;
  MlpSolver solver = MlpSolver::kAdam;
  double alpha = 0.001;
  int max_epochs = 200;
  double learning_rate = 0.001;

  bool operator==(const MlpSpec&) const = default;
};

// Fully connected layer; weights are outputs x inputs, row-major.
struct DenseLayer {
  std::size_t inputs = 0;
  std::size_t outputs = 0;
  std::vector<double> weights;
  std::vector<double> biases;

  double weight(std::size_t out, std::size_t in) const {
    return weights[out * inputs + in];
  }
};

struct MlpLossAndGradients {
  double loss = 0.0;
  std::vector<DenseLayer> gradients;
};

// Hidden layers use `activation`; the last layer must have one output and is
// always logistic with cross-entropy loss. The loss is the batch mean plus
// alpha / (2 * batch) * sum of squared weights (biases unpenalized).
MlpLossAndGradients mlp_forward_backward(std::span<const DenseLayer> layers,
                                         Activation activation,
                                         const LabeledData& data,
                                         std::span<const std::size_t> batch,
                                         double alpha);

MlpLossAndGradients mlp_forward_backward(std::span<const DenseLayer> layers,
                                         Activation activation,
                                         const LabeledData& data, double alpha);

double mlp_probability(std::span<const DenseLayer> layers, Activation activation,
                       std::span<const double> x);

// Uniform +-sqrt(6 / (fan_in + fan_out)) for weights and biases.
std::vector<DenseLayer> init_mlp_layers(std::size_t n_inputs,
                                        std::span<const int> hidden_layers,
                                        std::uint64_t seed);

struct MlpFit {
  std::vector<DenseLayer> layers;
  int epochs = 0;
  bool converged = false;
  double final_loss = 0.0;
};

MlpFit fit_mlp(const MlpSpec& spec, const LabeledData& train, std::uint64_t seed);

}  // namespace tunebench

#endif  // TUNEBENCH_SRC_MLP_HPP_
