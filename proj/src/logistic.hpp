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

#ifndef TUNEBENCH_SRC_LOGISTIC_HPP_
#define TUNEBENCH_SRC_LOGISTIC_HPP_

#include <span>
#include <string>
#include <vector>

#include "training_data.hpp"

namespace tunebench {

enum class Penalty { kL2, kL1 };

struct LogisticRegressionSpec {
  Penalty penalty = Penalty::kL2;
  double cost = 1.0;
  int max_iterations = 5000;
  double tolerance = 1e-6;

  bool operator==(const LogisticRegressionSpec&) const = default;
};

struct LogisticModel {
  std::vector<double> weights;
  double bias = 0.0;
};

struct LossAndGradient {
  double loss = 0.0;
  std::vector<double> weight_gradient;
  double bias_gradient = 0.0;
};

// Mean negative log-likelihood plus the penalty scaled by 1 / (cost * n):
// 0.5 * |w|^2 for L2 and |w|_1 for L1 (subgradient sign(w), 0 at w = 0).
// The bias is not penalized. cost = +inf drops the penalty.
LossAndGradient logreg_objective_and_gradient(std::span<const double> weights,
                                              double bias,
                                              const LabeledData& train,
                                              Penalty penalty, double cost);

struct LogisticFit {
  LogisticModel model;
  int iterations = 0;
  bool converged = false;
};

LogisticFit fit_logistic(const LogisticRegressionSpec& spec,
                         const LabeledData& train);

double logistic_probability(const LogisticModel& model,
                            std::span<const double> x);

double sigmoid(double z);

}  // namespace tunebench

#endif  // TUNEBENCH_SRC_LOGISTIC_HPP_
