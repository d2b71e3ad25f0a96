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

#ifndef TUNEBENCH_SRC_SVM_HPP_
#define TUNEBENCH_SRC_SVM_HPP_

#include <cstdint>
#include <span>
#include <vector>

#include "training_data.hpp"

namespace tunebench {

struct LinearSvmSpec {
  double cost = 1.0;
  double kkt_tolerance = 1e-3;
  // Iteration budget in units of the training-set size.
  int max_passes = 1000;

  bool operator==(const LinearSvmSpec&) const = default;
};

struct SmoResult {
  std::vector<double> alpha;
  double bias = 0.0;
  // w = sum_i alpha_i y_i x_i, with y in {-1, +1}.
  std::vector<double> weights;
  long iterations = 0;
  bool converged = false;
};

// Linear-kernel SMO on the soft-margin dual. Each step optimizes one pair
// chosen as the maximal violator (first order for i, second order for j);
// the solver stops once the KKT gap drops below kkt_tolerance. The seed
// fixes the scan order used to break exact ties during pair selection.
SmoResult smo_solve(const LabeledData& train, double cost, double kkt_tolerance,
                    int max_passes, std::uint64_t seed);

double svm_margin(std::span<const double> weights, double bias,
                  std::span<const double> x);

// Per-point violation of the KKT conditions in units of y * f(x):
// alpha = 0 needs y f >= 1, 0 < alpha < C needs y f = 1, alpha = C needs
// y f <= 1.
std::vector<double> kkt_residuals(const LabeledData& train,
                                  const SmoResult& result, double cost);

}  // namespace tunebench

#endif  // TUNEBENCH_SRC_SVM_HPP_
