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

#ifndef TUNEBENCH_SRC_NAIVE_BAYES_HPP_
#define TUNEBENCH_SRC_NAIVE_BAYES_HPP_

#include <array>
#include <span>
#include <vector>

#include "training_data.hpp"

namespace tunebench {

struct NaiveBayesSpec {
  // Added to every variance, relative to the largest feature variance.
  double variance_smoothing = 1e-9;

  bool operator==(const NaiveBayesSpec&) const = default;
};

// Gaussian naive Bayes; index 0 is the disliked class, 1 the liked class.
struct NaiveBayesModel {
  std::array<std::vector<double>, 2> means;
  std::array<std::vector<double>, 2> variances;
  std::array<double, 2> priors{};
  double epsilon = 0.0;
};

NaiveBayesModel fit_naive_bayes(const NaiveBayesSpec& spec,
                                const LabeledData& train);

// Unnormalized log posteriors: log prior + sum of Gaussian log densities.
std::array<double, 2> nb_class_log_posterior(const NaiveBayesModel& model,
                                             std::span<const double> x);

}  // namespace tunebench

#endif  // TUNEBENCH_SRC_NAIVE_BAYES_HPP_
