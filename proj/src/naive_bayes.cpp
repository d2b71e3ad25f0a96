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

#include "naive_bayes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace tunebench {

NaiveBayesModel fit_naive_bayes(const NaiveBayesSpec& spec,
                                const LabeledData& train) {
  require_both_classes(train);
  const std::size_t d = train.n_features;
  const std::size_t n = train.rows();
  NaiveBayesModel model;

  // Largest per-feature variance over the whole training set.
  double max_variance = 0.0;
  for (std::size_t j = 0; j < d; ++j) {
    double mean = 0.0;
    for (std::size_t i = 0; i < n; ++i) mean += train.row(i)[j];
    mean /= static_cast<double>(n);
    double var = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double diff = train.row(i)[j] - mean;
      var += diff * diff;
    }
    max_variance = std::max(max_variance, var / static_cast<double>(n));
  }
  model.epsilon = spec.variance_smoothing * max_variance;

  for (int c = 0; c < 2; ++c) {
    auto& means = model.means[static_cast<std::size_t>(c)];
    auto& vars = model.variances[static_cast<std::size_t>(c)];
    means.assign(d, 0.0);
    vars.assign(d, 0.0);
    std::size_t count = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (train.labels[i] != c) continue;
      ++count;
      const auto x = train.row(i);
      for (std::size_t j = 0; j < d; ++j) means[j] += x[j];
    }
    for (auto& m : means) m /= static_cast<double>(count);
    for (std::size_t i = 0; i < n; ++i) {
      if (train.labels[i] != c) continue;
      const auto x = train.row(i);
      for (std::size_t j = 0; j < d; ++j) {
        const double diff = x[j] - means[j];
        vars[j] += diff * diff;
      }
    }
    for (auto& v : vars) {
      v = v / static_cast<double>(count) + model.epsilon;
      // Constant features with zero smoothing would otherwise give v = 0.
      v = std::max(v, std::numeric_limits<double>::min());
    }
    model.priors[static_cast<std::size_t>(c)] =
        static_cast<double>(count) / static_cast<double>(n);
  }
  return model;
}

std::array<double, 2> nb_class_log_posterior(const NaiveBayesModel& model,
                                             std::span<const double> x) {
  std::array<double, 2> out{};
  for (std::size_t c = 0; c < 2; ++c) {
    double lp = std::log(model.priors[c]);
    for (std::size_t j = 0; j < x.size(); ++j) {
      const double var = model.variances[c][j];
      const double diff = x[j] - model.means[c][j];
      lp -= 0.5 * std::log(2.0 * std::numbers::pi * var);
      lp -= diff * diff / (2.0 * var);
    }
    out[c] = lp;
  }
  return out;
}

}  // namespace tunebench
