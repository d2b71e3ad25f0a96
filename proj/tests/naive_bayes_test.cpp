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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "models.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

namespace tunebench {
namespace {

TEST(NaiveBayes, AgreesWithBruteForceOracle) {
  Rng rng(2024);
  std::size_t queries = 0;
  for (int t = 0; t < 50; ++t) {
    const std::size_t n = 4 + rng.uniform_index(17);
    const std::size_t d = 1 + rng.uniform_index(4);
    const auto data = testing::random_data(rng, n, d, rng.uniform(0.0, 2.0));
    const NaiveBayesSpec spec;
    const auto model = fit_naive_bayes(spec, data);
    const auto reference = oracle::nb_fit(data, spec.variance_smoothing);
    const auto trained = fit(spec, data, 0);
    for (int q = 0; q < 20; ++q) {
      std::vector<double> x(d);
      for (auto& v : x) v = 2.0 * rng.normal();
      const auto got = nb_class_log_posterior(model, x);
      const auto want = oracle::nb_log_joint(reference, x);
      // Absolute 1e-9, widened to relative once the value exceeds 1 in
      // magnitude (single-row classes reach 1e9 and beyond).
      for (int c = 0; c < 2; ++c) {
        const double w = static_cast<double>(want[c]);
        EXPECT_NEAR(got[c], w, 1e-9 * std::max(1.0, std::abs(w)));
      }
      EXPECT_EQ(predict(trained, x).label, want[1] >= want[0] ? 1 : 0);
      ++queries;
    }
  }
  EXPECT_EQ(queries, 1000u);
}

TEST(NaiveBayes, HandComputedOneFeature) {
  // Class 0: {0, 2} -> mean 1, var 1. Class 1: {4} -> mean 4, var 0.
  LabeledData data;
  data.n_features = 1;
  data.add_row(std::vector<double>{0.0}, 0);
  data.add_row(std::vector<double>{2.0}, 0);
  data.add_row(std::vector<double>{4.0}, 1);
  NaiveBayesSpec spec;
  spec.variance_smoothing = 0.01;
  const auto model = fit_naive_bayes(spec, data);
  // Whole-data variance is 8/3.
  EXPECT_NEAR(model.epsilon, 0.01 * 8.0 / 3.0, 1e-15);
  EXPECT_NEAR(model.means[0][0], 1.0, 1e-15);
  EXPECT_NEAR(model.variances[0][0], 1.0 + model.epsilon, 1e-15);
  EXPECT_NEAR(model.variances[1][0], model.epsilon, 1e-15);
  EXPECT_NEAR(model.priors[0], 2.0 / 3.0, 1e-15);
  const double x = 1.0;
  const double v0 = 1.0 + model.epsilon;
  const double expected0 = std::log(2.0 / 3.0) - 0.5 * std::log(2 * M_PI * v0);
  EXPECT_NEAR(nb_class_log_posterior(model, std::vector<double>{x})[0], expected0, 1e-12);
}

TEST(NaiveBayes, ConstantFeatureStaysFinite) {
  LabeledData data;
  data.n_features = 2;
  for (int i = 0; i < 6; ++i) data.add_row(std::vector<double>{1.0, double(i)}, i % 2);
  const auto model = fit_naive_bayes({}, data);
  const auto lp = nb_class_log_posterior(model, std::vector<double>{1.0, 2.5});
  EXPECT_TRUE(std::isfinite(lp[0]));
  EXPECT_TRUE(std::isfinite(lp[1]));
}

}  // namespace
}  // namespace tunebench
