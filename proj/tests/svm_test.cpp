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

#include "svm.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "errors.hpp"
#include "test_util.hpp"

namespace tunebench {
namespace {

// Points in [-3, 3]^2 at least `gap` away from a random line, labeled by side.
// The hard-margin solution then has |w| <= 1 / gap and sum(alpha) = |w|^2.
LabeledData separable_problem(Rng& rng, std::size_t n, double gap) {
  const double angle = rng.uniform(0.0, 2.0 * M_PI);
  const double ux = std::cos(angle), uy = std::sin(angle);
  const double offset = rng.uniform(-1.0, 1.0);
  LabeledData data;
  data.n_features = 2;
  while (data.rows() < n || !data.has_both_classes()) {
    const double x = rng.uniform(-3.0, 3.0), y = rng.uniform(-3.0, 3.0);
    const double side = ux * x + uy * y - offset;
    if (std::abs(side) < gap) continue;
    if (data.rows() >= n) data = LabeledData{2, {}, {}};
    data.add_row(std::vector<double>{x, y}, side > 0 ? 1 : 0);
  }
  return data;
}

TEST(Smo, TwoPointAnalyticSolution) {
  LabeledData data;
  data.n_features = 2;
  data.add_row(std::vector<double>{1.0, 0.0}, 1);
  data.add_row(std::vector<double>{-1.0, 0.0}, 0);
  const auto r = smo_solve(data, 1.0, 1e-3, 1000, 42);
  ASSERT_TRUE(r.converged);
  EXPECT_NEAR(r.alpha[0], 0.5, 1e-6);
  EXPECT_NEAR(r.alpha[1], 0.5, 1e-6);
  EXPECT_NEAR(r.bias, 0.0, 1e-6);
  EXPECT_NEAR(r.weights[0], 1.0, 1e-6);
  EXPECT_NEAR(r.weights[1], 0.0, 1e-6);
}

TEST(Smo, SeparableProblemsHaveNoErrorsAndSmallKktResiduals) {
  Rng rng(4242);
  // gap 0.5 bounds every hard-margin alpha by 4, so C = 10 is never active.
  const double cost = 10.0;
  for (int t = 0; t < 100; ++t) {
    const auto data = separable_problem(rng, 4 + rng.uniform_index(57), 0.5);
    const auto r = smo_solve(data, cost, 1e-3, 1000, static_cast<std::uint64_t>(t));
    ASSERT_TRUE(r.converged) << "problem " << t;
    for (std::size_t i = 0; i < data.rows(); ++i) {
      const double m = svm_margin(r.weights, r.bias, data.row(i));
      EXPECT_EQ(m >= 0.0 ? 1 : 0, data.labels[i]) << "problem " << t << " row " << i;
    }
    for (double res : kkt_residuals(data, r, cost)) {
      EXPECT_LE(res, 1e-3) << "problem " << t;
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < data.rows(); ++i) {
      sum += r.alpha[i] * (data.labels[i] ? 1.0 : -1.0);
      EXPECT_GE(r.alpha[i], 0.0);
      EXPECT_LE(r.alpha[i], cost);
    }
    EXPECT_NEAR(sum, 0.0, 1e-9);
  }
}

TEST(Smo, BoxConstraintBindsOnOverlappingClasses) {
  Rng rng(8);
  const auto data = testing::random_data(rng, 60, 2, 0.3);
  const double cost = 0.5;
  const auto r = smo_solve(data, cost, 1e-3, 1000, 1);
  ASSERT_TRUE(r.converged);
  std::size_t at_bound = 0;
  for (double a : r.alpha) at_bound += a == cost;
  EXPECT_GT(at_bound, 0u);
  for (double res : kkt_residuals(data, r, cost)) EXPECT_LE(res, 1e-3);
}

TEST(Smo, SingleClassIsATrainingError) {
  LabeledData data;
  data.n_features = 1;
  data.add_row(std::vector<double>{1.0}, 1);
  data.add_row(std::vector<double>{2.0}, 1);
  try {
    smo_solve(data, 1.0, 1e-3, 10, 0);
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kTraining);
  }
}

}  // namespace
}  // namespace tunebench
