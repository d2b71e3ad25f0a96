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

#include "models.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "errors.hpp"
#include "test_util.hpp"

namespace tunebench {

void PrintTo(Algorithm a, std::ostream* os) { *os << algorithm_tag(a); }

namespace {

LabeledData rows_1d(std::initializer_list<std::pair<double, int>> points) {
  LabeledData d;
  d.n_features = 1;
  for (auto [x, y] : points) d.add_row(std::vector<double>{x}, y);
  return d;
}

TEST(Specs, DefaultsRoundTripThroughJson) {
  for (auto a : kAllAlgorithms) {
    const auto spec = default_spec(a);
    EXPECT_NO_THROW(validate_spec(spec));
    const auto j = spec_to_json(spec);
    EXPECT_EQ(j.at("algorithm"), algorithm_tag(a));
    EXPECT_EQ(spec_from_json(j), spec);
    EXPECT_EQ(parse_algorithm_tag(algorithm_tag(a)), a);
  }
  EXPECT_FALSE(parse_algorithm_tag("svm").has_value());
}

TEST(Specs, PartialJsonTakesDefaults) {
  const auto spec = spec_from_json(nlohmann::json{{"algorithm", "rf"}, {"n_trees", 7}});
  const auto& rf = std::get<RandomForestSpec>(spec);
  EXPECT_EQ(rf.n_trees, 7);
  EXPECT_EQ(rf.criterion, Criterion::kGini);
  EXPECT_FALSE(rf.max_depth.has_value());
  const auto mlp = std::get<MlpSpec>(default_spec(Algorithm::kMlp));
  EXPECT_EQ(mlp.alpha, 0.001);
  EXPECT_EQ(mlp.hidden_layers, std::vector<int>{100});
}

TEST(Specs, RejectsUnknownFieldsAndBadValues) {
  auto code_of = [](const nlohmann::json& j) {
    try {
      spec_from_json(j);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::kInternal;
  };
  EXPECT_EQ(code_of({{"algorithm", "rf"}, {"trees", 3}}), ErrorCode::kInvalidArgument);
  EXPECT_EQ(code_of({{"algorithm", "rf"}, {"n_trees", 0}}), ErrorCode::kInvalidArgument);
  EXPECT_EQ(code_of({{"algorithm", "knn"}, {"weights", "cosine"}}), ErrorCode::kInvalidArgument);
  EXPECT_EQ(code_of({{"algorithm", "lr"}, {"cost", "high"}}), ErrorCode::kInvalidArgument);
  EXPECT_EQ(code_of({{"algorithm", "tree"}}), ErrorCode::kInvalidArgument);
  EXPECT_EQ(code_of({{"n_trees", 3}}), ErrorCode::kInvalidArgument);
}

TEST(Fit, SingleClassIsATrainingError) {
  const auto data = rows_1d({{0.1, 1}, {0.2, 1}, {0.3, 1}});
  for (auto a : kAllAlgorithms) {
    try {
      fit(default_spec(a), data, 1);
      ADD_FAILURE() << algorithm_tag(a) << " accepted one class";
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kTraining) << algorithm_tag(a);
    }
  }
}

TEST(Fit, KnnRejectsKAboveTrainingSize) {
  const auto data = rows_1d({{0, 0}, {1, 1}});
  KnnSpec spec;
  spec.k = 3;
  EXPECT_THROW(fit(spec, data, 0), Error);
}

TEST(Fit, SvmTwoPointProblem) {
  const auto model = fit(LinearSvmSpec{}, rows_1d({{-1, 0}, {1, 1}}), 0);
  const auto& s = std::get<SvmState>(model.state).solution;
  EXPECT_NEAR(s.weights[0], 1.0, 1e-6);
  EXPECT_NEAR(s.bias, 0.0, 1e-6);
  EXPECT_NEAR(s.alpha[0], 0.5, 1e-6);
  EXPECT_NEAR(s.alpha[1], 0.5, 1e-6);
  // Margin exactly zero is labeled liked.
  EXPECT_EQ(predict(model, std::vector<double>{0.0}).label, 1);
}

TEST(Fit, SvmOnXorCannotExceedThreeQuarters) {
  LabeledData d;
  d.n_features = 2;
  d.add_row(std::vector<double>{0, 0}, 0);
  d.add_row(std::vector<double>{1, 1}, 0);
  d.add_row(std::vector<double>{0, 1}, 1);
  d.add_row(std::vector<double>{1, 0}, 1);
  const auto model = fit(LinearSvmSpec{}, d, 3);
  int correct = 0;
  for (std::size_t i = 0; i < 4; ++i) correct += predict(model, d.row(i)).label == d.labels[i];
  EXPECT_LE(correct, 3);
}

TEST(Fit, SvmScalingKeepsClassifications) {
  Rng rng(31);
  const auto data = testing::random_data(rng, 40, 2, 1.5);
  auto scaled = data;
  for (auto& v : scaled.values) v *= 2.0;
  const auto a = fit(LinearSvmSpec{}, data, 1);
  const auto b = fit(LinearSvmSpec{}, scaled, 1);
  int agree = 0;
  for (std::size_t i = 0; i < data.rows(); ++i) {
    agree += predict(a, data.row(i)).label == predict(b, scaled.row(i)).label;
  }
  // The soft margin trades off differently at scale 2; most points agree.
  EXPECT_GE(agree, 36);
}

TEST(Fit, NaiveBayesHandMoments) {
  const auto model = fit(NaiveBayesSpec{}, rows_1d({{0.2, 1}, {0.4, 1}, {0.8, 0}, {0.6, 0}}), 0);
  const auto& nb = std::get<NaiveBayesModel>(model.state);
  EXPECT_NEAR(nb.means[1][0], 0.3, 1e-15);
  EXPECT_NEAR(nb.means[0][0], 0.7, 1e-15);
  EXPECT_EQ(nb.priors[0], 0.5);
  EXPECT_EQ(nb.priors[1], 0.5);
}

TEST(Fit, NaiveBayesPriorDecidesIdenticalClasses) {
  // Both classes have values {0, 1}; 7 vs 3 rows.
  LabeledData d;
  d.n_features = 1;
  for (int i = 0; i < 6; ++i) d.add_row(std::vector<double>{double(i % 2)}, 0);
  d.add_row(std::vector<double>{0.5}, 0);
  d.add_row(std::vector<double>{0.0}, 1);
  d.add_row(std::vector<double>{1.0}, 1);
  d.add_row(std::vector<double>{0.5}, 1);
  const auto model = fit(NaiveBayesSpec{}, d, 0);
  EXPECT_EQ(predict(model, std::vector<double>{0.5}).label, 0);
}

TEST(Fit, NaiveBayesShiftInvariance) {
  Rng rng(4);
  const auto data = testing::random_data(rng, 30, 3, 1.0);
  auto shifted = data;
  for (auto& v : shifted.values) v += 100.0;
  const auto a = fit(NaiveBayesSpec{}, data, 0);
  const auto b = fit(NaiveBayesSpec{}, shifted, 0);
  for (int q = 0; q < 50; ++q) {
    std::vector<double> x(3), y(3);
    for (std::size_t j = 0; j < 3; ++j) {
      x[j] = rng.normal();
      y[j] = x[j] + 100.0;
    }
    EXPECT_EQ(predict(a, x).label, predict(b, y).label);
  }
}

TEST(Fit, ZeroWeightLogisticScoresOneHalf) {
  LogisticModel m;
  m.weights = {0.0, 0.0};
  EXPECT_EQ(logistic_probability(m, std::vector<double>{3.0, -2.0}), 0.5);
  const auto balanced = rows_1d({{1, 0}, {2, 1}});
  EXPECT_NEAR(logreg_objective_and_gradient(std::vector<double>{0.0}, 0.0, balanced,
                                            Penalty::kL2, 1.0)
                  .loss,
              std::log(2.0), 1e-15);
}

TEST(Fit, KnnFivePointExample) {
  LabeledData d;
  d.n_features = 2;
  d.add_row(std::vector<double>{0, 0}, 0);
  d.add_row(std::vector<double>{1, 1}, 1);
  d.add_row(std::vector<double>{0, 1}, 1);
  d.add_row(std::vector<double>{1, 0}, 0);
  d.add_row(std::vector<double>{3, 3}, 0);
  KnnSpec spec;
  spec.k = 3;
  const auto model = fit(spec, d, 0);
  EXPECT_EQ(std::get<KnnState>(model.state).train, d);
  const std::vector<double> q = {0.9, 0.9};
  const auto nb = knn_nearest(d, q, 3);
  EXPECT_EQ(nb[0].index, 1u);
  EXPECT_EQ(nb[1].index, 2u);
  EXPECT_EQ(nb[2].index, 3u);
  EXPECT_NEAR(nb[1].distance, std::sqrt(0.82), 1e-15);
  EXPECT_NEAR(nb[1].distance, 0.906, 1e-3);
  const auto out = predict(model, q);
  EXPECT_EQ(out.label, 1);
  EXPECT_NEAR(out.score, 2.0 / 3.0, 1e-15);
}

TEST(Fit, ForestVoteEqualsTreeRecount) {
  Rng rng(12);
  const auto data = testing::random_data(rng, 80, 4, 0.8);
  const auto model = fit(RandomForestSpec{}, data, 5);
  const auto& trees = std::get<ForestState>(model.state).trees;
  ASSERT_EQ(trees.size(), 100u);
  for (int q = 0; q < 20; ++q) {
    std::vector<double> x(4);
    for (auto& v : x) v = rng.normal();
    int ones = 0;
    for (const auto& t : trees) ones += t.predict(x);
    const auto out = predict(model, x);
    EXPECT_DOUBLE_EQ(out.score, ones / 100.0);
    EXPECT_EQ(out.label, ones > 50 ? 1 : 0);
  }
}

class AllAlgorithms : public ::testing::TestWithParam<Algorithm> {};

TEST_P(AllAlgorithms, DeterministicWithInRangeScores) {
  const auto a = GetParam();
  Rng rng(100);
  const auto data = testing::random_data(rng, 60, 12, 1.0);
  auto spec = default_spec(a);
  if (a == Algorithm::kMlp) std::get<MlpSpec>(spec).hidden_layers = {16};
  const auto m1 = fit(spec, data, 9);
  const auto m2 = fit(spec, data, 9);
  EXPECT_EQ(model_to_json(m1), model_to_json(m2));
  for (int q = 0; q < 20; ++q) {
    std::vector<double> x(12);
    for (auto& v : x) v = rng.normal();
    const auto p = predict(m1, x);
    EXPECT_EQ(p.label, predict(m2, x).label);
    if (a != Algorithm::kLinearSvm) {
      EXPECT_GE(p.score, 0.0);
      EXPECT_LE(p.score, 1.0);
    }
  }
}

TEST_P(AllAlgorithms, ModelJsonRoundTripPredictsIdentically) {
  const auto a = GetParam();
  Rng rng(200);
  const auto data = testing::random_data(rng, 50, 12, 1.0);
  auto spec = default_spec(a);
  if (a == Algorithm::kMlp) std::get<MlpSpec>(spec).hidden_layers = {8};
  const auto model = fit(spec, data, 3, {.standardize = true});
  const auto text = model_to_json(model);
  const auto back = model_from_json(text);
  EXPECT_EQ(model_to_json(back), text);
  EXPECT_EQ(back.spec, model.spec);
  for (int q = 0; q < 20; ++q) {
    std::vector<double> x(12);
    for (auto& v : x) v = rng.normal();
    const auto p = predict(model, x), r = predict(back, x);
    EXPECT_EQ(p.label, r.label);
    EXPECT_EQ(p.score, r.score);
  }
}

INSTANTIATE_TEST_SUITE_P(Six, AllAlgorithms, ::testing::ValuesIn(kAllAlgorithms),
                         [](const auto& info) {
                           return std::string(algorithm_tag(info.param));
                         });

TEST(Fit, NbAndKnnIgnoreRowOrder) {
  Rng rng(44);
  const auto data = testing::random_data(rng, 40, 3, 1.0);
  std::vector<std::size_t> perm(data.rows());
  for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
  rng.shuffle(std::span<std::size_t>(perm));
  const auto shuffled = select_rows(data, perm);
  for (auto a : {Algorithm::kNaiveBayes, Algorithm::kKnn}) {
    const auto m1 = fit(default_spec(a), data, 0);
    const auto m2 = fit(default_spec(a), shuffled, 0);
    for (int q = 0; q < 50; ++q) {
      std::vector<double> x(3);
      for (auto& v : x) v = rng.normal();
      EXPECT_EQ(predict(m1, x).label, predict(m2, x).label) << algorithm_tag(a);
    }
  }
}

TEST(Model, RejectsMalformedJson) {
  EXPECT_THROW(model_from_json("{"), Error);
  EXPECT_THROW(model_from_json("{\"format\": 99}"), Error);
}

TEST(Standardizer, ZeroVarianceColumnKeepsScale) {
  LabeledData d;
  d.n_features = 2;
  d.add_row(std::vector<double>{1.0, 5.0}, 0);
  d.add_row(std::vector<double>{3.0, 5.0}, 1);
  const auto s = Standardizer::fit(d);
  EXPECT_EQ(s.mean, (std::vector<double>{2.0, 5.0}));
  EXPECT_EQ(s.scale, (std::vector<double>{1.0, 1.0}));
  std::vector<double> out(2);
  s.apply(std::vector<double>{3.0, 7.0}, out);
  EXPECT_EQ(out, (std::vector<double>{1.0, 2.0}));
}

}  // namespace
}  // namespace tunebench
