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

#ifndef TUNEBENCH_SRC_MODELS_HPP_
#define TUNEBENCH_SRC_MODELS_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "dataset.hpp"
#include "forest.hpp"
#include "json.hpp"
#include "knn.hpp"
#include "logistic.hpp"
#include "mlp.hpp"
#include "naive_bayes.hpp"
#include "svm.hpp"
#include "training_data.hpp"

namespace tunebench {

enum class Algorithm {
  kLogisticRegression,
  kNaiveBayes,
  kLinearSvm,
  kMlp,
  kKnn,
  kRandomForest,
};

inline constexpr Algorithm kAllAlgorithms[] = {
    Algorithm::kLogisticRegression, Algorithm::kNaiveBayes,
    Algorithm::kLinearSvm,          Algorithm::kMlp,
    Algorithm::kKnn,                Algorithm::kRandomForest};

// Short tag used on the command line and in files: lr nb smo mlp knn rf.
std::string_view algorithm_tag(Algorithm a);
std::string_view algorithm_name(Algorithm a);
std::optional<Algorithm> parse_algorithm_tag(std::string_view tag);

using ClassifierSpec =
    std::variant<LogisticRegressionSpec, NaiveBayesSpec, LinearSvmSpec, MlpSpec,
                 KnnSpec, RandomForestSpec>;

Algorithm algorithm_of(const ClassifierSpec& spec);
ClassifierSpec default_spec(Algorithm a);

// Throws kInvalidArgument naming the first out-of-domain field.
void validate_spec(const ClassifierSpec& spec);

nlohmann::json spec_to_json(const ClassifierSpec& spec);
// Unset fields take their defaults; unknown fields are rejected.
ClassifierSpec spec_from_json(const nlohmann::json& j);

// z-score transform fitted on training rows; zero-variance columns keep
// scale 1.
struct Standardizer {
  std::vector<double> mean;
  std::vector<double> scale;

  static Standardizer fit(const LabeledData& data);
  void apply(std::span<const double> in, std::span<double> out) const;
  LabeledData apply(const LabeledData& data) const;
};

struct FitOptions {
  bool standardize = false;
};

struct SvmState {
  SmoResult solution;
};
struct MlpState {
  std::vector<DenseLayer> layers;
};
struct KnnState {
  LabeledData train;
};
struct ForestState {
  std::vector<DecisionTree> trees;
};

using ModelState = std::variant<LogisticModel, NaiveBayesModel, SvmState,
                                MlpState, KnnState, ForestState>;

struct TrainedModel {
  ClassifierSpec spec;
  std::uint64_t seed = 0;
  std::optional<Standardizer> scaler;
  ModelState state;
  // Non-fatal notes from training (e.g. iteration budget exhausted).
  std::vector<std::string> warnings;

  Algorithm algorithm() const { return algorithm_of(spec); }
};

// Deterministic for fixed (spec, train, seed, options).
TrainedModel fit(const ClassifierSpec& spec, const LabeledData& train,
                 std::uint64_t seed, const FitOptions& options = {});
TrainedModel fit(const ClassifierSpec& spec, const Dataset& train,
                 std::uint64_t seed, const FitOptions& options = {});

PredictionOutput predict(const TrainedModel& model, std::span<const double> x);
PredictionOutput predict(const TrainedModel& model, const AudioFeatures& f);

inline constexpr int kModelFormatVersion = 1;

std::string model_to_json(const TrainedModel& model);
TrainedModel model_from_json(std::string_view text);

}  // namespace tunebench

#endif  // TUNEBENCH_SRC_MODELS_HPP_
