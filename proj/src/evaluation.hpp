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

#ifndef TUNEBENCH_SRC_EVALUATION_HPP_
#define TUNEBENCH_SRC_EVALUATION_HPP_

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dataset.hpp"
#include "models.hpp"
#include "training_data.hpp"

namespace tunebench {

struct FoldPlan {
  std::size_t k = 0;
  // Fold index of every instance.
  std::vector<std::size_t> assignment;
  std::uint64_t seed = 0;

  std::vector<std::size_t> test_indices(std::size_t fold) const;
  std::vector<std::size_t> train_indices(std::size_t fold) const;

  bool operator==(const FoldPlan&) const = default;
};

// Within each class (disliked first, then liked) the indices are shuffled by
// one seeded stream and dealt round-robin; the dealing position carries over
// from one class to the next so fold sizes also stay within one of each
// other. Throws kInvalidArgument if k < 2 or a class has fewer than k rows.
FoldPlan stratified_folds(std::span<const int> labels, std::size_t k,
                          std::uint64_t seed);

double accuracy(std::span<const int> predictions, std::span<const int> labels);

struct CvResult {
  std::vector<double> fold_accuracies;
  double mean_accuracy = 0.0;
  ClassifierSpec spec;
  std::string dataset_name;
  std::uint64_t seed = 0;
  std::vector<std::string> warnings;
};

struct CvOptions {
  bool standardize = false;
};

// Stable seed for the model trained on one fold.
std::uint64_t fold_model_seed(std::uint64_t seed, std::string_view dataset_name,
                              std::string_view algorithm_tag, std::size_t fold);

// Predicts labels for `test` after training on `train`.
using FoldTrainer = std::function<std::vector<int>(
    const LabeledData& train, const LabeledData& test, std::size_t fold)>;

// Per-fold accuracies of an arbitrary trainer under a plan.
std::vector<double> evaluate_folds(const LabeledData& data, const FoldPlan& plan,
                                   const FoldTrainer& trainer);

CvResult cross_validate(const ClassifierSpec& spec, const Dataset& dataset,
                        const FoldPlan& plan, const CvOptions& options = {});
CvResult cross_validate(const ClassifierSpec& spec, const Dataset& dataset,
                        std::size_t k, std::uint64_t seed,
                        const CvOptions& options = {});

double mean_of(std::span<const double> values);

struct BenchmarkCell {
  std::optional<CvResult> result;
  std::string error;

  bool ok() const { return result.has_value(); }
};

// Cells are indexed [spec][dataset]. Means cover the successful cells only.
struct BenchmarkGrid {
  std::vector<std::string> dataset_names;
  std::vector<ClassifierSpec> specs;
  std::size_t k = 10;
  std::uint64_t seed = 42;
  bool standardize = false;
  std::vector<BenchmarkCell> cells;
  std::vector<std::optional<double>> algorithm_means;
  std::vector<std::optional<double>> dataset_means;
  std::optional<double> overall_mean;

  const BenchmarkCell& cell(std::size_t spec, std::size_t dataset) const {
    return cells[spec * dataset_names.size() + dataset];
  }
  std::size_t failed_cells() const;
};

void recompute_means(BenchmarkGrid& grid);

// One cross-validation per (spec, dataset). A failing cell records its error
// and does not stop the others.
BenchmarkGrid run_benchmark(std::span<const ClassifierSpec> specs,
                            std::span<const Dataset> datasets, std::size_t k,
                            std::uint64_t seed, const CvOptions& options = {});

}  // namespace tunebench

#endif  // TUNEBENCH_SRC_EVALUATION_HPP_
