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

#include "evaluation.hpp"

#include <algorithm>
#include <numeric>

#include "errors.hpp"
#include "parallel.hpp"
#include "rng.hpp"

namespace tunebench {

std::vector<std::size_t> FoldPlan::test_indices(std::size_t fold) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < assignment.size(); ++i) {
    if (assignment[i] == fold) out.push_back(i);
  }
  return out;
}

std::vector<std::size_t> FoldPlan::train_indices(std::size_t fold) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < assignment.size(); ++i) {
    if (assignment[i] != fold) out.push_back(i);
  }
  return out;
}

FoldPlan stratified_folds(std::span<const int> labels, std::size_t k,
                          std::uint64_t seed) {
  if (k < 2) {
    throw Error(ErrorCode::kInvalidArgument, "k must be at least 2");
  }
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] != 0 && labels[i] != 1) {
      throw Error(ErrorCode::kInvalidArgument, "labels must be 0 or 1");
    }
  }
  FoldPlan plan;
  plan.k = k;
  plan.seed = seed;
  plan.assignment.assign(labels.size(), 0);
  Rng rng(seed);
  std::size_t position = 0;
  for (int c = 0; c < 2; ++c) {
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if (labels[i] == c) members.push_back(i);
    }
    if (members.size() < k) {
      throw Error(ErrorCode::kInvalidArgument,
                  std::string(c == 1 ? "liked" : "disliked") + " class has " +
                      std::to_string(members.size()) +
                      " instances, fewer than k = " + std::to_string(k));
    }
    rng.shuffle(std::span<std::size_t>(members));
    for (auto i : members) plan.assignment[i] = position++ % k;
  }
  return plan;
}

double accuracy(std::span<const int> predictions, std::span<const int> labels) {
  if (predictions.empty() || predictions.size() != labels.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "accuracy needs equal, non-empty prediction and label vectors");
  }
  std::size_t hits = 0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (predictions[i] == labels[i]) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(labels.size());
}

double mean_of(std::span<const double> values) {
  double sum = 0.0;
  for (double v : values) sum += v;
  return sum / static_cast<double>(values.size());
}

std::uint64_t fold_model_seed(std::uint64_t seed, std::string_view dataset_name,
                              std::string_view algorithm_tag, std::size_t fold) {
  std::uint64_t s = mix_seed(seed, dataset_name);
  s = mix_seed(s, algorithm_tag);
  return mix_seed(s, static_cast<std::uint64_t>(fold));
}

std::vector<double> evaluate_folds(const LabeledData& data, const FoldPlan& plan,
                                   const FoldTrainer& trainer) {
  if (plan.assignment.size() != data.rows()) {
    throw Error(ErrorCode::kInvalidArgument, "fold plan does not match the dataset");
  }
  std::vector<double> out(plan.k);
  parallel_for(plan.k, [&](std::size_t fold) {
    const auto train_idx = plan.train_indices(fold);
    const auto test_idx = plan.test_indices(fold);
    const auto train = select_rows(data, train_idx);
    const auto test = select_rows(data, test_idx);
    try {
      const auto predictions = trainer(train, test, fold);
      out[fold] = accuracy(predictions, test.labels);
    } catch (const Error& e) {
      throw Error(e.code(), "fold " + std::to_string(fold) + ": " + e.what());
    }
  });
  return out;
}

CvResult cross_validate(const ClassifierSpec& spec, const Dataset& dataset,
                        const FoldPlan& plan, const CvOptions& options) {
  validate_spec(spec);
  const auto data = to_labeled_data(dataset);
  const auto tag = algorithm_tag(algorithm_of(spec));
  std::vector<std::vector<std::string>> fold_warnings(plan.k);

  CvResult result;
  result.fold_accuracies = evaluate_folds(
      data, plan,
      [&](const LabeledData& train, const LabeledData& test, std::size_t fold) {
        const auto model = fit(spec, train, fold_model_seed(plan.seed, dataset.name, tag, fold),
                               FitOptions{options.standardize});
        for (const auto& w : model.warnings) {
          fold_warnings[fold].push_back("fold " + std::to_string(fold) + ": " + w);
        }
        std::vector<int> predictions(test.rows());
        for (std::size_t i = 0; i < test.rows(); ++i) {
          predictions[i] = predict(model, test.row(i)).label;
        }
        return predictions;
      });
  result.mean_accuracy = mean_of(result.fold_accuracies);
  result.spec = spec;
  result.dataset_name = dataset.name;
  result.seed = plan.seed;
  for (auto& w : fold_warnings) {
    result.warnings.insert(result.warnings.end(), w.begin(), w.end());
  }
  return result;
}

CvResult cross_validate(const ClassifierSpec& spec, const Dataset& dataset,
                        std::size_t k, std::uint64_t seed, const CvOptions& options) {
  const auto data = to_labeled_data(dataset);
  return cross_validate(spec, dataset, stratified_folds(data.labels, k, seed), options);
}

std::size_t BenchmarkGrid::failed_cells() const {
  return static_cast<std::size_t>(std::count_if(
      cells.begin(), cells.end(), [](const BenchmarkCell& c) { return !c.ok(); }));
}

void recompute_means(BenchmarkGrid& grid) {
  const std::size_t n_specs = grid.specs.size();
  const std::size_t n_data = grid.dataset_names.size();
  grid.algorithm_means.assign(n_specs, std::nullopt);
  grid.dataset_means.assign(n_data, std::nullopt);
  std::vector<double> all;
  for (std::size_t s = 0; s < n_specs; ++s) {
    std::vector<double> values;
    for (std::size_t d = 0; d < n_data; ++d) {
      const auto& c = grid.cell(s, d);
      if (c.ok()) values.push_back(c.result->mean_accuracy);
    }
    if (!values.empty()) grid.algorithm_means[s] = mean_of(values);
    all.insert(all.end(), values.begin(), values.end());
  }
  for (std::size_t d = 0; d < n_data; ++d) {
    std::vector<double> values;
    for (std::size_t s = 0; s < n_specs; ++s) {
      const auto& c = grid.cell(s, d);
      if (c.ok()) values.push_back(c.result->mean_accuracy);
    }
    if (!values.empty()) grid.dataset_means[d] = mean_of(values);
  }
  grid.overall_mean = all.empty() ? std::nullopt : std::optional<double>(mean_of(all));
}

BenchmarkGrid run_benchmark(std::span<const ClassifierSpec> specs,
                            std::span<const Dataset> datasets, std::size_t k,
                            std::uint64_t seed, const CvOptions& options) {
  BenchmarkGrid grid;
  grid.specs.assign(specs.begin(), specs.end());
  for (const auto& d : datasets) {
    if (d.name.empty()) {
      throw Error(ErrorCode::kInvalidArgument, "dataset names must be non-empty");
    }
    grid.dataset_names.push_back(d.name);
  }
  grid.k = k;
  grid.seed = seed;
  grid.standardize = options.standardize;
  grid.cells.resize(specs.size() * datasets.size());
  for (std::size_t s = 0; s < specs.size(); ++s) {
    for (std::size_t d = 0; d < datasets.size(); ++d) {
      auto& cell = grid.cells[s * datasets.size() + d];
      try {
        cell.result = cross_validate(specs[s], datasets[d], k, seed, options);
      } catch (const std::exception& e) {
        cell.error = e.what();
      }
    }
  }
  recompute_means(grid);
  return grid;
}

}  // namespace tunebench
