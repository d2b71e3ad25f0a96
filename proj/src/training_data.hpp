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

#ifndef TUNEBENCH_SRC_TRAINING_DATA_HPP_
#define TUNEBENCH_SRC_TRAINING_DATA_HPP_

#include <cstddef>
#include <span>
#include <vector>

#include "dataset.hpp"

namespace tunebench {

// Row-major feature matrix with 0/1 labels. The classifiers work on any
// feature count; datasets convert to 12 columns.
struct LabeledData {
  std::size_t n_features = 0;
  std::vector<double> values;
  std::vector<int> labels;

  std::size_t rows() const { return labels.size(); }

  std::span<const double> row(std::size_t i) const {
    return {values.data() + i * n_features, n_features};
  }

  void add_row(std::span<const double> features, int label);

  std::size_t count(int label) const;
  bool has_both_classes() const { return count(0) > 0 && count(1) > 0; }

  bool operator==(const LabeledData&) const = default;
};

LabeledData to_labeled_data(const Dataset& d);

LabeledData select_rows(const LabeledData& data,
                        std::span<const std::size_t> indices);

// label is 1 (liked) or 0. score is a probability for the probabilistic
// models, the signed margin for the SVM and a vote fraction for kNN/forest.
struct PredictionOutput {
  int label = 0;
  double score = 0.0;
};

// Throws kTraining unless both classes are present.
void require_both_classes(const LabeledData& data);

}  // namespace tunebench

#endif  // TUNEBENCH_SRC_TRAINING_DATA_HPP_
