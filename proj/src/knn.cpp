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

#include "knn.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "errors.hpp"

namespace tunebench {

std::vector<Neighbor> knn_nearest(const LabeledData& train,
                                  std::span<const double> x, std::size_t k) {
  if (k == 0 || k > train.rows()) {
    throw Error(ErrorCode::kInvalidArgument,
                "k = " + std::to_string(k) + " must be in 1.." +
                    std::to_string(train.rows()));
  }
  std::vector<Neighbor> all(train.rows());
  for (std::size_t i = 0; i < train.rows(); ++i) {
    const auto row = train.row(i);
    double sum = 0.0;
    for (std::size_t j = 0; j < row.size(); ++j) {
      const double diff = row[j] - x[j];
      sum += diff * diff;
    }
    all[i] = {i, std::sqrt(sum)};
  }
  const auto middle = all.begin() + static_cast<std::ptrdiff_t>(k);
  std::partial_sort(all.begin(), middle, all.end(),
                    [](const Neighbor& a, const Neighbor& b) {
                      if (a.distance != b.distance) return a.distance < b.distance;
                      return a.index < b.index;
                    });
  all.erase(middle, all.end());
  return all;
}

PredictionOutput knn_vote(const LabeledData& train,
                          std::span<const Neighbor> neighbors,
                          KnnWeights weights) {
  double positive = 0.0;
  double total = 0.0;
  const bool exact_match =
      std::any_of(neighbors.begin(), neighbors.end(),
                  [](const Neighbor& n) { return n.distance == 0.0; });
  for (const auto& n : neighbors) {
    double w = 1.0;
    if (weights == KnnWeights::kDistance) {
      if (exact_match) {
        w = n.distance == 0.0 ? 1.0 : 0.0;
      } else {
        w = 1.0 / n.distance;
      }
    }
    total += w;
    if (train.labels[n.index] == 1) positive += w;
  }
  PredictionOutput out;
  out.score = total > 0.0 ? positive / total : 0.0;
  out.label = out.score > 0.5 ? 1 : 0;
  return out;
}

}  // namespace tunebench
