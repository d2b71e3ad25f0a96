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

#ifndef TUNEBENCH_SRC_KNN_HPP_
#define TUNEBENCH_SRC_KNN_HPP_

#include <span>
#include <vector>

#include "training_data.hpp"

namespace tunebench {

enum class KnnWeights { kUniform, kDistance };

struct KnnSpec {
  int k = 5;
  KnnWeights weights = KnnWeights::kUniform;

  bool operator==(const KnnSpec&) const = default;
};

struct Neighbor {
  std::size_t index = 0;
  double distance = 0.0;

  bool operator==(const Neighbor&) const = default;
};

// The k nearest training rows by Euclidean distance, ascending; equal
// distances are ordered by training index.
std::vector<Neighbor> knn_nearest(const LabeledData& train,
                                  std::span<const double> x, std::size_t k);

// Vote fraction for label 1 (uniform or 1/d weighted). Neighbors at distance
// zero take the whole vote. A fraction of exactly 0.5 yields label 0.
PredictionOutput knn_vote(const LabeledData& train,
                          std::span<const Neighbor> neighbors,
                          KnnWeights weights);

}  // namespace tunebench

#endif  // TUNEBENCH_SRC_KNN_HPP_
