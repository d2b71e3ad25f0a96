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

#ifndef TUNEBENCH_SRC_SYNTHETIC_HPP_
#define TUNEBENCH_SRC_SYNTHETIC_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>

#include "dataset.hpp"

namespace tunebench {

// Per-class attribute means of one listener, in canonical column order.
struct ClassMeans {
  std::array<double, kFeatureCount> liked{};
  std::array<double, kFeatureCount> disliked{};
};

// Reference per-class means for listeners 1 to 4.
const ClassMeans& listener_means(int user);

struct SyntheticOptions {
  std::size_t liked = 75;
  std::size_t disliked = 75;
  // Standard deviation as a fraction of each attribute's natural range.
  double relative_sigma = 0.15;
  std::uint64_t seed = 42;
};

// Gaussian draws around the class means. Unit-interval attributes use
// sigma * 1, key sigma * 11, loudness sigma * 60 dB, tempo sigma * 250 BPM,
// time signature sigma * 4; mode is Bernoulli with the class mean. Values
// are clamped to their valid ranges, integer attributes rounded, and
// continuous ones rounded to Spotify's reporting precision. Liked rows come
// first.
Dataset synthesize_dataset(const ClassMeans& means, const SyntheticOptions& options,
                           std::string name);

}  // namespace tunebench

#endif  // TUNEBENCH_SRC_SYNTHETIC_HPP_
