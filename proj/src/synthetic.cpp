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

#include "synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "errors.hpp"
#include "rng.hpp"

namespace tunebench {
namespace {

constexpr std::array<ClassMeans, 4> kListenerMeans = {{
    {{0.66596, 0.69882, 6.14, -6.33642, 0.58, 0.08683, 0.19849, 0.02562, 0.18774,
      0.61017, 121.71698, 3.96},
     {0.54376, 0.859, 6.36, -5.08116, 0.5, 0.13804, 0.07062, 0.10007, 0.22361, 0.47834,
      127.51684, 3.94}},
    {{0.54567, 0.54801, 4.66667, -9.69865, 0.90667, 0.06876, 0.40202, 0.12941, 0.19158,
      0.45415, 115.72287, 3.96},
     {0.58028, 0.49288, 4.81333, -10.20633, 0.68, 0.09729, 0.44434, 0.12021, 0.16959,
      0.43455, 117.44833, 3.84}},
    {{0.53802, 0.36812, 5.1, -10.24072, 0.86, 0.07737, 0.69187, 0.03401, 0.14481,
      0.30364, 117.84084, 3.82},
     {0.55578, 0.76452, 5.28, -5.12088, 0.94, 0.04291, 0.13076, 0.00283, 0.15847, 0.5597,
      125.90702, 3.96}},
    {{0.60016, 0.51899, 5.4, -8.35053, 0.7125, 0.06065, 0.40148, 0.08754, 0.15583,
      0.36568, 122.22381, 4.025},
     {0.47697, 0.84284, 4.98611, -5.83981, 0.61111, 0.11145, 0.07536, 0.02677, 0.25454,
      0.44913, 129.17003, 4.0}},
}};

struct AttributeShape {
  double span;
  double low;
  double high;
  int decimals;  // 0 for integer attributes
};

// Canonical column order. Mode is handled separately.
constexpr std::array<AttributeShape, kFeatureCount> kShapes = {{
    {1.0, 0.0, 1.0, 4},      // danceability
    {1.0, 0.0, 1.0, 4},      // energy
    {11.0, 0.0, 11.0, 0},    // key
    {60.0, -60.0, 0.0, 3},   // loudness
    {1.0, 0.0, 1.0, 0},      // mode
    {1.0, 0.0, 1.0, 4},      // speechiness
    {1.0, 0.0, 1.0, 4},      // acousticness
    {1.0, 0.0, 1.0, 6},      // instrumentalness
    {1.0, 0.0, 1.0, 4},      // liveness
    {1.0, 0.0, 1.0, 4},      // valence
    {250.0, 0.0, 250.0, 3},  // tempo
    {4.0, 3.0, 7.0, 0},      // time_signature
}};

constexpr std::size_t kModeColumn = 4;

// Rounds through decimal text so the stored double prints back as written.
double quantize(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return std::strtod(buf, nullptr);
}

std::array<double, kFeatureCount> draw(const std::array<double, kFeatureCount>& mean,
                                       double sigma, Rng& rng) {
  std::array<double, kFeatureCount> v{};
  for (std::size_t j = 0; j < kFeatureCount; ++j) {
    const auto& s = kShapes[j];
    if (j == kModeColumn) {
      v[j] = rng.uniform01() < mean[j] ? 1.0 : 0.0;
      continue;
    }
    const double x = mean[j] + sigma * s.span * rng.normal();
    v[j] = std::clamp(quantize(std::clamp(x, s.low, s.high), s.decimals), s.low, s.high);
  }
  return v;
}

}  // namespace

const ClassMeans& listener_means(int user) {
  if (user < 1 || user > 4) {
    throw Error(ErrorCode::kInvalidArgument, "user must be 1 to 4");
  }
  return kListenerMeans[static_cast<std::size_t>(user - 1)];
}

Dataset synthesize_dataset(const ClassMeans& means, const SyntheticOptions& options,
                           std::string name) {
  if (options.liked == 0 || options.disliked == 0) {
    throw Error(ErrorCode::kInvalidArgument, "both classes need at least one row");
  }
  if (!(options.relative_sigma >= 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "relative_sigma must be >= 0");
  }
  Rng rng(options.seed);
  Dataset d;
  d.name = std::move(name);
  auto emit = [&](const std::array<double, kFeatureCount>& mean, std::size_t count,
                  Label label, const char* prefix) {
    for (std::size_t i = 0; i < count; ++i) {
      char id[32];
      std::snprintf(id, sizeof id, "%s-%03zu", prefix, i + 1);
      d.instances.push_back(
          {id, AudioFeatures::from_array(draw(mean, options.relative_sigma, rng)), label});
    }
  };
  emit(means.liked, options.liked, Label::kLiked, "liked");
  emit(means.disliked, options.disliked, Label::kDisliked, "disliked");
  return d;
}

}  // namespace tunebench
