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

#include "training_data.hpp"

#include <algorithm>
#include <string>

#include "errors.hpp"

namespace tunebench {

void LabeledData::add_row(std::span<const double> features, int label) {
  if (rows() == 0 && values.empty()) n_features = features.size();
  if (features.size() != n_features) {
    throw Error(ErrorCode::kInvalidArgument,
                "row has " + std::to_string(features.size()) +
                    " features, expected " + std::to_string(n_features));
  }
  values.insert(values.end(), features.begin(), features.end());
  labels.push_back(label);
}

std::size_t LabeledData::count(int label) const {
  return static_cast<std::size_t>(std::count(labels.begin(), labels.end(), label));
}

LabeledData to_labeled_data(const Dataset& d) {
  LabeledData data;
  data.n_features = kFeatureCount;
  data.values.reserve(d.size() * kFeatureCount);
  data.labels.reserve(d.size());
  for (const auto& t : d.instances) {
    const auto v = t.features.to_array();
    data.values.insert(data.values.end(), v.begin(), v.end());
    data.labels.push_back(to_int(t.liked));
  }
  return data;
}

LabeledData select_rows(const LabeledData& data,
                        std::span<const std::size_t> indices) {
  LabeledData out;
  out.n_features = data.n_features;
  out.values.reserve(indices.size() * data.n_features);
  out.labels.reserve(indices.size());
  for (auto i : indices) {
    const auto r = data.row(i);
    out.values.insert(out.values.end(), r.begin(), r.end());
    out.labels.push_back(data.labels[i]);
  }
  return out;
}

void require_both_classes(const LabeledData& data) {
  const auto ones = data.count(1);
  const auto zeros = data.count(0);
  if (ones == 0 || zeros == 0) {
    throw Error(ErrorCode::kTraining,
                "training set needs both classes (liked: " +
                    std::to_string(ones) + ", disliked: " +
                    std::to_string(zeros) + ")");
  }
}

}  // namespace tunebench
