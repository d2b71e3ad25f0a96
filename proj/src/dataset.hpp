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

#ifndef TUNEBENCH_SRC_DATASET_HPP_
#define TUNEBENCH_SRC_DATASET_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace tunebench {

inline constexpr std::size_t kFeatureCount = 12;

// Attribute names in canonical column order (also the summary table order).
inline constexpr std::array<std::string_view, kFeatureCount> kFeatureNames = {
    "danceability",     "energy",   "key",     "loudness",
    "mode",             "speechiness", "acousticness", "instrumentalness",
    "liveness",         "valence",  "tempo",   "time_signature"};

// Display titles for summary tables.
inline constexpr std::array<std::string_view, kFeatureCount> kFeatureTitles = {
    "Danceability", "Energy",       "Key",           "Loudness",
    "Mode",         "Speechiness",  "Acousticness",  "Instrumentalness",
    "Liveness",     "Valence",      "Tempo",         "Time Signature"};

inline constexpr std::string_view kCsvHeader =
    "id,danceability,energy,key,loudness,mode,speechiness,acousticness,"
    "instrumentalness,liveness,valence,tempo,time_signature,liked";

struct AudioFeatures {
  double danceability = 0.0;
  double energy = 0.0;
  int key = 0;
  double loudness = 0.0;
  int mode = 0;
  double speechiness = 0.0;
  double acousticness = 0.0;
  double instrumentalness = 0.0;
  double liveness = 0.0;
  double valence = 0.0;
  double tempo = 0.0;
  int time_signature = 4;

  // Values in canonical column order.
  std::array<double, kFeatureCount> to_array() const;

  // Inverse of to_array. Integer attributes are truncated; callers that need
  // integrality checks use features_from_values instead.
  static AudioFeatures from_array(const std::array<double, kFeatureCount>& v);

  bool operator==(const AudioFeatures&) const = default;
};

enum class Label : std::uint8_t { kDisliked = 0, kLiked = 1 };

inline int to_int(Label label) { return static_cast<int>(label); }

struct TrackInstance {
  std::string id;
  AudioFeatures features;
  Label liked = Label::kDisliked;

  bool operator==(const TrackInstance&) const = default;
};

// A labeled track list without labels yet (one playlist's worth).
struct UnlabeledTrack {
  std::string id;
  AudioFeatures features;
};

struct Dataset {
  std::string name;
  std::vector<TrackInstance> instances;

  std::size_t size() const { return instances.size(); }
  std::size_t count(Label label) const;
  bool has_both_classes() const {
    return count(Label::kLiked) > 0 && count(Label::kDisliked) > 0;
  }

  bool operator==(const Dataset&) const = default;
};

struct FeatureIssue {
  std::string field;
  std::string message;
};

struct FeatureVerdict {
  std::vector<FeatureIssue> violations;
  std::vector<FeatureIssue> warnings;

  bool ok() const { return violations.empty() && warnings.empty(); }
  bool acceptable() const { return violations.empty(); }
};

FeatureVerdict validate_features(const AudioFeatures& f);

// Builds AudioFeatures from raw values in canonical order, reporting
// non-integral values in integer attributes as violations.
AudioFeatures features_from_values(const std::array<double, kFeatureCount>& v,
                                   FeatureVerdict& verdict);

Dataset parse_dataset(std::string_view text, std::string name);
std::string write_dataset(const Dataset& d);

Dataset load_dataset_file(const std::string& path, std::string name);

// Soft warnings about a dataset as a whole (size outside the usual range).
std::vector<std::string> dataset_warnings(const Dataset& d);

Dataset merge_labeled(std::span<const UnlabeledTrack> liked,
                      std::span<const UnlabeledTrack> disliked,
                      std::string name);

enum class HigherClass : std::uint8_t { kNeither, kLiked, kDisliked };

struct FeatureSummary {
  std::array<double, kFeatureCount> liked_means{};
  std::array<double, kFeatureCount> disliked_means{};
  std::array<HigherClass, kFeatureCount> higher{};
  std::size_t liked_count = 0;
  std::size_t disliked_count = 0;
};

FeatureSummary summarize(const Dataset& d);

// Two-row table (Liked, Disliked) with the higher mean in bold.
std::string render_summary_markdown(const FeatureSummary& s,
                                    std::string_view dataset_name);

}  // namespace tunebench

#endif  // TUNEBENCH_SRC_DATASET_HPP_
