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

#include "dataset.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "errors.hpp"
#include "numeric_format.hpp"

namespace tunebench {
namespace {

constexpr std::size_t kKeyIndex = 2;
constexpr std::size_t kModeIndex = 4;
constexpr std::size_t kTimeSignatureIndex = 11;

constexpr std::array<std::size_t, 7> kUnitIntervalIndices = {0, 1, 5, 6,
                                                            7, 8, 9};

bool is_integer_attribute(std::size_t i) {
  return i == kKeyIndex || i == kModeIndex || i == kTimeSignatureIndex;
}

std::string field_name(std::size_t i) { return std::string(kFeatureNames[i]); }

void check_integral(const std::array<double, kFeatureCount>& v, std::size_t i,
                    FeatureVerdict& verdict) {
  if (std::isfinite(v[i]) && v[i] != std::trunc(v[i])) {
    verdict.violations.push_back(
        {field_name(i), field_name(i) + " must be an integer, got " +
                            format_shortest(v[i])});
  }
}

std::vector<std::string_view> split_cells(std::string_view line) {
  std::vector<std::string_view> cells;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      cells.push_back(line.substr(start));
      break;
    }
    cells.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
  return cells;
}

std::string row_context(std::size_t row, std::string_view column) {
  return "row " + std::to_string(row) + " (line " + std::to_string(row + 1) +
         "), column \"" + std::string(column) + "\"";
}

std::string format_table_value(double v) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.5f", v);
  std::string s(buffer);
  while (!s.empty() && s.back() == '0') s.pop_back();
  if (!s.empty() && s.back() == '.') s.pop_back();
  if (s == "-0") s = "0";
  return s;
}

}  // namespace

std::array<double, kFeatureCount> AudioFeatures::to_array() const {
  return {danceability,
          energy,
          static_cast<double>(key),
          loudness,
          static_cast<double>(mode),
          speechiness,
          acousticness,
          instrumentalness,
          liveness,
          valence,
          tempo,
          static_cast<double>(time_signature)};
}

AudioFeatures AudioFeatures::from_array(
    const std::array<double, kFeatureCount>& v) {
  AudioFeatures f;
  f.danceability = v[0];
  f.energy = v[1];
  f.key = static_cast<int>(v[2]);
  f.loudness = v[3];
  f.mode = static_cast<int>(v[4]);
  f.speechiness = v[5];
  f.acousticness = v[6];
  f.instrumentalness = v[7];
  f.liveness = v[8];
  f.valence = v[9];
  f.tempo = v[10];
  f.time_signature = static_cast<int>(v[11]);
  return f;
}

std::size_t Dataset::count(Label label) const {
  return static_cast<std::size_t>(
      std::count_if(instances.begin(), instances.end(),
                    [label](const TrackInstance& t) { return t.liked == label; }));
}

FeatureVerdict validate_features(const AudioFeatures& f) {
  FeatureVerdict verdict;
  const auto v = f.to_array();
  for (std::size_t i = 0; i < kFeatureCount; ++i) {
    if (!std::isfinite(v[i])) {
      verdict.violations.push_back({field_name(i), field_name(i) + " is not finite"});
    }
  }
  for (std::size_t i : kUnitIntervalIndices) {
    if (std::isfinite(v[i]) && (v[i] < 0.0 || v[i] > 1.0)) {
      verdict.violations.push_back(
          {field_name(i), field_name(i) + " = " + format_shortest(v[i]) +
                              " is outside [0, 1]"});
    }
  }
  if (f.key < -1 || f.key > 11) {
    verdict.violations.push_back(
        {"key", "key = " + std::to_string(f.key) + " is outside -1..11"});
  }
  if (f.mode != 0 && f.mode != 1) {
    verdict.violations.push_back(
        {"mode", "mode = " + std::to_string(f.mode) + " is not 0 or 1"});
  }
  if (f.time_signature < 0 || f.time_signature > 7) {
    verdict.violations.push_back(
        {"time_signature", "time_signature = " +
                               std::to_string(f.time_signature) +
                               " is outside 0..7"});
  }
  if (std::isfinite(f.tempo)) {
    if (f.tempo < 0.0) {
      verdict.violations.push_back(
          {"tempo", "tempo = " + format_shortest(f.tempo) + " is negative"});
    } else if (f.tempo == 0.0 || f.tempo > 250.0) {
      verdict.warnings.push_back(
          {"tempo", "tempo = " + format_shortest(f.tempo) +
                        " is outside the typical range (0, 250] BPM"});
    }
  }
  if (std::isfinite(f.loudness) && (f.loudness < -60.0 || f.loudness > 0.0)) {
    verdict.warnings.push_back(
        {"loudness", "loudness = " + format_shortest(f.loudness) +
                         " dB is outside the typical range [-60, 0]"});
  }
  return verdict;
}

AudioFeatures features_from_values(const std::array<double, kFeatureCount>& v,
                                   FeatureVerdict& verdict) {
  FeatureVerdict integrality;
  for (std::size_t i = 0; i < kFeatureCount; ++i) {
    if (is_integer_attribute(i)) check_integral(v, i, integrality);
  }
  // Clamp before the int conversion so out-of-range raw values stay
  // out of range (and get reported) instead of overflowing.
  auto safe = v;
  for (std::size_t i = 0; i < kFeatureCount; ++i) {
    if (is_integer_attribute(i)) {
      safe[i] = std::isfinite(v[i]) ? std::clamp(v[i], -1e6, 1e6) : -1e6;
    }
  }
  AudioFeatures f = AudioFeatures::from_array(safe);
  verdict = validate_features(f);
  for (std::size_t i = 0; i < kFeatureCount; ++i) {
    if (is_integer_attribute(i) && !std::isfinite(v[i])) {
      verdict.violations.push_back(
          {field_name(i), field_name(i) + " is not finite"});
    }
  }
  verdict.violations.insert(verdict.violations.end(),
                            integrality.violations.begin(),
                            integrality.violations.end());
  return f;
}

Dataset parse_dataset(std::string_view text, std::string name) {
  Dataset d;
  d.name = std::move(name);

  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    auto line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    start = end + 1;
  }
  if (lines.empty()) {
    throw Error(ErrorCode::kParse, "dataset is empty; expected header: " +
                                       std::string(kCsvHeader));
  }
  if (lines.front() != kCsvHeader) {
    throw Error(ErrorCode::kParse,
                "header mismatch: expected \"" + std::string(kCsvHeader) +
                    "\", got \"" + std::string(lines.front()) + "\"");
  }

  for (std::size_t li = 1; li < lines.size(); ++li) {
    const std::size_t row = li;
    const auto line = lines[li];
    if (line.empty()) {
      if (li + 1 == lines.size()) break;
      throw Error(ErrorCode::kParse, "row " + std::to_string(row) + " is empty");
    }
    const auto cells = split_cells(line);
    if (cells.size() != kFeatureCount + 2) {
      throw Error(ErrorCode::kParse,
                  "row " + std::to_string(row) + " has " +
                      std::to_string(cells.size()) + " cells, expected " +
                      std::to_string(kFeatureCount + 2));
    }
    TrackInstance t;
    t.id = std::string(cells[0]);
    if (t.id.empty()) {
      throw Error(ErrorCode::kParse, row_context(row, "id") + ": empty id");
    }
    std::array<double, kFeatureCount> values{};
    for (std::size_t i = 0; i < kFeatureCount; ++i) {
      const auto parsed = parse_finite_double(cells[i + 1]);
      if (!parsed) {
        throw Error(ErrorCode::kParse,
                    row_context(row, kFeatureNames[i]) +
                        ": not a finite number: \"" + std::string(cells[i + 1]) +
                        "\"");
      }
      values[i] = *parsed;
    }
    FeatureVerdict verdict;
    t.features = features_from_values(values, verdict);
    if (!verdict.violations.empty()) {
      const auto& first = verdict.violations.front();
      throw Error(ErrorCode::kValidation,
                  row_context(row, first.field) + ": " + first.message);
    }
    const auto label_cell = cells[kFeatureCount + 1];
    if (label_cell == "1") {
      t.liked = Label::kLiked;
    } else if (label_cell == "0") {
      t.liked = Label::kDisliked;
    } else {
      throw Error(ErrorCode::kParse, row_context(row, "liked") +
                                         ": expected 0 or 1, got \"" +
                                         std::string(label_cell) + "\"");
    }
    d.instances.push_back(std::move(t));
  }
  return d;
}

std::string write_dataset(const Dataset& d) {
  std::string out(kCsvHeader);
  out.push_back('\n');
  for (const auto& t : d.instances) {
    const auto& f = t.features;
    out += t.id;
    for (double v : {f.danceability, f.energy}) {
      out += ',' + format_shortest(v);
    }
    out += ',' + std::to_string(f.key);
    out += ',' + format_shortest(f.loudness);
    out += ',' + std::to_string(f.mode);
    for (double v : {f.speechiness, f.acousticness, f.instrumentalness,
                     f.liveness, f.valence, f.tempo}) {
      out += ',' + format_shortest(v);
    }
    out += ',' + std::to_string(f.time_signature);
    out += ',' + std::to_string(to_int(t.liked));
    out.push_back('\n');
  }
  return out;
}

Dataset load_dataset_file(const std::string& path, std::string name) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open dataset file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  try {
    return parse_dataset(buffer.str(), std::move(name));
  } catch (const Error& e) {
    throw Error(e.code(), path + ": " + e.what());
  }
}

std::vector<std::string> dataset_warnings(const Dataset& d) {
  std::vector<std::string> warnings;
  if (d.size() < 100 || d.size() > 150) {
    warnings.push_back("dataset \"" + d.name + "\" has " +
                       std::to_string(d.size()) +
                       " instances; benchmark datasets usually hold 100-150");
  }
  for (std::size_t i = 0; i < d.instances.size(); ++i) {
    for (const auto& w : validate_features(d.instances[i].features).warnings) {
      warnings.push_back("row " + std::to_string(i + 1) + " (" +
                         d.instances[i].id + "): " + w.message);
    }
  }
  return warnings;
}

Dataset merge_labeled(std::span<const UnlabeledTrack> liked,
                      std::span<const UnlabeledTrack> disliked,
                      std::string name) {
  if (liked.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "liked track list is empty");
  }
  if (disliked.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "disliked track list is empty");
  }
  Dataset d;
  d.name = std::move(name);
  d.instances.reserve(liked.size() + disliked.size());
  for (const auto& t : liked) {
    d.instances.push_back({t.id, t.features, Label::kLiked});
  }
  for (const auto& t : disliked) {
    d.instances.push_back({t.id, t.features, Label::kDisliked});
  }
  return d;
}

FeatureSummary summarize(const Dataset& d) {
  FeatureSummary s;
  s.liked_count = d.count(Label::kLiked);
  s.disliked_count = d.count(Label::kDisliked);
  if (s.liked_count == 0 || s.disliked_count == 0) {
    throw Error(ErrorCode::kInvalidArgument,
                "both classes required: dataset \"" + d.name + "\" has " +
                    std::to_string(s.liked_count) + " liked and " +
                    std::to_string(s.disliked_count) + " disliked instances");
  }
  // Summing sorted values makes the mean independent of row order.
  auto class_mean = [&](Label label, std::size_t attribute) {
    std::vector<double> values;
    for (const auto& t : d.instances) {
      if (t.liked == label) values.push_back(t.features.to_array()[attribute]);
    }
    std::sort(values.begin(), values.end());
    double sum = 0.0;
    for (double v : values) sum += v;
    const double mean = sum / static_cast<double>(values.size());
    return std::clamp(mean, values.front(), values.back());
  };
  for (std::size_t a = 0; a < kFeatureCount; ++a) {
    s.liked_means[a] = class_mean(Label::kLiked, a);
    s.disliked_means[a] = class_mean(Label::kDisliked, a);
    if (s.liked_means[a] > s.disliked_means[a]) {
      s.higher[a] = HigherClass::kLiked;
    } else if (s.disliked_means[a] > s.liked_means[a]) {
      s.higher[a] = HigherClass::kDisliked;
    } else {
      s.higher[a] = HigherClass::kNeither;
    }
  }
  return s;
}

std::string render_summary_markdown(const FeatureSummary& s,
                                    std::string_view dataset_name) {
  std::string out = "| " + std::string(dataset_name) + " | n |";
  for (auto title : kFeatureTitles) out += " " + std::string(title) + " |";
  out += "\n|---|---|";
  for (std::size_t i = 0; i < kFeatureCount; ++i) out += "---|";
  out += "\n";
  auto row = [&](std::string_view label, std::size_t count,
                 const std::array<double, kFeatureCount>& means,
                 HigherClass mine) {
    out += "| " + std::string(label) + " | " + std::to_string(count) + " |";
    for (std::size_t i = 0; i < kFeatureCount; ++i) {
      const auto value = format_table_value(means[i]);
      out += s.higher[i] == mine ? " **" + value + "** |" : " " + value + " |";
    }
    out += "\n";
  };
  row("Liked", s.liked_count, s.liked_means, HigherClass::kLiked);
  row("Disliked", s.disliked_count, s.disliked_means, HigherClass::kDisliked);
  return out;
}

}  // namespace tunebench
