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

// Writes Gaussian datasets around the reference per-class means, as
// canonical CSV and optionally as offline playlist fixtures.

#include <tunebench/tunebench.h>

#include <array>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

namespace {

constexpr std::array<const char*, 12> kFields = {
    "danceability", "energy",           "key",      "loudness",
    "mode",         "speechiness",      "acousticness", "instrumentalness",
    "liveness",     "valence",          "tempo",    "time_signature"};

bool is_integer_field(std::size_t i) { return i == 2 || i == 4 || i == 11; }

bool write_file(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
  return static_cast<bool>(out);
}

nlohmann::json fixture_for(const tb_dataset* d, int label) {
  nlohmann::json list = nlohmann::json::array();
  for (std::size_t i = 0; i < tb_dataset_size(d); ++i) {
    std::array<double, 12> v{};
    int row_label = 0;
    tb_dataset_row(d, i, v.data(), &row_label);
    if (row_label != label) continue;
    nlohmann::json obj;
    obj["id"] = tb_dataset_track_id(d, i);
    for (std::size_t f = 0; f < kFields.size(); ++f) {
      if (is_integer_field(f)) {
        obj[kFields[f]] = static_cast<std::int64_t>(v[f]);
      } else {
        obj[kFields[f]] = v[f];
      }
    }
    list.push_back(std::move(obj));
  }
  return {{"audio_features", list}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Generate synthetic listener datasets"};
  int user = 3;
  std::size_t liked = 75, disliked = 75;
  double sigma = 0.15;
  std::uint64_t seed = 42;
  std::string out, name, fixture_dir, prefix;
  app.add_option("--user", user, "Listener whose class means to use (1-4)")
      ->capture_default_str()
      ->check(CLI::Range(1, 4));
  app.add_option("--liked", liked, "Liked rows")->capture_default_str();
  app.add_option("--disliked", disliked, "Disliked rows")->capture_default_str();
  app.add_option("--sigma", sigma, "Standard deviation relative to attribute range")
      ->capture_default_str();
  app.add_option("--seed", seed, "Sampling seed")->capture_default_str();
  app.add_option("--out", out, "CSV output path")->required();
  app.add_option("--name", name, "Dataset name (default: file stem)");
  app.add_option("--fixture-dir", fixture_dir, "Also write playlist fixtures here");
  app.add_option("--playlist-prefix", prefix, "Fixture playlist id prefix (default: name)");
  CLI11_PARSE(app, argc, argv);

  if (name.empty()) name = std::filesystem::path(out).stem().string();
  tb_dataset* d = nullptr;
  if (tb_dataset_synthesize(user, liked, disliked, sigma, seed, name.c_str(), &d) != TB_OK) {
    std::cerr << "error: " << tb_last_error() << "\n";
    return 1;
  }
  char* csv = nullptr;
  tb_dataset_write_csv(d, &csv);
  const bool ok = write_file(out, csv);
  tb_string_free(csv);
  if (ok && !fixture_dir.empty()) {
    const std::string p = prefix.empty() ? name : prefix;
    const std::filesystem::path dir(fixture_dir);
    write_file(dir / (p + "-liked.features.json"), fixture_for(d, 1).dump(2) + "\n");
    write_file(dir / (p + "-disliked.features.json"), fixture_for(d, 0).dump(2) + "\n");
  }
  tb_dataset_free(d);
  if (!ok) {
    std::cerr << "error: cannot write " << out << "\n";
    return 1;
  }
  return 0;
}
