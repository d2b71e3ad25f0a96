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

#ifndef TUNEBENCH_TOOLS_CLI_CONFIG_HPP_
#define TUNEBENCH_TOOLS_CLI_CONFIG_HPP_

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"

namespace tunebench::cli {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Reads the TOML subset used by tunebench.toml: [section] and
// [section.sub] headers, key = value lines, # comments. Values are strings,
// integers, floats, booleans, or single-line arrays of those. The result is
// a JSON object with one nested object per section, keys in file order.
nlohmann::ordered_json parse_config_text(std::string_view text);

struct CliConfig {
  // (name, path) in file order.
  std::vector<std::pair<std::string, std::string>> datasets;
  std::vector<std::string> algorithms = {"lr", "nb", "smo", "mlp", "knn", "rf"};
  std::size_t folds = 10;
  std::uint64_t seed = 42;
  bool standardize = false;
  std::string out_dir = ".";
  std::vector<std::string> formats = {"md", "csv", "json"};
  // Per-algorithm field overrides, keyed by tag, from [spec.<tag>] sections.
  nlohmann::json spec_overrides = nlohmann::json::object();
};

// Applies a parsed document on top of `base`. Unknown keys are errors.
CliConfig apply_config(const nlohmann::ordered_json& doc, CliConfig base = {});

// "all" or a comma-separated list of tags; order is kept, repeats dropped.
std::vector<std::string> parse_algorithm_list(std::string_view text);

// "name=path" or a bare path whose file stem becomes the name.
std::pair<std::string, std::string> parse_dataset_arg(std::string_view text);

}  // namespace tunebench::cli

#endif  // TUNEBENCH_TOOLS_CLI_CONFIG_HPP_
