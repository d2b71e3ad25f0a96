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

#include "cli_config.hpp"

#include <gtest/gtest.h>

namespace tunebench::cli {
namespace {

TEST(ConfigText, SectionsValuesAndComments) {
  const auto doc = parse_config_text(
      "# full-line comment\n"
      "folds = 5\n"
      "seed = 7  # trailing comment\n"
      "standardize = true\n"
      "formats = [\"md\", \"json\",]\n"
      "\n"
      "[datasets]\n"
      "zeta = \"z.csv\"\n"
      "alpha = \"a.csv\"\n"
      "[spec.rf]\n"
      "n_trees = 50\n"
      "ccp_alpha = 0.5\n");
  EXPECT_EQ(doc.at("folds"), 5);
  EXPECT_EQ(doc.at("seed"), 7);
  EXPECT_EQ(doc.at("standardize"), true);
  EXPECT_EQ(doc.at("formats").size(), 2u);
  EXPECT_EQ(doc.at("spec").at("rf").at("ccp_alpha"), 0.5);

  const auto cfg = apply_config(doc);
  EXPECT_EQ(cfg.folds, 5u);
  EXPECT_EQ(cfg.seed, 7u);
  EXPECT_TRUE(cfg.standardize);
  EXPECT_EQ(cfg.formats, (std::vector<std::string>{"md", "json"}));
  ASSERT_EQ(cfg.datasets.size(), 2u);
  EXPECT_EQ(cfg.datasets[0], (std::pair<std::string, std::string>{"zeta", "z.csv"}));
  EXPECT_EQ(cfg.datasets[1].first, "alpha");
  EXPECT_EQ(cfg.spec_overrides.at("rf").at("n_trees"), 50);
  EXPECT_EQ(cfg.algorithms.size(), 6u);
}

TEST(ConfigText, Rejections) {
  EXPECT_THROW(parse_config_text("folds 5\n"), ConfigError);
  EXPECT_THROW(parse_config_text("a = \"open\n"), ConfigError);
  EXPECT_THROW(parse_config_text("a = 1\na = 2\n"), ConfigError);
  EXPECT_THROW(parse_config_text("a = [[1]]\n"), ConfigError);
  EXPECT_THROW(parse_config_text("a = what\n"), ConfigError);
  EXPECT_THROW(apply_config(parse_config_text("foldz = 3\n")), ConfigError);
  EXPECT_THROW(apply_config(parse_config_text("folds = -1\n")), ConfigError);
  EXPECT_THROW(apply_config(parse_config_text("[spec.svm]\nC = 1\n")), ConfigError);
  EXPECT_THROW(apply_config(parse_config_text("algorithms = [\"rf\", \"dt\"]\n")), ConfigError);
}

TEST(AlgorithmList, OrderKeptAndRepeatsDropped) {
  EXPECT_EQ(parse_algorithm_list("rf, nb,rf"), (std::vector<std::string>{"rf", "nb"}));
  EXPECT_EQ(parse_algorithm_list("knn,all").front(), "knn");
  EXPECT_EQ(parse_algorithm_list("all").size(), 6u);
  EXPECT_THROW(parse_algorithm_list("rf,"), ConfigError);
}

TEST(DatasetArg, NameDefaultsToStem) {
  EXPECT_EQ(parse_dataset_arg("dir/user1.csv"),
            (std::pair<std::string, std::string>{"user1", "dir/user1.csv"}));
  EXPECT_EQ(parse_dataset_arg("me=x/y.csv"),
            (std::pair<std::string, std::string>{"me", "x/y.csv"}));
}

}  // namespace
}  // namespace tunebench::cli
