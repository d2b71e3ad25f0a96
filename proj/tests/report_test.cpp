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

#include "report.hpp"

#include <gtest/gtest.h>

#include "errors.hpp"
#include "json.hpp"

namespace tunebench {
namespace {

CvResult cv(std::vector<double> folds, std::string dataset) {
  CvResult r;
  r.fold_accuracies = std::move(folds);
  r.mean_accuracy = mean_of(r.fold_accuracies);
  r.dataset_name = std::move(dataset);
  r.seed = 42;
  return r;
}

// Two algorithms on two datasets; kNN failed on "b".
BenchmarkGrid sample_grid() {
  BenchmarkGrid g;
  g.dataset_names = {"a", "b"};
  g.specs = {RandomForestSpec{}, KnnSpec{}};
  g.k = 2;
  g.seed = 42;
  g.cells.resize(4);
  g.cells[0].result = cv({0.83, 0.84}, "a");  // 0.835 rounds up
  g.cells[1].result = cv({0.8, 0.9}, "b");
  g.cells[2].result = cv({0.6, 0.7}, "a");
  g.cells[2].result->warnings = {"fold 1: something"};
  g.cells[3].error = "k = 5 must be in 1..4";
  recompute_means(g);
  return g;
}

TEST(Report, MarkdownTable) {
  const auto md = render_report(sample_grid(), ReportFormat::kMarkdown);
  EXPECT_NE(md.find("stratified 2-fold cross-validation (seed 42)"), std::string::npos);
  EXPECT_NE(md.find("| Algorithm | a | b | Average |"), std::string::npos);
  EXPECT_NE(md.find("| Random Forest | 84% | 85% | 84% |"), std::string::npos) << md;
  EXPECT_NE(md.find("| Nearest Neighbor | 65% | error | 65% |"), std::string::npos) << md;
  EXPECT_NE(md.find("k = 5 must be in 1..4"), std::string::npos);
}

TEST(Report, CsvUsesIntegerPercentsAndEmptyFailedCells) {
  const auto csv = render_report(sample_grid(), ReportFormat::kCsv);
  const std::string expected =
      "algorithm,tag,a,b,average\n"
      "Random Forest,rf,84,85,84\n"
      "Nearest Neighbor,knn,65,,65\n"
      "Average,,74,85,78\n";
  EXPECT_EQ(csv, expected);
}

TEST(Report, JsonCarriesRawFractionsAndRoundTrips) {
  const auto g = sample_grid();
  const auto text = render_report(g, ReportFormat::kJson);
  const auto j = nlohmann::json::parse(text);
  EXPECT_EQ(j.at("schema"), kReportSchema);
  EXPECT_EQ(j.at("cells").size(), 4u);
  EXPECT_EQ(j.at("cells")[0].at("fold_accuracies"), (std::vector<double>{0.83, 0.84}));
  EXPECT_TRUE(j.at("cells")[3].at("mean_accuracy").is_null());
  EXPECT_EQ(j.at("cells")[3].at("error"), "k = 5 must be in 1..4");
  EXPECT_DOUBLE_EQ(j.at("overall_mean").get<double>(), (0.835 + 0.85 + 0.65) / 3);

  const auto back = grid_from_json(text);
  EXPECT_EQ(render_report(back, ReportFormat::kJson), text);
  EXPECT_EQ(render_report(back, ReportFormat::kMarkdown),
            render_report(g, ReportFormat::kMarkdown));
  EXPECT_THROW(grid_from_json("{\"schema\": \"other\"}"), Error);
  EXPECT_THROW(grid_from_json("not json"), Error);
}

TEST(Report, RenderingIsAPureFunction) {
  EXPECT_EQ(render_report(sample_grid(), ReportFormat::kJson),
            render_report(sample_grid(), ReportFormat::kJson));
}

TEST(Report, FormatNames) {
  EXPECT_EQ(parse_report_format("md"), ReportFormat::kMarkdown);
  EXPECT_EQ(parse_report_format("markdown"), ReportFormat::kMarkdown);
  EXPECT_EQ(parse_report_format("csv"), ReportFormat::kCsv);
  EXPECT_EQ(parse_report_format("json"), ReportFormat::kJson);
  EXPECT_FALSE(parse_report_format("xml").has_value());
  EXPECT_EQ(report_extension(ReportFormat::kMarkdown), "md");
}

}  // namespace
}  // namespace tunebench
