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

#include "errors.hpp"
#include "json.hpp"
#include "numeric_format.hpp"

namespace tunebench {
namespace {

using nlohmann::json;

std::string percent_or(const std::optional<double>& v, std::string_view missing) {
  return v ? format_percent(*v) : std::string(missing);
}

std::string cell_percent(const BenchmarkCell& c) {
  return c.ok() ? format_percent(c.result->mean_accuracy) : "error";
}

std::string render_markdown(const BenchmarkGrid& g) {
  std::string out = "Mean accuracy, stratified " + std::to_string(g.k) +
                    "-fold cross-validation (seed " + std::to_string(g.seed) +
                    (g.standardize ? ", standardized features" : "") + ")\n\n";
  out += "| Algorithm |";
  for (const auto& d : g.dataset_names) out += " " + d + " |";
  out += " Average |\n|---|";
  for (std::size_t d = 0; d <= g.dataset_names.size(); ++d) out += "---:|";
  out += "\n";
  for (std::size_t s = 0; s < g.specs.size(); ++s) {
    out += "| " + std::string(algorithm_name(algorithm_of(g.specs[s]))) + " |";
    for (std::size_t d = 0; d < g.dataset_names.size(); ++d) {
      out += " " + cell_percent(g.cell(s, d)) + " |";
    }
    out += " " + percent_or(g.algorithm_means[s], "n/a") + " |\n";
  }
  out += "| Average |";
  for (const auto& m : g.dataset_means) out += " " + percent_or(m, "n/a") + " |";
  out += " " + percent_or(g.overall_mean, "n/a") + " |\n";

  bool any_error = false;
  for (std::size_t s = 0; s < g.specs.size(); ++s) {
    for (std::size_t d = 0; d < g.dataset_names.size(); ++d) {
      const auto& c = g.cell(s, d);
      if (c.ok()) continue;
      if (!any_error) out += "\nErrors:\n\n";
      any_error = true;
      out += "- " + std::string(algorithm_tag(algorithm_of(g.specs[s]))) + " on " +
             g.dataset_names[d] + ": " + c.error + "\n";
    }
  }
  return out;
}

std::string render_csv(const BenchmarkGrid& g) {
  std::string out = "algorithm,tag";
  for (const auto& d : g.dataset_names) out += "," + d;
  out += ",average\n";
  auto number = [](const std::optional<double>& v) {
    return v ? std::to_string(round_percent(*v)) : std::string();
  };
  for (std::size_t s = 0; s < g.specs.size(); ++s) {
    const auto a = algorithm_of(g.specs[s]);
    out += std::string(algorithm_name(a)) + "," + std::string(algorithm_tag(a));
    for (std::size_t d = 0; d < g.dataset_names.size(); ++d) {
      const auto& c = g.cell(s, d);
      out += "," + (c.ok() ? number(c.result->mean_accuracy) : std::string());
    }
    out += "," + number(g.algorithm_means[s]) + "\n";
  }
  out += "Average,";
  for (const auto& m : g.dataset_means) out += "," + number(m);
  out += "," + number(g.overall_mean) + "\n";
  return out;
}

json optional_number(const std::optional<double>& v) {
  return v ? json(*v) : json(nullptr);
}

std::string render_json(const BenchmarkGrid& g) {
  json j;
  j["schema"] = kReportSchema;
  j["k"] = g.k;
  j["seed"] = g.seed;
  j["standardize"] = g.standardize;
  j["datasets"] = g.dataset_names;
  json algorithms = json::array();
  for (const auto& spec : g.specs) {
    const auto a = algorithm_of(spec);
    algorithms.push_back({{"tag", algorithm_tag(a)},
                          {"name", algorithm_name(a)},
                          {"spec", spec_to_json(spec)}});
  }
  j["algorithms"] = std::move(algorithms);
  json cells = json::array();
  for (std::size_t s = 0; s < g.specs.size(); ++s) {
    for (std::size_t d = 0; d < g.dataset_names.size(); ++d) {
      const auto& c = g.cell(s, d);
      json cell = {{"algorithm", s}, {"dataset", d}};
      if (c.ok()) {
        cell["mean_accuracy"] = c.result->mean_accuracy;
        cell["fold_accuracies"] = c.result->fold_accuracies;
        cell["warnings"] = c.result->warnings;
        cell["error"] = nullptr;
      } else {
        cell["mean_accuracy"] = nullptr;
        cell["fold_accuracies"] = json::array();
        cell["warnings"] = json::array();
        cell["error"] = c.error;
      }
      cells.push_back(std::move(cell));
    }
  }
  j["cells"] = std::move(cells);
  json algorithm_means = json::array();
  for (const auto& m : g.algorithm_means) algorithm_means.push_back(optional_number(m));
  json dataset_means = json::array();
  for (const auto& m : g.dataset_means) dataset_means.push_back(optional_number(m));
  j["algorithm_means"] = std::move(algorithm_means);
  j["dataset_means"] = std::move(dataset_means);
  j["overall_mean"] = optional_number(g.overall_mean);
  return j.dump(2) + "\n";
}

}  // namespace

std::optional<ReportFormat> parse_report_format(std::string_view name) {
  if (name == "md" || name == "markdown") return ReportFormat::kMarkdown;
  if (name == "csv") return ReportFormat::kCsv;
  if (name == "json") return ReportFormat::kJson;
  return std::nullopt;
}

std::string_view report_extension(ReportFormat format) {
  switch (format) {
    case ReportFormat::kMarkdown: return "md";
    case ReportFormat::kCsv: return "csv";
    case ReportFormat::kJson: return "json";
  }
  return "txt";
}

std::string render_report(const BenchmarkGrid& grid, ReportFormat format) {
  switch (format) {
    case ReportFormat::kMarkdown: return render_markdown(grid);
    case ReportFormat::kCsv: return render_csv(grid);
    case ReportFormat::kJson: return render_json(grid);
  }
  return {};
}

BenchmarkGrid grid_from_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("report JSON: ") + e.what());
  }
  try {
    if (j.at("schema") != kReportSchema) {
      throw Error(ErrorCode::kParse, "unsupported report schema " + j.at("schema").dump());
    }
    BenchmarkGrid g;
    g.k = j.at("k").get<std::size_t>();
    g.seed = j.at("seed").get<std::uint64_t>();
    g.standardize = j.at("standardize").get<bool>();
    g.dataset_names = j.at("datasets").get<std::vector<std::string>>();
    for (const auto& a : j.at("algorithms")) g.specs.push_back(spec_from_json(a.at("spec")));
    g.cells.resize(g.specs.size() * g.dataset_names.size());
    for (const auto& c : j.at("cells")) {
      const auto s = c.at("algorithm").get<std::size_t>();
      const auto d = c.at("dataset").get<std::size_t>();
      if (s >= g.specs.size() || d >= g.dataset_names.size()) {
        throw Error(ErrorCode::kParse, "report cell index out of range");
      }
      auto& cell = g.cells[s * g.dataset_names.size() + d];
      if (c.at("error").is_null()) {
        CvResult r;
        r.fold_accuracies = c.at("fold_accuracies").get<std::vector<double>>();
        r.mean_accuracy = c.at("mean_accuracy").get<double>();
        r.warnings = c.at("warnings").get<std::vector<std::string>>();
        r.spec = g.specs[s];
        r.dataset_name = g.dataset_names[d];
        r.seed = g.seed;
        cell.result = std::move(r);
      } else {
        cell.error = c.at("error").get<std::string>();
      }
    }
    recompute_means(g);
    return g;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("malformed report JSON: ") + e.what());
  }
}

}  // namespace tunebench
