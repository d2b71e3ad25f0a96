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

#ifndef TUNEBENCH_SRC_REPORT_HPP_
#define TUNEBENCH_SRC_REPORT_HPP_

#include <optional>
#include <string>
#include <string_view>

#include "evaluation.hpp"

namespace tunebench {

enum class ReportFormat { kMarkdown, kCsv, kJson };

std::optional<ReportFormat> parse_report_format(std::string_view name);
std::string_view report_extension(ReportFormat format);

inline constexpr std::string_view kReportSchema = "tunebench.report/1";

// Markdown and CSV show whole percents (half up); JSON keeps raw fractions
// and per-fold vectors. Output bytes are a pure function of the grid.
std::string render_report(const BenchmarkGrid& grid, ReportFormat format);

// Inverse of the JSON rendering; means are recomputed from the cells.
BenchmarkGrid grid_from_json(std::string_view text);

}  // namespace tunebench

#endif  // TUNEBENCH_SRC_REPORT_HPP_
