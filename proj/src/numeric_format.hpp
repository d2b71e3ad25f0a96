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

#ifndef TUNEBENCH_SRC_NUMERIC_FORMAT_HPP_
#define TUNEBENCH_SRC_NUMERIC_FORMAT_HPP_

#include <optional>
#include <string>
#include <string_view>

namespace tunebench {

// Shortest decimal that parses back to the same double.
std::string format_shortest(double value);

// Strict full-string parse; rejects NaN, infinities and trailing garbage.
std::optional<double> parse_finite_double(std::string_view text);

// Whole-percent string for a fraction, rounding half up on the decimal
// expansion of the shortest representation (0.835 -> "84%").
std::string format_percent(double fraction);

// Same rounding as format_percent, as an integer.
long long round_percent(double fraction);

}  // namespace tunebench

#endif  // TUNEBENCH_SRC_NUMERIC_FORMAT_HPP_
