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

#include "numeric_format.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <system_error>

namespace tunebench {

std::string format_shortest(double value) {
  char buffer[64];
  const auto result = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, result.ptr);
}

std::optional<double> parse_finite_double(std::string_view text) {
  if (text.empty()) return std::nullopt;
  // from_chars does not accept a leading '+'.
  if (text.front() == '+') text.remove_prefix(1);
  double value = 0.0;
  const auto result =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (result.ec != std::errc{} || result.ptr != text.data() + text.size()) {
    return std::nullopt;
  }
  if (!std::isfinite(value)) return std::nullopt;
  return value;
}

long long round_percent(double fraction) {
  if (fraction == 0.0 || !std::isfinite(fraction)) return 0;
  const bool negative = fraction < 0.0;
  char buffer[64];
  const auto result =
      std::to_chars(buffer, buffer + sizeof(buffer), std::fabs(fraction),
                    std::chars_format::scientific);
  const std::string_view text(buffer, result.ptr);
  // d.ddddde[+-]xx
  const auto e_pos = text.find('e');
  std::string digits;
  for (char c : text.substr(0, e_pos)) {
    if (c != '.') digits.push_back(c);
  }
  const int exponent = std::atoi(std::string(text.substr(e_pos + 1)).c_str());
  const int percent_exponent = exponent + 2;

  auto digit_at = [&](int i) -> int {
    if (i < 0 || i >= static_cast<int>(digits.size())) return 0;
    return digits[static_cast<std::size_t>(i)] - '0';
  };
  long long whole = 0;
  for (int i = 0; i <= percent_exponent; ++i) whole = whole * 10 + digit_at(i);
  const int next = percent_exponent >= -1 ? digit_at(percent_exponent + 1) : 0;
  if (next >= 5) ++whole;
  return negative ? -whole : whole;
}

std::string format_percent(double fraction) {
  return std::to_string(round_percent(fraction)) + "%";
}

}  // namespace tunebench
