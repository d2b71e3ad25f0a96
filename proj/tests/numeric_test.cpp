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

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <set>
#include <vector>

#include "numeric_format.hpp"
#include "rng.hpp"

namespace tunebench {
namespace {

TEST(NumericFormatTest, PercentRoundsHalfUpOnDecimalValue) {
  EXPECT_EQ(format_percent(0.835), "84%");
  EXPECT_EQ(format_percent(0.8349), "83%");
  EXPECT_EQ(format_percent(0.84), "84%");
  EXPECT_EQ(format_percent(0.125), "13%");
  EXPECT_EQ(format_percent(1.0), "100%");
  EXPECT_EQ(format_percent(0.0), "0%");
  EXPECT_EQ(round_percent(0.665), 67);
  EXPECT_EQ(round_percent(2.0 / 3.0), 67);
}

TEST(NumericFormatTest, ShortestRoundTrip) {
  for (double v : {0.1, 1.0 / 3.0, -5.12088, 125.90702, 1e-300, 0.0}) {
    const auto s = format_shortest(v);
    const auto back = parse_finite_double(s);
    ASSERT_TRUE(back.has_value()) << s;
    EXPECT_EQ(*back, v) << s;
  }
  EXPECT_EQ(format_shortest(0.5), "0.5");
  EXPECT_EQ(format_shortest(4.0), "4");
}

TEST(NumericFormatTest, ParseRejectsNonFiniteAndJunk) {
  EXPECT_EQ(parse_finite_double("+1.5"), 1.5);
  EXPECT_EQ(parse_finite_double("-2"), -2.0);
  EXPECT_FALSE(parse_finite_double("nan"));
  EXPECT_FALSE(parse_finite_double("inf"));
  EXPECT_FALSE(parse_finite_double("1.5x"));
  EXPECT_FALSE(parse_finite_double(""));
  EXPECT_FALSE(parse_finite_double("1e400"));
}

TEST(RngTest, SameSeedSameStream) {
  Rng a(7), b(7);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a.next_u64(), b.next_u64());
}

TEST(RngTest, UniformIndexStaysInRangeAndCoversIt) {
  Rng rng(1);
  std::set<std::uint64_t> seen;
  for (int i = 0; i < 2000; ++i) {
    const auto v = rng.uniform_index(7);
    ASSERT_LT(v, 7u);
    seen.insert(v);
  }
  EXPECT_EQ(seen.size(), 7u);
}

TEST(RngTest, Uniform01InHalfOpenInterval) {
  Rng rng(3);
  for (int i = 0; i < 10000; ++i) {
    const double u = rng.uniform01();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
  }
}

TEST(RngTest, NormalMoments) {
  Rng rng(11);
  const int n = 200000;
  double sum = 0.0, sq = 0.0;
  for (int i = 0; i < n; ++i) {
    const double z = rng.normal();
    sum += z;
    sq += z * z;
  }
  const double mean = sum / n;
  EXPECT_NEAR(mean, 0.0, 0.01);
  EXPECT_NEAR(sq / n - mean * mean, 1.0, 0.02);
}

TEST(RngTest, ShuffleIsPermutation) {
  Rng rng(5);
  std::vector<int> v(50);
  for (int i = 0; i < 50; ++i) v[i] = i;
  rng.shuffle(std::span<int>(v));
  std::vector<int> sorted = v;
  std::sort(sorted.begin(), sorted.end());
  for (int i = 0; i < 50; ++i) EXPECT_EQ(sorted[i], i);
}

TEST(RngTest, MixSeedSeparatesKeys) {
  EXPECT_NE(mix_seed(42, std::uint64_t{0}), mix_seed(42, std::uint64_t{1}));
  EXPECT_NE(mix_seed(42, "rf"), mix_seed(42, "nb"));
  EXPECT_EQ(mix_seed(42, "rf"), mix_seed(42, "rf"));
}

}  // namespace
}  // namespace tunebench
