//
// Copyright 2026 The augtest Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//


#include "augtest/rng.h"

#include <cmath>
#include <cstdint>
#include <set>
#include <vector>

#include "gtest/gtest.h"
#include "oracles.h"

namespace augtest {
namespace {

TEST(RngTest, SameSeedSameStream) {
  Rng a(42);
  Rng b(42);
  for (int i = 0; i < 1000; ++i) ASSERT_EQ(a(), b());
}

TEST(RngTest, DifferentSeedsDiffer) {
  Rng a(1);
  Rng b(2);
  int equal = 0;
  for (int i = 0; i < 1000; ++i) equal += a() == b();
  EXPECT_EQ(equal, 0);
}

TEST(RngTest, SplitDoesNotAdvanceParent) {
  Rng a(7);
  Rng b(7);
  Rng child = a.Split(3);
  (void)child();
  EXPECT_EQ(a(), b());
  EXPECT_EQ(a.Split(3)(), Rng(7).Split(3)());
}

TEST(RngTest, SplitChildrenAreDistinct) {
  Rng root(99);
  std::set<uint64_t> firsts;
  for (uint64_t i = 0; i < 10000; ++i) firsts.insert(root.Split(i)());
  EXPECT_EQ(firsts.size(), 10000u);
}

TEST(RngTest, Uniform01Range) {
  Rng rng(5);
  for (int i = 0; i < 100000; ++i) {
    const double u = rng.Uniform01();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    const double v = rng.UniformOpen01();
    ASSERT_GT(v, 0.0);
    ASSERT_LT(v, 1.0);
  }
}

TEST(RngTest, UniformIntIsUniform) {
  Rng rng(11);
  constexpr int kBins = 7;
  constexpr int kDraws = 70000;
  std::vector<double> observed(kBins, 0.0);
  for (int i = 0; i < kDraws; ++i) {
    const uint64_t v = rng.UniformInt(kBins);
    ASSERT_LT(v, static_cast<uint64_t>(kBins));
    observed[v] += 1.0;
  }
  const std::vector<double> expected(kBins, kDraws / double{kBins});
  EXPECT_GT(oracle::ChiSquarePValue(observed, expected), 1e-3);
}

TEST(RngTest, MeanOfUniform01) {
  Rng rng(12);
  constexpr int kDraws = 200000;
  double sum = 0.0;
  for (int i = 0; i < kDraws; ++i) sum += rng.Uniform01();
  const double se = std::sqrt(1.0 / 12.0 / kDraws);
  EXPECT_NEAR(sum / kDraws, 0.5, 4.0 * se);
}

}  // namespace
}  // namespace augtest
