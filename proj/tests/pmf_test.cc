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


#include "augtest/pmf.h"

#include <stdexcept>
#include <vector>

#include "augtest/rng.h"
#include "gtest/gtest.h"

namespace augtest {
namespace {

Pmf RandomPmf(int64_t n, Rng& rng) {
  std::vector<double> w(n);
  for (double& x : w) x = rng.Uniform01() * (rng.Uniform01() < 0.2 ? 0.0 : 1.0);
  w[rng.UniformInt(n)] += 0.5;
  return Pmf::Renormalized(w);
}

TEST(PmfTest, CreateValidates) {
  EXPECT_NO_THROW(Pmf::Create({0.25, 0.75}));
  EXPECT_NO_THROW(Pmf::Create({0.5, 0.5 + 5e-13}));
  EXPECT_THROW(Pmf::Create({0.5, 0.6}), std::invalid_argument);
  EXPECT_THROW(Pmf::Create({-0.1, 1.1}), std::invalid_argument);
  EXPECT_THROW(Pmf::Create({}), std::invalid_argument);
}

TEST(PmfTest, RenormalizedScales) {
  const Pmf p = Pmf::Renormalized({1.0, 3.0});
  EXPECT_DOUBLE_EQ(p[0], 0.25);
  EXPECT_DOUBLE_EQ(p[1], 0.75);
  EXPECT_THROW(Pmf::Renormalized({0.0, 0.0}), std::invalid_argument);
}

TEST(PmfTest, TvExamples) {
  EXPECT_DOUBLE_EQ(TvDistance(Pmf::Uniform(10), Pmf::Uniform(10)), 0.0);
  EXPECT_DOUBLE_EQ(TvDistance(Pmf::PointMass(2, 0), Pmf::PointMass(2, 1)), 1.0);
  const Pmf p_hat = Pmf::Create({0.2, 0.3, 0.2, 0.3});
  EXPECT_NEAR(TvDistance(p_hat, Pmf::Uniform(4)), 0.1, 1e-15);
  EXPECT_THROW(TvDistance(Pmf::Uniform(3), Pmf::Uniform(4)),
               std::invalid_argument);
}

TEST(PmfTest, L2Examples) {
  EXPECT_NEAR(L2NormSq(Pmf::Uniform(8)), 0.125, 1e-15);
  EXPECT_DOUBLE_EQ(L2NormSq(Pmf::PointMass(5, 3)), 1.0);
  EXPECT_DOUBLE_EQ(L2NormSq(Pmf::Create({0.5, 0.25, 0.25})), 0.375);
}

TEST(PmfTest, TvIsAMetricOnRandomTriples) {
  Rng rng(3);
  for (int t = 0; t < 500; ++t) {
    const int64_t n = 2 + static_cast<int64_t>(rng.UniformInt(20));
    const Pmf p = RandomPmf(n, rng);
    const Pmf q = RandomPmf(n, rng);
    const Pmf r = RandomPmf(n, rng);
    const double pq = TvDistance(p, q);
    EXPECT_GE(pq, 0.0);
    EXPECT_LE(pq, 1.0);
    EXPECT_DOUBLE_EQ(pq, TvDistance(q, p));
    EXPECT_DOUBLE_EQ(TvDistance(p, p), 0.0);
    EXPECT_LE(pq, TvDistance(p, r) + TvDistance(r, q) + 1e-12);
  }
}

TEST(PmfTest, L2BoundsOnRandomPmfs) {
  Rng rng(4);
  for (int t = 0; t < 500; ++t) {
    const int64_t n = 1 + static_cast<int64_t>(rng.UniformInt(30));
    const double l2 = L2NormSq(RandomPmf(n, rng));
    EXPECT_GE(l2, 1.0 / n - 1e-15);
    EXPECT_LE(l2, 1.0 + 1e-15);
  }
}

TEST(PmfTest, MassOfSubset) {
  const Pmf p = Pmf::Create({0.1, 0.2, 0.3, 0.4});
  EXPECT_NEAR(p.Mass({0, 2}), 0.4, 1e-15);
  EXPECT_DOUBLE_EQ(p.Mass({}), 0.0);
}

TEST(PmfTest, ParseFormats) {
  const Pmf a = ParsePmf("# weights\n0.25\n0.75\n");
  EXPECT_EQ(a.n(), 2);
  EXPECT_DOUBLE_EQ(a[1], 0.75);
  const Pmf b = ParsePmf("0.5, 0.25,0.25");
  EXPECT_EQ(b.n(), 3);
  const Pmf c = ParsePmf("1,3", /*renormalize=*/true);
  EXPECT_DOUBLE_EQ(c[0], 0.25);
  EXPECT_THROW(ParsePmf("0.5, abc"), std::invalid_argument);
  EXPECT_THROW(ParsePmf("1,3"), std::invalid_argument);
  EXPECT_THROW(ParsePmf(""), std::invalid_argument);
}

TEST(PmfTest, FormatRoundTrips) {
  Rng rng(8);
  const Pmf p = RandomPmf(13, rng);
  const Pmf back = ParsePmf(FormatPmf(p));
  ASSERT_EQ(back.n(), p.n());
  for (int64_t i = 0; i < p.n(); ++i) EXPECT_EQ(back[i], p[i]);
}

}  // namespace
}  // namespace augtest
