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


#include "augtest/trial_runner.h"

#include <stdexcept>

#include "augtest/outcome.h"
#include "augtest/rng.h"
#include "gtest/gtest.h"

namespace augtest {
namespace {

Tally Noisy(int64_t trial, Rng& rng) {
  Tally t;
  const uint64_t v = rng.UniformInt(3);
  t.AddVerdict(static_cast<Outcome>(v));
  t.AddMetric(static_cast<int64_t>(rng.UniformInt(100)) + trial % 7);
  return t;
}

TEST(TallyTest, MergeIsCommutative) {
  Tally a, b;
  a.AddVerdict(Outcome::kAccept);
  a.AddMetric(3);
  b.AddVerdict(Outcome::kBot);
  b.AddMetric(5);
  Tally ab = a, ba = b;
  ab.Merge(b);
  ba.Merge(a);
  EXPECT_EQ(ab, ba);
  EXPECT_EQ(ab.verdict_total(), 2);
  EXPECT_EQ(ab.metric_sum, 8);
  EXPECT_EQ(ab.metric_sumsq, 34);
}

TEST(TrialRunnerTest, SerialMatchesParallel) {
  const Tally serial = RunTrialsSerial(5000, 17, Noisy);
  for (int threads : {1, 2, 3, 8}) {
    EXPECT_EQ(RunTrialsParallel(5000, 17, Noisy, threads), serial) << threads;
  }
  EXPECT_EQ(serial.verdict_total(), 5000);
}

TEST(TrialRunnerTest, SeedChangesResult) {
  EXPECT_NE(RunTrialsSerial(2000, 1, Noisy), RunTrialsSerial(2000, 2, Noisy));
}

TEST(TrialRunnerTest, TrialSeedIsSplitOfMaster) {
  const Tally t = RunTrialsSerial(1, 99, [](int64_t trial, Rng& rng) {
    Rng expect = Rng(99).Split(static_cast<uint64_t>(trial));
    EXPECT_EQ(rng(), expect());
    return Tally{};
  });
  EXPECT_EQ(t.verdict_total(), 0);
}

TEST(TrialRunnerTest, ExceptionsPropagate) {
  const TrialFn bad = [](int64_t trial, Rng&) -> Tally {
    if (trial == 37) throw std::runtime_error("boom");
    return Tally{};
  };
  EXPECT_THROW(RunTrialsSerial(100, 1, bad), std::runtime_error);
  EXPECT_THROW(RunTrialsParallel(100, 1, bad, 4), std::runtime_error);
}

}  // namespace
}  // namespace augtest
