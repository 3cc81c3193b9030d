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

#ifndef AUGTEST_TRIAL_RUNNER_H_
#define AUGTEST_TRIAL_RUNNER_H_

#include <array>
#include <cstdint>
#include <functional>

#include "augtest/outcome.h"
#include "augtest/rng.h"

namespace augtest {

// Commutative integer tally; merging order never changes the result.
struct Tally {
  std::array<int64_t, 3> verdicts{};  // indexed by Outcome
  int64_t metric_count = 0;
  int64_t metric_sum = 0;
  int64_t metric_sumsq = 0;

  void AddVerdict(Outcome o) { ++verdicts[static_cast<int>(o)]; }
  void AddMetric(int64_t v) {
    ++metric_count;
    metric_sum += v;
    metric_sumsq += v * v;
  }
  void Merge(const Tally& other);
  int64_t count(Outcome o) const { return verdicts[static_cast<int>(o)]; }
  int64_t verdict_total() const;

  bool operator==(const Tally& other) const = default;
};

// Trial i receives Rng(master_seed).Split(i).
using TrialFn = std::function<Tally(int64_t trial, Rng& rng)>;

Tally RunTrialsSerial(int64_t trials, uint64_t master_seed, const TrialFn& fn);

// threads <= 0 uses the OpenMP default.
Tally RunTrialsParallel(int64_t trials, uint64_t master_seed, const TrialFn& fn,
                        int threads = 0);

}  // namespace augtest

#endif  // AUGTEST_TRIAL_RUNNER_H_
