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

#include <exception>
#include <vector>

#include <omp.h>

namespace augtest {

void Tally::Merge(const Tally& other) {
  for (size_t i = 0; i < verdicts.size(); ++i) verdicts[i] += other.verdicts[i];
  metric_count += other.metric_count;
  metric_sum += other.metric_sum;
  metric_sumsq += other.metric_sumsq;
}

int64_t Tally::verdict_total() const {
  return verdicts[0] + verdicts[1] + verdicts[2];
}

Tally RunTrialsSerial(int64_t trials, uint64_t master_seed, const TrialFn& fn) {
  const Rng master(master_seed);
  Tally total;
  for (int64_t t = 0; t < trials; ++t) {
    Rng rng = master.Split(static_cast<uint64_t>(t));
    total.Merge(fn(t, rng));
  }
  return total;
}

Tally RunTrialsParallel(int64_t trials, uint64_t master_seed, const TrialFn& fn,
                        int threads) {
  const Rng master(master_seed);
  const int nthreads = threads > 0 ? threads : omp_get_max_threads();
  std::vector<Tally> partial(nthreads);
  std::vector<std::exception_ptr> errors(nthreads);

#pragma omp parallel for num_threads(nthreads) schedule(dynamic, 4)
  for (int64_t t = 0; t < trials; ++t) {
    const int tid = omp_get_thread_num();
    if (errors[tid]) continue;
    try {
      Rng rng = master.Split(static_cast<uint64_t>(t));
      partial[tid].Merge(fn(t, rng));
    } catch (...) {
      errors[tid] = std::current_exception();
    }
  }

  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  Tally total;
  for (const Tally& p : partial) total.Merge(p);
  return total;
}

}  // namespace augtest
