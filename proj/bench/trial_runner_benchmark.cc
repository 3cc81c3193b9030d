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


#include <cstdint>

#include "augtest/closeness_tester.h"
#include "augtest/hard_instances.h"
#include "augtest/identity_tester.h"
#include "augtest/pmf.h"
#include "augtest/samples.h"
#include "augtest/trial_runner.h"
#include "benchmark/benchmark.h"

namespace augtest {
namespace {

TrialFn IdentityTrial() {
  static const IdentityTester* tester = new IdentityTester(IdentityInstance::Create(
      Pmf::Uniform(200), {AdvicePhat({200, 0.3, 0.0, 0.0}), 0.05}, 0.25,
      PrivacyBudget(0.5)));
  static const SampleOracle* source = new SampleOracle(Pmf::Uniform(200));
  return [](int64_t, Rng& rng) {
    Tally t;
    t.AddVerdict(tester->Run(*source, rng).outcome);
    return t;
  };
}

TrialFn ClosenessTrial() {
  static const SampleOracle* source = new SampleOracle(Pmf::Uniform(100));
  return [](int64_t, Rng& rng) {
    Tally t;
    t.AddVerdict(AugmentedClosenessTest(*source, *source,
                                        {Pmf::Uniform(100), 0.02}, 100, 0.5,
                                        1.0, rng)
                     .outcome);
    return t;
  };
}

void BM_IdentitySerial(benchmark::State& state) {
  const TrialFn fn = IdentityTrial();
  for (auto _ : state) {
    benchmark::DoNotOptimize(RunTrialsSerial(state.range(0), 1, fn));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_IdentityParallel(benchmark::State& state) {
  const TrialFn fn = IdentityTrial();
  for (auto _ : state) {
    benchmark::DoNotOptimize(RunTrialsParallel(state.range(0), 1, fn));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_ClosenessSerial(benchmark::State& state) {
  const TrialFn fn = ClosenessTrial();
  for (auto _ : state) {
    benchmark::DoNotOptimize(RunTrialsSerial(state.range(0), 1, fn));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_ClosenessParallel(benchmark::State& state) {
  const TrialFn fn = ClosenessTrial();
  for (auto _ : state) {
    benchmark::DoNotOptimize(RunTrialsParallel(state.range(0), 1, fn));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

BENCHMARK(BM_IdentitySerial)->Arg(2000)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_IdentityParallel)->Arg(2000)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_ClosenessSerial)->Arg(200)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_ClosenessParallel)->Arg(200)->Unit(benchmark::kMillisecond)->UseRealTime();

}  // namespace
}  // namespace augtest

BENCHMARK_MAIN();
