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

#ifndef AUGTEST_CLOSENESS_TESTER_H_
#define AUGTEST_CLOSENESS_TESTER_H_

#include <cstdint>
#include <vector>

#include "augtest/dp_mech.h"
#include "augtest/flattening.h"
#include "augtest/identity_tester.h"
#include "augtest/outcome.h"
#include "augtest/pmf.h"
#include "augtest/rng.h"
#include "augtest/samples.h"

namespace augtest {

inline constexpr double kDeltaPrime = 0.05;
inline constexpr double kL2C1 = 1280.0;
inline constexpr double kL2C2 = 1280.0;
inline constexpr double kCoreNoiseMargin = 6.0;
inline constexpr int64_t kOverdrawFactor = 10;

struct ClosenessSchedule {
  Branch branch = Branch::kAugmented;
  int64_t k = 0;    // flattening mean per source
  int64_t ell = 0;  // estimation mean
  int64_t s = 0;    // test mean per source
  double A = 2.0;
  double alpha = 0.0;
  double xi_l2 = 0.0;
  double xi_core = 0.0;
};

bool ClosenessUsesBaseline(int64_t n, double eps, double xi);

// Unit-constant rate term
// max(n^{2/3} a^{1/3} / e^{4/3}, sqrt n / e^2, sqrt n / (e sqrt xi),
//     sqrt n ln n / sqrt xi, ln^2 n / xi).
double ClosenessRateK(int64_t n, double eps, double alpha, double xi);

// Fixed point of s = (n+k)/e^2 sqrt(2a/k + 4/n) + sqrt((n+k)(s+k)/k)/(e sqrt xi).
int64_t ClosenessTestBudget(int64_t n, int64_t k, double eps, double alpha,
                            double xi);

// k min(k/A^2, l/A) >= C1 (k+n)/xi_eff and l >= C2 sqrt(k+n).
bool L2PreconditionsHold(int64_t k, int64_t ell, int64_t n, double A,
                         double xi_eff);
// Smallest k with L2PreconditionsHold(k, k, ...).
int64_t L2BudgetFloor(int64_t n, double A, double xi_eff);

// max(4B, 2B^2) with B = min(A * max(|Tp|,|Tq|) / |F|, max(|Tp|,|Tq|)).
double ZbarSensitivity(int64_t f_size, int64_t tp_size, int64_t tq_size,
                       double A);

// 2 s^2 eps^2 / n''.
double CoreThreshold(int64_t s, double eps, int64_t n_double_prime);

// Expected-size check that the core Laplace scale is at most
// threshold / kCoreNoiseMargin.
bool CoreNoiseAdequate(int64_t n, int64_t k, int64_t s, double eps, double A,
                       double xi_core);

ClosenessSchedule Schedule(int64_t n, double eps, double alpha, double xi,
                           bool force_augmented = false);

double BaselineClosenessCost(int64_t n, double eps, double xi);
int64_t BaselineClosenessBudget(int64_t n, double eps, double xi);
ClosenessSchedule BaselineClosenessSchedule(int64_t n, double eps, double xi);

struct ZbarValue {
  double value = 0.0;
  SensitivityBound sensitivity;
};

// sum_e ((x_e - y_e)^2 - x_e - y_e) / (k_e + 1).
double ZbarFromCounts(const std::vector<int64_t>& x,
                      const std::vector<int64_t>& y,
                      const std::vector<int64_t>& flattening_counts);
ZbarValue ZbarStatistic(const SampleMultiset& Tp, const SampleMultiset& Tq,
                        const Bucketing& bucketing, double A);

struct CoreResult {
  Outcome outcome = Outcome::kReject;
  double z_bar = 0.0;
  double z_tilde = 0.0;
  double threshold = 0.0;
  double sensitivity = 0.0;
};

// ACCEPT iff Z-bar + Lap(4 Delta / xi_stage) <= threshold.
CoreResult CorePrivateClosenessTest(const DatasetSplit& split,
                                    const Bucketing& bucketing,
                                    const ClosenessSchedule& schedule,
                                    double eps,
                                    const PrivacyBudget& stage_budget,
                                    Rng& rng);

// k_hat + ell_hat > kOverdrawFactor (k + ell), with k_hat = k_hat_p + k_hat_q.
bool Overdrawn(int64_t k_hat, int64_t ell_hat, int64_t k, int64_t ell);

struct ClosenessResult {
  Outcome outcome = Outcome::kReject;
  ClosenessSchedule schedule;
  bool overdraw = false;
  bool l2_ran = false;
  L2TestResult l2;
  CoreResult core;
  int64_t replaced = 0;
};

ClosenessResult AugmentedClosenessTest(const SampleOracle& p_source,
                                       const SampleOracle& q_source,
                                       const AdviceSpec& advice, int64_t n,
                                       double eps, double xi, Rng& rng);

ClosenessResult BaselinePrivateClosenessTest(const SampleOracle& p_source,
                                             const SampleOracle& q_source,
                                             int64_t n, double eps, double xi,
                                             Rng& rng);

// Shared pipeline under a fixed schedule. The l2 stage runs iff
// schedule.branch is kAugmented.
ClosenessResult RunClosenessPipeline(const SampleOracle& p_source,
                                     const SampleOracle& q_source,
                                     const Pmf& p_hat,
                                     const ClosenessSchedule& schedule,
                                     double eps, Rng& rng);

struct L2StageSample {
  L2TestResult result;
  double truth = 0.0;
};

// One draw of the l2 stage alone: flatten with p_hat, draw F from p and q,
// E from p, balance, and release L~. truth is the flattened l2 norm of p
// under the realized (mapped) F.
L2StageSample L2StageTrial(const Pmf& p, const Pmf& q, const Pmf& p_hat,
                           const ClosenessSchedule& schedule, int64_t n,
                           Rng& rng);

}  // namespace augtest

#endif  // AUGTEST_CLOSENESS_TESTER_H_
