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

#ifndef AUGTEST_IDENTITY_TESTER_H_
#define AUGTEST_IDENTITY_TESTER_H_

#include <cstdint>
#include <optional>
#include <vector>

#include "augtest/dp_mech.h"
#include "augtest/outcome.h"
#include "augtest/pmf.h"
#include "augtest/rng.h"
#include "augtest/samples.h"

namespace augtest {

struct AdviceSpec {
  Pmf p_hat;
  double alpha = 0.0;
};

// Public inputs of an identity test against reference q.
class IdentityInstance {
 public:
  static IdentityInstance Create(Pmf q, AdviceSpec advice, double eps,
                                 PrivacyBudget budget);

  int64_t n() const { return q_.n(); }
  const Pmf& q() const { return q_; }
  const AdviceSpec& advice() const { return advice_; }
  double alpha() const { return advice_.alpha; }
  double eps() const { return eps_; }
  const PrivacyBudget& budget() const { return budget_; }
  double xi() const { return budget_.xi(); }
  double eta() const { return eta_; }
  const std::vector<int64_t>& scheffe() const { return scheffe_; }

 private:
  IdentityInstance(Pmf q, AdviceSpec advice, double eps, PrivacyBudget budget)
      : q_(std::move(q)),
        advice_(std::move(advice)),
        eps_(eps),
        budget_(budget) {}

  Pmf q_;
  AdviceSpec advice_;
  double eps_;
  PrivacyBudget budget_;
  double eta_ = 0.0;
  std::vector<int64_t> scheffe_;
};

// {i : p_hat_i < q_i}.
std::vector<int64_t> ScheffeSet(const Pmf& p_hat, const Pmf& q);

// Fraction of samples falling in S.
double SigmaStatistic(const SampleMultiset& samples,
                      const std::vector<int64_t>& S);

// ceil(128 / g^2) + ceil(24 / (g * xi)) with g = eta - alpha.
int64_t AugmentedIdentityBudget(double gap, double xi);

double AugmentedIdentityCost(double gap, double xi);
double BaselineIdentityCost(int64_t n, double eps, double xi);

Branch BranchSelect(const IdentityInstance& instance);

struct IdentityResult {
  Outcome outcome = Outcome::kBot;
  Branch branch = Branch::kAugmented;
  int64_t s = 0;
  double released = 0.0;
};

IdentityResult AugmentedIdentityTest(const IdentityInstance& instance,
                                     const SampleOracle& source, Rng& rng);

inline constexpr double kBaselineIdentityConstant = 2.0;
inline constexpr int64_t kBaselineCalibrationReps = 2000;
inline constexpr uint64_t kBaselineCalibrationSeed = 0x5eedca11b7a7e5ULL;
inline constexpr double kBaselineNullQuantile = 0.95;

int64_t BaselineIdentityBudget(int64_t n, double eps, double xi,
                               double constant = kBaselineIdentityConstant);

// T = sum_i |N_i - s q_i|.
double L1Statistic(const SampleMultiset& samples, const Pmf& q);

// Non-augmented private identity tester. The REJECT threshold is the 0.95
// quantile of T + Lap(2/xi) under q, simulated from public inputs only.
class BaselineIdentityTester {
 public:
  BaselineIdentityTester(Pmf q, double eps, PrivacyBudget budget,
                         double constant = kBaselineIdentityConstant,
                         int64_t calibration_reps = kBaselineCalibrationReps,
                         uint64_t calibration_seed = kBaselineCalibrationSeed);

  int64_t s() const { return s_; }
  double threshold() const { return threshold_; }
  IdentityResult Test(const SampleOracle& source, Rng& rng) const;

 private:
  Pmf q_;
  PrivacyBudget budget_;
  int64_t s_;
  double threshold_ = 0.0;
};

// Branch selection plus whichever tester it picks, reusable across trials.
class IdentityTester {
 public:
  explicit IdentityTester(IdentityInstance instance);

  Branch branch() const { return branch_; }
  int64_t s() const;
  IdentityResult Run(const SampleOracle& source, Rng& rng) const;
  const IdentityInstance& instance() const { return instance_; }

 private:
  IdentityInstance instance_;
  Branch branch_;
  std::optional<BaselineIdentityTester> baseline_;
};

}  // namespace augtest

#endif  // AUGTEST_IDENTITY_TESTER_H_
