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

#ifndef AUGTEST_FLATTENING_H_
#define AUGTEST_FLATTENING_H_

#include <cstdint>
#include <vector>

#include "augtest/dp_mech.h"
#include "augtest/pmf.h"
#include "augtest/rng.h"
#include "augtest/samples.h"

namespace augtest {

// b_i = ceil(n * p_hat_i) + 1.
std::vector<int64_t> Step1Buckets(const Pmf& p_hat);

// Two-level bucket structure. Level-1 element e = (i, j) has flat index
// offsets()[i] + j and is split into k_e + 1 level-2 buckets.
class Bucketing {
 public:
  Bucketing(std::vector<int64_t> level1, std::vector<int64_t> flattening_counts);

  int64_t n() const { return static_cast<int64_t>(level1_.size()); }
  int64_t level1_size() const { return offsets_.back(); }
  const std::vector<int64_t>& level1() const { return level1_; }
  const std::vector<int64_t>& offsets() const { return offsets_; }
  const std::vector<int64_t>& flattening_counts() const { return counts_; }
  int64_t level2(int64_t e) const { return counts_[e] + 1; }
  // Original domain element of level-1 element e.
  int64_t source(int64_t e) const { return source_[e]; }
  int64_t flattening_size() const { return flattening_size_; }
  // |F| + sum_i b_i.
  int64_t n_double_prime() const { return flattening_size_ + offsets_.back(); }

 private:
  std::vector<int64_t> level1_;
  std::vector<int64_t> offsets_;
  std::vector<int64_t> source_;
  std::vector<int64_t> counts_;
  int64_t flattening_size_ = 0;
};

int64_t Level1Size(const std::vector<int64_t>& level1);

// b_{i,j} = k_{i,j} + 1 where k counts F over the level-1 domain.
Bucketing Step2Buckets(const std::vector<int64_t>& level1,
                       const SampleMultiset& F);

// p'_{(i,j)} = p_i / b_i.
Pmf FlattenLevel1(const Pmf& p, const std::vector<int64_t>& level1);
// p''_{(i,j,m)} = p_i / (b_i * b_{i,j}).
Pmf FlattenLevel2(const Pmf& p, const Bucketing& bucketing);
// sum_{i,j} (p_i / b_i)^2 / b_{i,j}.
double FlattenedL2True(const Pmf& p, const Bucketing& bucketing);

// Maps each sample i to (i, j) with j uniform in [b_i].
SampleMultiset FlattenSamples(const SampleMultiset& x,
                              const std::vector<int64_t>& level1, Rng& rng);

// Disjoint sample roles over the level-1 domain.
struct DatasetSplit {
  SampleMultiset F;
  SampleMultiset E;
  SampleMultiset Tp;
  SampleMultiset Tq;
};

// Closed form of the collision statistic averaged over bucket assignments:
// sum_e C(l_e, 2) / (k_e + 1), divided by C(l, 2).
double LbarFromCounts(const std::vector<int64_t>& ell_counts,
                      const std::vector<int64_t>& flattening_counts);
double LbarStatistic(const SampleMultiset& E, const Bucketing& bucketing);

// 12 ln(n / delta_prime).
double BalanceParameter(int64_t n, double delta_prime);

struct BalanceParams {
  double A = 2.0;
  int64_t k = 0;    // |F|
  int64_t ell = 0;  // |E|

  static BalanceParams Of(double A, const DatasetSplit& split);
};

// 2 [4 A^2 l^2 / (k^2 (l^2 - l)) + 2 A l / (k (l^2 - l))].
SensitivityBound LbarSensitivityBound(const BalanceParams& params);

// c_e / (k_e + 1) <= A * role_size / f_size for every e.
bool RoleBalanced(const std::vector<int64_t>& role, int64_t role_size,
                  const std::vector<int64_t>& f_counts, int64_t f_size,
                  double A);
// Every non-empty role among E, Tp, Tq is balanced against F.
bool InBalancedSet(const DatasetSplit& split, double A);

// Smallest m with c * f_size <= A * role_size * m.
int64_t RequiredCopies(int64_t c, int64_t role_size, int64_t f_size, double A);

// Replaces flattening samples so that the split lands in the balanced set.
// Identity on balanced inputs. Throws InvariantViolation when infeasible.
DatasetSplit BalanceMap(const DatasetSplit& split, double A, Rng& rng);

// 30 (2 alpha / k + 4 / n).
double L2Threshold(double alpha, int64_t k, int64_t n);

struct L2TestResult {
  bool pass = false;
  bool degenerate = false;
  double l_bar = 0.0;
  double l_tilde = 0.0;
  double sensitivity = 0.0;
  double threshold = 0.0;
};

// Releases L~ = L-bar + Lap(4 * Delta / xi_stage); FAIL iff L~ > threshold.
L2TestResult PrivateL2Test(const DatasetSplit& split,
                           const Bucketing& bucketing, double A, double alpha,
                           int64_t k, int64_t n,
                           const PrivacyBudget& stage_budget, Rng& rng);

}  // namespace augtest

#endif  // AUGTEST_FLATTENING_H_
