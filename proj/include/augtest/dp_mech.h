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

#ifndef AUGTEST_DP_MECH_H_
#define AUGTEST_DP_MECH_H_

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "augtest/rng.h"

namespace augtest {

enum class Provenance { kAnalytic, kExhaustive };

struct SensitivityBound {
  double value = 0.0;
  Provenance provenance = Provenance::kAnalytic;
};

SensitivityBound AnalyticBound(double value);

class PrivacyBudget {
 public:
  explicit PrivacyBudget(double xi);
  double xi() const { return xi_; }

 private:
  double xi_;
};

// Inverse CDF of Lap(scale) at u in (0, 1).
double LaplaceInverseCdf(double u, double scale);
double LaplaceSample(double scale, Rng& rng);
double LaplaceDensity(double x, double scale);

// value + Lap(sensitivity / xi).
double Privatize(double value, const SensitivityBound& sensitivity,
                 const PrivacyBudget& budget, Rng& rng);

// A dataset as per-role count vectors. Every statistic passed to the
// exhaustive oracle must depend on samples only through these counts.
using CountDataset = std::vector<std::vector<int64_t>>;

struct RoleShape {
  int64_t domain = 0;
  int64_t size = 0;
};

struct DatasetFamily {
  std::vector<RoleShape> roles;
  // Empty means every dataset of the given shape is a member.
  std::function<bool(const CountDataset&)> member;
};

inline constexpr int64_t kMaxEnumDomain = 6;
inline constexpr int64_t kMaxEnumRoleSize = 8;
inline constexpr int64_t kMaxEnumDatasets = 5'000'000;

// All count vectors of length `domain` summing to `total`.
std::vector<std::vector<int64_t>> Compositions(int64_t domain, int64_t total);

// Number of datasets of the given shape (before membership filtering).
int64_t FamilySize(const DatasetFamily& family);

// Exact max |f(X) - f(X')| over member pairs differing by the replacement of
// a single sample in one role. Throws std::length_error past the caps.
SensitivityBound ExhaustiveSensitivity(
    const std::function<double(const CountDataset&)>& f,
    const DatasetFamily& family);

}  // namespace augtest

#endif  // AUGTEST_DP_MECH_H_
