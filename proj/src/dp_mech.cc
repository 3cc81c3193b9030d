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

#include "augtest/dp_mech.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace augtest {

SensitivityBound AnalyticBound(double value) {
  if (!(value >= 0.0)) throw std::invalid_argument("sensitivity must be >= 0");
  return {value, Provenance::kAnalytic};
}

PrivacyBudget::PrivacyBudget(double xi) : xi_(xi) {
  if (!(xi > 0.0)) throw std::invalid_argument("privacy budget must be > 0");
}

double LaplaceInverseCdf(double u, double scale) {
  if (u < 0.5) return scale * std::log(2.0 * u);
  return -scale * std::log(2.0 * (1.0 - u));
}

double LaplaceSample(double scale, Rng& rng) {
  if (!(scale > 0.0)) throw std::invalid_argument("laplace: scale must be > 0");
  return LaplaceInverseCdf(rng.UniformOpen01(), scale);
}

double LaplaceDensity(double x, double scale) {
  return std::exp(-std::abs(x) / scale) / (2.0 * scale);
}

double Privatize(double value, const SensitivityBound& sensitivity,
                 const PrivacyBudget& budget, Rng& rng) {
  if (!(sensitivity.value > 0.0)) {
    throw std::invalid_argument("privatize: sensitivity must be > 0");
  }
  return value + LaplaceSample(sensitivity.value / budget.xi(), rng);
}

std::vector<std::vector<int64_t>> Compositions(int64_t domain, int64_t total) {
  std::vector<std::vector<int64_t>> out;
  if (domain <= 0) {
    if (total == 0) out.emplace_back();
    return out;
  }
  std::vector<int64_t> cur(domain, 0);
  cur[domain - 1] = total;
  // Enumerate in lexicographic order of the prefix.
  std::function<void(int64_t, int64_t)> rec = [&](int64_t pos, int64_t left) {
    if (pos == domain - 1) {
      cur[pos] = left;
      out.push_back(cur);
      return;
    }
    for (int64_t c = 0; c <= left; ++c) {
      cur[pos] = c;
      rec(pos + 1, left - c);
    }
  };
  rec(0, total);
  return out;
}

namespace {

int64_t Binomial(int64_t n, int64_t k) {
  if (k < 0 || k > n) return 0;
  int64_t r = 1;
  for (int64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

int64_t FamilySize(const DatasetFamily& family) {
  int64_t total = 1;
  for (const RoleShape& r : family.roles) {
    const int64_t c = Binomial(r.size + r.domain - 1, r.domain - 1);
    if (c > 0 && total > std::numeric_limits<int64_t>::max() / c) {
      return std::numeric_limits<int64_t>::max();
    }
    total *= std::max<int64_t>(c, 1);
  }
  return total;
}

SensitivityBound ExhaustiveSensitivity(
    const std::function<double(const CountDataset&)>& f,
    const DatasetFamily& family) {
  for (const RoleShape& r : family.roles) {
    if (r.domain < 1 || r.domain > kMaxEnumDomain || r.size < 0 ||
        r.size > kMaxEnumRoleSize) {
      throw std::length_error("exhaustive sensitivity: role exceeds caps");
    }
  }
  if (FamilySize(family) > kMaxEnumDatasets) {
    throw std::length_error("exhaustive sensitivity: family too large");
  }
  const size_t nroles = family.roles.size();
  std::vector<std::vector<std::vector<int64_t>>> per_role(nroles);
  for (size_t r = 0; r < nroles; ++r) {
    per_role[r] = Compositions(family.roles[r].domain, family.roles[r].size);
  }
  auto is_member = [&](const CountDataset& d) {
    return !family.member || family.member(d);
  };

  double best = 0.0;
  CountDataset x(nroles);
  std::vector<size_t> idx(nroles, 0);
  while (true) {
    for (size_t r = 0; r < nroles; ++r) x[r] = per_role[r][idx[r]];
    if (is_member(x)) {
      const double fx = f(x);
      // Each unordered neighbour pair is visited from both ends; moving one
      // unit from a to b covers every single-sample replacement.
      for (size_t r = 0; r < nroles; ++r) {
        const int64_t m = family.roles[r].domain;
        for (int64_t a = 0; a < m; ++a) {
          if (x[r][a] == 0) continue;
          for (int64_t b = 0; b < m; ++b) {
            if (b == a) continue;
            CountDataset y = x;
            --y[r][a];
            ++y[r][b];
            if (!is_member(y)) continue;
            best = std::max(best, std::abs(fx - f(y)));
          }
        }
      }
    }
    size_t r = 0;
    while (r < nroles && ++idx[r] == per_role[r].size()) {
      idx[r] = 0;
      ++r;
    }
    if (r == nroles) break;
  }
  return {best, Provenance::kExhaustive};
}

}  // namespace augtest
