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

#include "augtest/flattening.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "augtest/errors.h"

namespace augtest {
namespace {

int64_t Choose2(int64_t x) {
  if (x < 2) return 0;
  if (x > 3'000'000'000LL) throw std::overflow_error("choose2: count too large");
  return x * (x - 1) / 2;
}

}  // namespace

std::vector<int64_t> Step1Buckets(const Pmf& p_hat) {
  const double n = static_cast<double>(p_hat.n());
  std::vector<int64_t> b(p_hat.n());
  for (int64_t i = 0; i < p_hat.n(); ++i) {
    b[i] = static_cast<int64_t>(std::ceil(n * p_hat[i])) + 1;
  }
  return b;
}

int64_t Level1Size(const std::vector<int64_t>& level1) {
  int64_t total = 0;
  for (int64_t b : level1) total += b;
  return total;
}

Bucketing::Bucketing(std::vector<int64_t> level1,
                     std::vector<int64_t> flattening_counts)
    : level1_(std::move(level1)), counts_(std::move(flattening_counts)) {
  offsets_.assign(level1_.size() + 1, 0);
  for (size_t i = 0; i < level1_.size(); ++i) {
    if (level1_[i] < 1) throw std::invalid_argument("bucketing: b_i < 1");
    offsets_[i + 1] = offsets_[i] + level1_[i];
  }
  if (static_cast<int64_t>(counts_.size()) != offsets_.back()) {
    throw std::invalid_argument("bucketing: counts do not match level-1 size");
  }
  source_.resize(counts_.size());
  for (size_t i = 0; i < level1_.size(); ++i) {
    for (int64_t e = offsets_[i]; e < offsets_[i + 1]; ++e) source_[e] = i;
  }
  for (int64_t c : counts_) {
    if (c < 0) throw std::invalid_argument("bucketing: negative count");
    flattening_size_ += c;
  }
}

Bucketing Step2Buckets(const std::vector<int64_t>& level1,
                       const SampleMultiset& F) {
  if (F.domain() != Level1Size(level1)) {
    throw std::invalid_argument("step2: F is not over the level-1 domain");
  }
  return Bucketing(level1, F.counts());
}

Pmf FlattenLevel1(const Pmf& p, const std::vector<int64_t>& level1) {
  if (static_cast<int64_t>(level1.size()) != p.n()) {
    throw std::invalid_argument("flatten: domain mismatch");
  }
  std::vector<double> v;
  v.reserve(Level1Size(level1));
  for (int64_t i = 0; i < p.n(); ++i) {
    for (int64_t j = 0; j < level1[i]; ++j) {
      v.push_back(p[i] / static_cast<double>(level1[i]));
    }
  }
  return Pmf::Create(std::move(v));
}

Pmf FlattenLevel2(const Pmf& p, const Bucketing& bucketing) {
  if (bucketing.n() != p.n()) throw std::invalid_argument("flatten: domain mismatch");
  std::vector<double> v;
  v.reserve(bucketing.n_double_prime());
  for (int64_t e = 0; e < bucketing.level1_size(); ++e) {
    const int64_t i = bucketing.source(e);
    const double mass = p[i] / static_cast<double>(bucketing.level1()[i]);
    const int64_t b2 = bucketing.level2(e);
    for (int64_t m = 0; m < b2; ++m) {
      v.push_back(mass / static_cast<double>(b2));
    }
  }
  return Pmf::Create(std::move(v));
}

double FlattenedL2True(const Pmf& p, const Bucketing& bucketing) {
  if (bucketing.n() != p.n()) throw std::invalid_argument("flatten: domain mismatch");
  long double total = 0.0L;
  for (int64_t e = 0; e < bucketing.level1_size(); ++e) {
    const int64_t i = bucketing.source(e);
    const long double mass =
        static_cast<long double>(p[i]) / bucketing.level1()[i];
    total += mass * mass / bucketing.level2(e);
  }
  return static_cast<double>(total);
}

SampleMultiset FlattenSamples(const SampleMultiset& x,
                              const std::vector<int64_t>& level1, Rng& rng) {
  if (x.domain() != static_cast<int64_t>(level1.size())) {
    throw std::invalid_argument("flatten samples: domain mismatch");
  }
  std::vector<int64_t> offsets(level1.size() + 1, 0);
  for (size_t i = 0; i < level1.size(); ++i) {
    offsets[i + 1] = offsets[i] + level1[i];
  }
  const int64_t size = offsets.back();
  if (x.has_items()) {
    std::vector<int64_t> items(x.items().size());
    for (size_t t = 0; t < items.size(); ++t) {
      const int64_t i = x.items()[t];
      items[t] = offsets[i] +
                 static_cast<int64_t>(rng.UniformInt(level1[i]));
    }
    return SampleMultiset::FromItems(size, std::move(items));
  }
  std::vector<int64_t> counts(size, 0);
  for (size_t i = 0; i < level1.size(); ++i) {
    int64_t left = x.count(i);
    const int64_t b = level1[i];
    for (int64_t j = 0; j < b - 1 && left > 0; ++j) {
      const int64_t c =
          DrawBinomial(left, 1.0 / static_cast<double>(b - j), rng);
      counts[offsets[i] + j] = c;
      left -= c;
    }
    counts[offsets[i] + b - 1] += left;
  }
  return SampleMultiset::FromCounts(size, std::move(counts));
}

double LbarFromCounts(const std::vector<int64_t>& ell_counts,
                      const std::vector<int64_t>& flattening_counts) {
  if (ell_counts.size() != flattening_counts.size()) {
    throw std::invalid_argument("lbar: count vectors differ in length");
  }
  int64_t ell = 0;
  for (int64_t c : ell_counts) ell += c;
  if (ell < 2) throw std::invalid_argument("lbar: fewer than 2 samples");
  long double total = 0.0L;
  for (size_t e = 0; e < ell_counts.size(); ++e) {
    const int64_t pairs = Choose2(ell_counts[e]);
    if (pairs == 0) continue;
    total += static_cast<long double>(pairs) / (flattening_counts[e] + 1);
  }
  return static_cast<double>(total / Choose2(ell));
}

double LbarStatistic(const SampleMultiset& E, const Bucketing& bucketing) {
  if (E.domain() != bucketing.level1_size()) {
    throw std::invalid_argument("lbar: E is not over the level-1 domain");
  }
  return LbarFromCounts(E.counts(), bucketing.flattening_counts());
}

double BalanceParameter(int64_t n, double delta_prime) {
  if (!(delta_prime > 0.0 && delta_prime < 1.0)) {
    throw std::invalid_argument("balance: delta' must lie in (0, 1)");
  }
  return 12.0 * std::log(static_cast<double>(n) / delta_prime);
}

BalanceParams BalanceParams::Of(double A, const DatasetSplit& split) {
  return {A, split.F.size(), split.E.size()};
}

SensitivityBound LbarSensitivityBound(const BalanceParams& params) {
  if (params.A < 2.0) throw std::invalid_argument("lbar bound: A < 2");
  if (params.k < 1 || params.ell < 2) {
    throw std::invalid_argument("lbar bound: needs k >= 1 and ell >= 2");
  }
  const double A = params.A;
  const double k = static_cast<double>(params.k);
  const double l = static_cast<double>(params.ell);
  const double d = l * l - l;
  return AnalyticBound(2.0 * (4.0 * A * A * l * l / (k * k * d) +
                              2.0 * A * l / (k * d)));
}

int64_t RequiredCopies(int64_t c, int64_t role_size, int64_t f_size, double A) {
  if (c == 0 || role_size == 0) return 0;
  const long double lhs = static_cast<long double>(c) * f_size;
  const long double unit = static_cast<long double>(A) * role_size;
  auto m = static_cast<int64_t>(std::ceil(lhs / unit));
  while (m > 0 && lhs <= unit * (m - 1)) --m;
  while (lhs > unit * m) ++m;
  return m;
}

bool RoleBalanced(const std::vector<int64_t>& role, int64_t role_size,
                  const std::vector<int64_t>& f_counts, int64_t f_size,
                  double A) {
  if (role_size == 0 || f_size == 0) return true;
  for (size_t e = 0; e < role.size(); ++e) {
    if (RequiredCopies(role[e], role_size, f_size, A) > f_counts[e] + 1) {
      return false;
    }
  }
  return true;
}

bool InBalancedSet(const DatasetSplit& split, double A) {
  const auto& f = split.F.counts();
  const int64_t k = split.F.size();
  for (const SampleMultiset* r : {&split.E, &split.Tp, &split.Tq}) {
    if (r->size() == 0) continue;
    if (r->domain() != split.F.domain()) {
      throw std::invalid_argument("balance: role domain differs from F");
    }
    if (!RoleBalanced(r->counts(), r->size(), f, k, A)) return false;
  }
  return true;
}

DatasetSplit BalanceMap(const DatasetSplit& split, double A, Rng& rng) {
  if (A < 2.0) throw std::invalid_argument("balance map: A < 2");
  const int64_t k = split.F.size();
  const int64_t m = split.F.domain();
  if (k == 0) return split;
  std::vector<int64_t> required(m, 0);
  for (const SampleMultiset* r : {&split.E, &split.Tp, &split.Tq}) {
    if (r->size() == 0) continue;
    if (r->domain() != m) {
      throw std::invalid_argument("balance: role domain differs from F");
    }
    for (int64_t e = 0; e < m; ++e) {
      required[e] = std::max(required[e],
                             RequiredCopies(r->count(e), r->size(), k, A));
    }
  }
  std::vector<int64_t> extra(m, 0);
  std::vector<int64_t> avail(m, 0);
  int64_t total_extra = 0;
  int64_t total_avail = 0;
  for (int64_t e = 0; e < m; ++e) {
    const int64_t ke = split.F.count(e);
    extra[e] = std::max<int64_t>(required[e] - ke - 1, 0);
    avail[e] = std::min(ke, std::max<int64_t>(ke + 1 - required[e], 0));
    total_extra += extra[e];
    total_avail += avail[e];
  }
  if (total_extra == 0) return split;
  if (total_extra > total_avail) {
    throw InvariantViolation("balance map: not enough replaceable slots");
  }

  DatasetSplit out = split;
  if (split.F.has_items()) {
    std::vector<int64_t> items = split.F.items();
    std::vector<int64_t> marked(m, 0);
    std::vector<size_t> slots;
    slots.reserve(total_extra);
    for (size_t t = 0; t < items.size() &&
                       static_cast<int64_t>(slots.size()) < total_extra;
         ++t) {
      const int64_t e = items[t];
      if (marked[e] < avail[e]) {
        ++marked[e];
        slots.push_back(t);
      }
    }
    std::vector<int64_t> replacements;
    replacements.reserve(total_extra);
    for (int64_t e = 0; e < m; ++e) {
      replacements.insert(replacements.end(), extra[e], e);
    }
    for (size_t t = replacements.size(); t > 1; --t) {
      std::swap(replacements[t - 1], replacements[rng.UniformInt(t)]);
    }
    for (size_t t = 0; t < slots.size(); ++t) items[slots[t]] = replacements[t];
    out.F = SampleMultiset::FromItems(m, std::move(items));
    return out;
  }

  std::vector<int64_t> counts = split.F.counts();
  int64_t left = total_avail;
  for (int64_t t = 0; t < total_extra; ++t) {
    auto u = static_cast<int64_t>(rng.UniformInt(left));
    int64_t e = 0;
    while (u >= avail[e]) u -= avail[e++];
    --avail[e];
    --counts[e];
    --left;
  }
  for (int64_t e = 0; e < m; ++e) counts[e] += extra[e];
  out.F = SampleMultiset::FromCounts(m, std::move(counts));
  return out;
}

double L2Threshold(double alpha, int64_t k, int64_t n) {
  return 30.0 * (2.0 * alpha / static_cast<double>(k) +
                 4.0 / static_cast<double>(n));
}

L2TestResult PrivateL2Test(const DatasetSplit& split,
                           const Bucketing& bucketing, double A, double alpha,
                           int64_t k, int64_t n,
                           const PrivacyBudget& stage_budget, Rng& rng) {
  if (bucketing.flattening_counts() != split.F.counts()) {
    throw std::invalid_argument("l2 test: bucketing does not match F");
  }
  L2TestResult r;
  r.threshold = L2Threshold(alpha, k, n);
  if (split.E.size() < 2 || split.F.size() == 0) {
    r.degenerate = true;
    r.pass = false;
    r.l_bar = std::numeric_limits<double>::quiet_NaN();
    r.l_tilde = std::numeric_limits<double>::infinity();
    return r;
  }
  if (!RoleBalanced(split.E.counts(), split.E.size(), split.F.counts(),
                    split.F.size(), A)) {
    throw std::invalid_argument("l2 test: input is not balanced");
  }
  r.l_bar = LbarStatistic(split.E, bucketing);
  r.sensitivity =
      LbarSensitivityBound(BalanceParams::Of(A, split)).value;
  r.l_tilde = Privatize(r.l_bar, AnalyticBound(4.0 * r.sensitivity),
                        stage_budget, rng);
  r.pass = !(r.l_tilde > r.threshold);
  return r;
}

}  // namespace augtest
