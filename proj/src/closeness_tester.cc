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

#include "augtest/closeness_tester.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "augtest/errors.h"

namespace augtest {
namespace {

void CheckInputs(int64_t n, double eps, double alpha, double xi) {
  if (n < 2) throw std::invalid_argument("closeness: n must be >= 2");
  if (!(eps > 0.0 && eps <= 1.0)) {
    throw std::invalid_argument("closeness: eps must lie in (0, 1]");
  }
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw std::invalid_argument("closeness: alpha must lie in [0, 1]");
  }
  if (!(xi > 0.0)) throw std::invalid_argument("closeness: xi must be > 0");
}

int64_t CeilToInt(double x) {
  if (!(x < 4.0e18)) throw std::overflow_error("closeness: budget overflow");
  return static_cast<int64_t>(std::ceil(x));
}

// Grows k (when the noise is driven by B > 1) or s until the core noise is
// adequate. s stays within 100 k.
void EnforceCoreNoise(int64_t n, double eps, ClosenessSchedule& sched) {
  for (int iter = 0; iter < 200; ++iter) {
    if (CoreNoiseAdequate(n, sched.k, sched.s, eps, sched.A, sched.xi_core) &&
        sched.s <= 100 * sched.k) {
      return;
    }
    const double B = sched.A * static_cast<double>(sched.s) /
                     (2.0 * static_cast<double>(sched.k));
    if (B > 1.0 || sched.s * 2 > 100 * sched.k) {
      sched.k *= 2;
      if (sched.ell > 0) sched.ell = sched.k;
    } else {
      sched.s *= 2;
    }
  }
  throw InvariantViolation("schedule: core noise margin not reachable");
}

}  // namespace

bool ClosenessUsesBaseline(int64_t n, double eps, double xi) {
  const double nd = static_cast<double>(n);
  return eps < std::pow(nd, -0.25) || eps * eps * xi < 1.0 / nd;
}

double ClosenessRateK(int64_t n, double eps, double alpha, double xi) {
  const double nd = static_cast<double>(n);
  const double rn = std::sqrt(nd);
  const double ln = std::log(nd);
  return std::max({std::pow(nd, 2.0 / 3.0) * std::cbrt(alpha) /
                       std::pow(eps, 4.0 / 3.0),
                   rn / (eps * eps), rn / (eps * std::sqrt(xi)),
                   rn * ln / std::sqrt(xi), ln * ln / xi});
}

int64_t ClosenessTestBudget(int64_t n, int64_t k, double eps, double alpha,
                            double xi) {
  const double nk = static_cast<double>(n + k);
  const double kd = static_cast<double>(k);
  const double first = nk / (eps * eps) *
                       std::sqrt(2.0 * alpha / kd + 4.0 / static_cast<double>(n));
  double s = kd;
  for (int iter = 0; iter < 10000; ++iter) {
    const double next =
        first + std::sqrt(nk * (s + kd) / kd) / (eps * std::sqrt(xi));
    const bool done = std::abs(next - s) < 1.0;
    s = next;
    if (done) break;
  }
  return CeilToInt(s);
}

bool L2PreconditionsHold(int64_t k, int64_t ell, int64_t n, double A,
                         double xi_eff) {
  const long double kd = k;
  const long double ld = ell;
  const long double lhs = kd * std::min(kd / (A * A), ld / A);
  const long double rhs = kL2C1 * (kd + n) / xi_eff;
  return lhs >= rhs && ld >= kL2C2 * std::sqrt(kd + n);
}

int64_t L2BudgetFloor(int64_t n, double A, double xi_eff) {
  int64_t hi = 1;
  while (!L2PreconditionsHold(hi, hi, n, A, xi_eff)) {
    if (hi > (int64_t{1} << 60)) throw std::overflow_error("l2 floor overflow");
    hi *= 2;
  }
  int64_t lo = hi / 2;
  while (hi - lo > 1) {
    const int64_t mid = lo + (hi - lo) / 2;
    (L2PreconditionsHold(mid, mid, n, A, xi_eff) ? hi : lo) = mid;
  }
  return hi;
}

double ZbarSensitivity(int64_t f_size, int64_t tp_size, int64_t tq_size,
                       double A) {
  const double t = static_cast<double>(std::max(tp_size, tq_size));
  if (t == 0.0) return 0.0;
  if (f_size == 0) return std::numeric_limits<double>::infinity();
  const double b = std::min(A * t / static_cast<double>(f_size), t);
  return std::max(4.0 * b, 2.0 * b * b);
}

double CoreThreshold(int64_t s, double eps, int64_t n_double_prime) {
  const double sd = static_cast<double>(s);
  return 2.0 * sd * sd * eps * eps / static_cast<double>(n_double_prime);
}

bool CoreNoiseAdequate(int64_t n, int64_t k, int64_t s, double eps, double A,
                       double xi_core) {
  const double scale = 4.0 * ZbarSensitivity(2 * k, s, s, A) / xi_core;
  return CoreThreshold(s, eps, 3 * n + 2 * k) >= kCoreNoiseMargin * scale;
}

ClosenessSchedule Schedule(int64_t n, double eps, double alpha, double xi,
                           bool force_augmented) {
  CheckInputs(n, eps, alpha, xi);
  if (!force_augmented && ClosenessUsesBaseline(n, eps, xi)) {
    return BaselineClosenessSchedule(n, eps, xi);
  }
  ClosenessSchedule sched;
  sched.branch = Branch::kAugmented;
  sched.A = BalanceParameter(n, kDeltaPrime);
  sched.alpha = alpha;
  sched.xi_l2 = xi / 2.0;
  sched.xi_core = xi / 2.0;
  // Composition through the balance map costs a factor 4 on the l2 stage.
  const double xi_eff = sched.xi_l2 / 4.0;
  sched.k = std::max(CeilToInt(ClosenessRateK(n, eps, alpha, xi)),
                     L2BudgetFloor(n, sched.A, xi_eff));
  sched.ell = sched.k;
  sched.s = ClosenessTestBudget(n, sched.k, eps, alpha, xi);
  EnforceCoreNoise(n, eps, sched);
  if (sched.ell != sched.k || !L2PreconditionsHold(sched.k, sched.ell, n,
                                                   sched.A, xi_eff)) {
    throw InvariantViolation("schedule: l2 preconditions broken");
  }
  return sched;
}

double BaselineClosenessCost(int64_t n, double eps, double xi) {
  const double nd = static_cast<double>(n);
  const double e43 = std::pow(eps, 4.0 / 3.0);
  return std::pow(nd, 2.0 / 3.0) / e43 + std::sqrt(nd) / (eps * eps) +
         1.0 / (eps * xi) + std::sqrt(nd) / (eps * std::sqrt(xi)) +
         std::cbrt(nd) / (e43 * std::pow(xi, 2.0 / 3.0));
}

int64_t BaselineClosenessBudget(int64_t n, double eps, double xi) {
  return CeilToInt(BaselineClosenessCost(n, eps, xi));
}

ClosenessSchedule BaselineClosenessSchedule(int64_t n, double eps, double xi) {
  CheckInputs(n, eps, 1.0, xi);
  ClosenessSchedule sched;
  sched.branch = Branch::kBaseline;
  sched.A = BalanceParameter(n, kDeltaPrime);
  sched.alpha = 1.0;
  sched.xi_l2 = 0.0;
  sched.xi_core = xi;
  sched.k = BaselineClosenessBudget(n, eps, xi);
  sched.ell = 0;
  sched.s = sched.k;
  EnforceCoreNoise(n, eps, sched);
  return sched;
}

double ZbarFromCounts(const std::vector<int64_t>& x,
                      const std::vector<int64_t>& y,
                      const std::vector<int64_t>& flattening_counts) {
  if (x.size() != y.size() || x.size() != flattening_counts.size()) {
    throw std::invalid_argument("zbar: domain mismatch");
  }
  long double total = 0.0L;
  for (size_t e = 0; e < x.size(); ++e) {
    const int64_t d = x[e] - y[e];
    if (std::abs(d) > 3'000'000'000LL) {
      throw std::overflow_error("zbar: count difference too large");
    }
    const int64_t g = d * d - x[e] - y[e];
    if (g != 0) total += static_cast<long double>(g) / (flattening_counts[e] + 1);
  }
  return static_cast<double>(total);
}

ZbarValue ZbarStatistic(const SampleMultiset& Tp, const SampleMultiset& Tq,
                        const Bucketing& bucketing, double A) {
  if (Tp.domain() != bucketing.level1_size() ||
      Tq.domain() != bucketing.level1_size()) {
    throw std::invalid_argument("zbar: test sets not over the level-1 domain");
  }
  ZbarValue z;
  z.value = ZbarFromCounts(Tp.counts(), Tq.counts(),
                           bucketing.flattening_counts());
  z.sensitivity = {ZbarSensitivity(bucketing.flattening_size(), Tp.size(),
                                   Tq.size(), A),
                   Provenance::kAnalytic};
  return z;
}

CoreResult CorePrivateClosenessTest(const DatasetSplit& split,
                                    const Bucketing& bucketing,
                                    const ClosenessSchedule& schedule,
                                    double eps,
                                    const PrivacyBudget& stage_budget,
                                    Rng& rng) {
  const ZbarValue z = ZbarStatistic(split.Tp, split.Tq, bucketing, schedule.A);
  CoreResult r;
  r.z_bar = z.value;
  r.sensitivity = z.sensitivity.value;
  r.threshold = CoreThreshold(schedule.s, eps, bucketing.n_double_prime());
  if (std::isinf(r.sensitivity)) {
    r.z_tilde = std::numeric_limits<double>::quiet_NaN();
    r.outcome = rng.Uniform01() < 0.5 ? Outcome::kAccept : Outcome::kReject;
    return r;
  }
  if (r.sensitivity == 0.0) {
    r.z_tilde = r.z_bar;
  } else {
    r.z_tilde = Privatize(r.z_bar, AnalyticBound(4.0 * r.sensitivity),
                          stage_budget, rng);
  }
  r.outcome = r.z_tilde <= r.threshold ? Outcome::kAccept : Outcome::kReject;
  return r;
}

bool Overdrawn(int64_t k_hat, int64_t ell_hat, int64_t k, int64_t ell) {
  return k_hat + ell_hat > kOverdrawFactor * (k + ell);
}

ClosenessResult RunClosenessPipeline(const SampleOracle& p_source,
                                     const SampleOracle& q_source,
                                     const Pmf& p_hat,
                                     const ClosenessSchedule& schedule,
                                     double eps, Rng& rng) {
  if (p_source.n() != p_hat.n() || q_source.n() != p_hat.n()) {
    throw std::invalid_argument("closeness: source domain mismatch");
  }
  const bool with_l2 = schedule.branch == Branch::kAugmented;
  ClosenessResult out;
  out.schedule = schedule;
  const std::vector<int64_t> level1 = Step1Buckets(p_hat);
  const int64_t m = Level1Size(level1);
  const auto kd = static_cast<double>(schedule.k);

  DatasetSplit split;
  const SampleMultiset fp =
      FlattenSamples(p_source.DrawPoissonizedCounts(kd, rng), level1, rng);
  const SampleMultiset fq =
      FlattenSamples(q_source.DrawPoissonizedCounts(kd, rng), level1, rng);
  split.F = fp.Union(fq);
  split.E = with_l2 ? FlattenSamples(p_source.DrawPoissonizedCounts(
                                         static_cast<double>(schedule.ell), rng),
                                     level1, rng)
                    : SampleMultiset(m);
  if (Overdrawn(split.F.size(), split.E.size(), schedule.k, schedule.ell)) {
    out.overdraw = true;
    out.outcome = Outcome::kReject;
    return out;
  }
  const auto sd = static_cast<double>(schedule.s);
  split.Tp = FlattenSamples(p_source.DrawPoissonizedCounts(sd, rng), level1, rng);
  split.Tq = FlattenSamples(q_source.DrawPoissonizedCounts(sd, rng), level1, rng);

  const DatasetSplit mapped = BalanceMap(split, schedule.A, rng);
  for (int64_t e = 0; e < m; ++e) {
    out.replaced += std::max<int64_t>(mapped.F.count(e) - split.F.count(e), 0);
  }
  const Bucketing bucketing = Step2Buckets(level1, mapped.F);
  if (with_l2) {
    out.l2_ran = true;
    out.l2 = PrivateL2Test(mapped, bucketing, schedule.A, schedule.alpha,
                           schedule.k, p_hat.n(), PrivacyBudget(schedule.xi_l2),
                           rng);
    if (!out.l2.pass) {
      out.outcome = Outcome::kBot;
      return out;
    }
  }
  out.core = CorePrivateClosenessTest(mapped, bucketing, schedule, eps,
                                      PrivacyBudget(schedule.xi_core), rng);
  out.outcome = out.core.outcome;
  return out;
}

ClosenessResult AugmentedClosenessTest(const SampleOracle& p_source,
                                       const SampleOracle& q_source,
                                       const AdviceSpec& advice, int64_t n,
                                       double eps, double xi, Rng& rng) {
  if (advice.p_hat.n() != n) {
    throw std::invalid_argument("closeness: advice domain mismatch");
  }
  const ClosenessSchedule sched = Schedule(n, eps, advice.alpha, xi);
  if (sched.branch == Branch::kBaseline) {
    return BaselinePrivateClosenessTest(p_source, q_source, n, eps, xi, rng);
  }
  return RunClosenessPipeline(p_source, q_source, advice.p_hat, sched, eps,
                              rng);
}

ClosenessResult BaselinePrivateClosenessTest(const SampleOracle& p_source,
                                             const SampleOracle& q_source,
                                             int64_t n, double eps, double xi,
                                             Rng& rng) {
  const ClosenessSchedule sched = BaselineClosenessSchedule(n, eps, xi);
  return RunClosenessPipeline(p_source, q_source, Pmf::Uniform(n), sched, eps,
                              rng);
}

L2StageSample L2StageTrial(const Pmf& p, const Pmf& q, const Pmf& p_hat,
                           const ClosenessSchedule& schedule, int64_t n,
                           Rng& rng) {
  const std::vector<int64_t> level1 = Step1Buckets(p_hat);
  DatasetSplit split;
  split.F = FlattenSamples(
                DrawPoissonizedCounts(p, static_cast<double>(schedule.k), rng),
                level1, rng)
                .Union(FlattenSamples(
                    DrawPoissonizedCounts(q, static_cast<double>(schedule.k), rng),
                    level1, rng));
  split.E = FlattenSamples(
      DrawPoissonizedCounts(p, static_cast<double>(schedule.ell), rng), level1,
      rng);
  split.Tp = SampleMultiset(split.F.domain());
  split.Tq = SampleMultiset(split.F.domain());
  const DatasetSplit mapped = BalanceMap(split, schedule.A, rng);
  const Bucketing bucketing = Step2Buckets(level1, mapped.F);
  L2StageSample out;
  out.result = PrivateL2Test(mapped, bucketing, schedule.A, schedule.alpha,
                             schedule.k, n, PrivacyBudget(schedule.xi_l2), rng);
  out.truth = FlattenedL2True(p, bucketing);
  return out;
}

}  // namespace augtest
