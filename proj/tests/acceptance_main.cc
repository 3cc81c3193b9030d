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


// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "augtest/closeness_tester.h"
#include "augtest/dp_mech.h"
#include "augtest/flattening.h"
#include "augtest/hard_instances.h"
#include "augtest/harness.h"
#include "augtest/identity_tester.h"
#include "augtest/pmf.h"
#include "augtest/rng.h"
#include "augtest/samples.h"
#include "augtest/trial_runner.h"
#include "oracles.h"

namespace augtest {
namespace {

// Tolerances.
constexpr double kIdentityErrorMax = 0.12;
constexpr double kExactTol = 1e-15;
constexpr double kOracleTol = 1e-12;
constexpr int kMinOracleInstances = 200;
constexpr double kSigmaZ = 3.0;
constexpr double kL2MissRate = 0.06;
constexpr double kClosenessDelta = 0.32;
constexpr double kPerfectAdviceBot = 0.09;
constexpr double kChiSquareLevel = 1e-3;
constexpr double kSlopeTol = 0.1;
constexpr double kFormulaTol = 1e-9;

struct Verdict {
  bool pass = false;
  std::string detail;
};

std::string Fmt(const char* fmt, double a = 0, double b = 0, double c = 0,
                double d = 0) {
  char buf[512];
  std::snprintf(buf, sizeof(buf), fmt, a, b, c, d);
  return buf;
}

double Se(double p, int64_t trials) {
  return std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
}

ExperimentConfig IdentityConfig(Scenario scenario) {
  ExperimentConfig c;
  c.task = Task::kIdentity;
  c.scenario = scenario;
  c.n = 200;
  c.eps = 0.25;
  c.xi = 0.5;
  c.alpha = 0.05;
  c.eta = 0.3;
  c.trials = 2000;
  c.master_seed = 20261015;
  return c;
}

Verdict Criterion1() {
  const SummaryRow null_row = RunExperiment(IdentityConfig(Scenario::kNull))[0];
  const SummaryRow close_row =
      RunExperiment(IdentityConfig(Scenario::kAdviceClose))[0];
  const double reject = null_row.rates[1];
  const double bot = close_row.rates[2];
  const int64_t accepts = null_row.counts[0] + close_row.counts[0];
  const bool augmented =
      null_row.branch == "augmented" && close_row.branch == "augmented";
  return {augmented && reject <= kIdentityErrorMax &&
              bot <= kIdentityErrorMax && accepts == 0,
          "branch=" + null_row.branch +
              Fmt(" s=%.0f reject(p=q)=%.4f bot(p=p_hat)=%.4f",
                  static_cast<double>(null_row.s), reject, bot) +
              Fmt(" accepts=%.0f", static_cast<double>(accepts))};
}

Verdict Criterion2() {
  bool ok = true;
  double worst_sigma = 0.0;
  for (int64_t n = 2; n <= 5; ++n) {
    for (int64_t s = 1; s <= 6; ++s) {
      for (int64_t mask = 1; mask + 1 < (int64_t{1} << n); ++mask) {
        std::vector<int64_t> S;
        for (int64_t i = 0; i < n; ++i) {
          if (mask >> i & 1) S.push_back(i);
        }
        const SensitivityBound b = ExhaustiveSensitivity(
            [&](const CountDataset& d) {
              return SigmaStatistic(SampleMultiset::FromCounts(n, d[0]), S);
            },
            {{{n, s}}, {}});
        const double err = std::abs(b.value - 1.0 / static_cast<double>(s));
        worst_sigma = std::max(worst_sigma, err);
        ok = ok && err <= kExactTol && b.provenance == Provenance::kExhaustive;
      }
    }
  }

  const double A = 2.0;
  const double lbar_bound = LbarSensitivityBound({A, 4, 4}).value;
  double lbar_max = 0.0;
  for (int64_t m = 1; m <= 3; ++m) {
    DatasetFamily fam{{{m, 4}, {m, 4}}, [A](const CountDataset& d) {
                        return oracle::Balanced(d[1], d[0], A);
                      }};
    lbar_max = std::max(
        lbar_max, ExhaustiveSensitivity(
                      [](const CountDataset& d) {
                        return LbarFromCounts(d[1], d[0]);
                      },
                      fam)
                      .value);
  }
  ok = ok && lbar_max <= lbar_bound;

  double zbar_ratio = 0.0;
  for (int64_t m = 1; m <= 3; ++m) {
    for (int64_t s = 1; s <= 4; ++s) {
      for (int64_t k = 1; k <= 4; ++k) {
        DatasetFamily fam{{{m, 2 * k}, {m, s}, {m, s}},
                          [A](const CountDataset& d) {
                            return oracle::Balanced(d[1], d[0], A) &&
                                   oracle::Balanced(d[2], d[0], A);
                          }};
        const double got =
            ExhaustiveSensitivity(
                [](const CountDataset& d) {
                  return ZbarFromCounts(d[1], d[2], d[0]);
                },
                fam)
                .value;
        const double bound = 4.0 * static_cast<double>(s + k) / k;
        zbar_ratio = std::max(zbar_ratio, got / bound);
      }
    }
  }
  ok = ok && zbar_ratio <= 1.0 + kOracleTol;
  return {ok, Fmt("max|d_sigma-1/s|=%.2g d_lbar=%.4f<=%.4f max d_zbar/bound=%.4f",
                  worst_sigma, lbar_max, lbar_bound, zbar_ratio)};
}

Verdict Criterion3() {
  int lbar_instances = 0;
  int zbar_instances = 0;
  double worst = 0.0;
  // L-bar: every instance with m <= 2 elements, k_e <= 2, 2..6 samples.
  for (int64_t m = 1; m <= 2; ++m) {
    for (int64_t code = 0; code < (m == 1 ? 3 : 9); ++code) {
      const std::vector<int64_t> f =
          m == 1 ? std::vector<int64_t>{code}
                 : std::vector<int64_t>{code % 3, code / 3};
      for (int64_t ell = 2; ell <= 6; ++ell) {
        for (const auto& e : Compositions(m, ell)) {
          worst = std::max(worst, std::abs(LbarFromCounts(e, f) -
                                           oracle::BruteForceLbar(e, f)));
          ++lbar_instances;
        }
      }
    }
  }
  // Z-bar: one element, k_e <= 2, every pair of side sizes up to 6; two
  // elements with up to 3 samples per side.
  for (int64_t f0 = 0; f0 <= 2; ++f0) {
    for (int64_t x = 0; x <= 6; ++x) {
      for (int64_t y = 0; y <= 6; ++y) {
        worst = std::max(worst, std::abs(ZbarFromCounts({x}, {y}, {f0}) -
                                         oracle::BruteForceZbar({x}, {y}, {f0})));
        ++zbar_instances;
      }
    }
  }
  for (int64_t code = 0; code < 9; ++code) {
    const std::vector<int64_t> f = {code % 3, code / 3};
    for (int64_t sx = 0; sx <= 3; ++sx) {
      for (int64_t sy = 0; sy <= 3; ++sy) {
        for (const auto& x : Compositions(2, sx)) {
          for (const auto& y : Compositions(2, sy)) {
            worst = std::max(worst, std::abs(ZbarFromCounts(x, y, f) -
                                             oracle::BruteForceZbar(x, y, f)));
            ++zbar_instances;
          }
        }
      }
    }
  }
  return {worst <= kOracleTol && lbar_instances >= kMinOracleInstances &&
              zbar_instances >= kMinOracleInstances,
          Fmt("lbar instances=%.0f zbar instances=%.0f max abs err=%.2g",
              static_cast<double>(lbar_instances),
              static_cast<double>(zbar_instances), worst)};
}

struct MeanSe {
  double mean = 0.0;
  double se = 0.0;
};

MeanSe FlatteningMean(const Pmf& p, const Pmf& p_hat, int64_t k, int reps,
                      uint64_t seed) {
  const auto level1 = Step1Buckets(p_hat);
  const Rng master(seed);
  double sum = 0.0, sumsq = 0.0;
  for (int r = 0; r < reps; ++r) {
    Rng rng = master.Split(r);
    const SampleMultiset f = FlattenSamples(
        DrawPoissonizedCounts(p, static_cast<double>(k), rng), level1, rng);
    const double v = FlattenedL2True(p, Step2Buckets(level1, f));
    sum += v;
    sumsq += v * v;
  }
  const double mean = sum / reps;
  return {mean, std::sqrt(std::max(sumsq / reps - mean * mean, 0.0) / reps)};
}

Verdict Criterion4() {
  const int64_t n = 100, k = 50;
  const double alpha = 0.1;
  const Pmf u = Pmf::Uniform(n);
  const Pmf p = AdvicePhat({n, alpha, 0.0, 0.0});
  const double tv = TvDistance(p, u);
  const MeanSe far = FlatteningMean(p, u, k, 500, 41);
  const MeanSe exact = FlatteningMean(u, u, k, 500, 42);
  const double bound_far = 2.0 * alpha / k + 4.0 / n;
  const double bound_exact = 4.0 / n;
  return {std::abs(tv - alpha) <= kOracleTol &&
              far.mean <= bound_far + kSigmaZ * far.se &&
              exact.mean <= bound_exact + kSigmaZ * exact.se,
          Fmt("alpha=0.1: mean=%.5f bound=%.4f; alpha=0: mean=%.5f bound=%.4f",
              far.mean, bound_far, exact.mean, bound_exact)};
}

Verdict Criterion5() {
  const int64_t n = 100;
  const double alpha = 0.02;
  const ClosenessSchedule sched = Schedule(n, 0.3, alpha, 1.0, true);
  const Pmf u = Pmf::Uniform(n);
  const Pmf p_hat = AdvicePhat({n, alpha / 2.0, 0.0, 0.0});
  constexpr int64_t kReps = 2000;
  const Tally t = RunTrialsParallel(kReps, 51, [&](int64_t, Rng& rng) {
    Tally one;
    const L2StageSample s = L2StageTrial(u, u, p_hat, sched, n, rng);
    one.AddMetric(std::abs(s.result.l_tilde - s.truth) > s.truth / 2.0 ? 1 : 0);
    return one;
  });
  const double freq = static_cast<double>(t.metric_sum) / kReps;
  const double limit = kL2MissRate + kSigmaZ * Se(kL2MissRate, kReps);
  return {freq <= limit,
          Fmt("k=ell=%.0f miss freq=%.4f limit=%.4f", static_cast<double>(sched.k),
              freq, limit)};
}

Verdict Criterion6() {
  Rng rng(61);
  int64_t cases = 0, in_set = 0, identity_ok = 0, identity_cases = 0;
  bool raised = false;
  for (double A : {2.0, 2.5, 3.0, 4.0}) {
    for (int64_t m = 1; m <= 3; ++m) {
      for (int64_t k = 1; k <= 4; ++k) {
        for (int64_t l = 0; l <= 4; ++l) {
          for (const auto& f : Compositions(m, k)) {
            for (const auto& e : Compositions(m, l)) {
              for (bool items : {false, true}) {
                DatasetSplit in;
                if (items) {
                  std::vector<int64_t> it;
                  for (int64_t x = 0; x < m; ++x) it.insert(it.end(), f[x], x);
                  for (size_t j = it.size(); j > 1; --j) {
                    std::swap(it[j - 1], it[rng.UniformInt(j)]);
                  }
                  in.F = SampleMultiset::FromItems(m, it);
                } else {
                  in.F = SampleMultiset::FromCounts(m, f);
                }
                in.E = SampleMultiset::FromCounts(m, e);
                in.Tp = SampleMultiset(m);
                in.Tq = SampleMultiset(m);
                DatasetSplit out;
                try {
                  out = BalanceMap(in, A, rng);
                } catch (const std::exception&) {
                  raised = true;
                  continue;
                }
                ++cases;
                if (oracle::Balanced(out.E.counts(), out.F.counts(), A) &&
                    out.F.size() == in.F.size()) {
                  ++in_set;
                }
                if (oracle::Balanced(e, f, A)) {
                  ++identity_cases;
                  const bool same =
                      items ? out.F.items() == in.F.items()
                            : out.F.counts() == in.F.counts();
                  if (same) ++identity_ok;
                }
              }
            }
          }
        }
      }
    }
  }
  return {!raised && in_set == cases && identity_ok == identity_cases,
          Fmt("cases=%.0f in_set=%.0f identity=%.0f/%.0f",
              static_cast<double>(cases), static_cast<double>(in_set),
              static_cast<double>(identity_ok),
              static_cast<double>(identity_cases)) +
              (raised ? " infeasibility raised" : "")};
}

Verdict Criterion7() {
  const HardFamily fam{100, 0.3, 0.0, 0.2};
  const int64_t s = 100;
  constexpr int64_t kReps = 10000;
  const Tally t = RunTrialsParallel(kReps, 71, [&](int64_t, Rng& rng) {
    Tally one;
    one.AddMetric(CoupleDiamond(fam, s, rng).hamming);
    return one;
  });
  const double mean = static_cast<double>(t.metric_sum) / kReps;
  const double var =
      (static_cast<double>(t.metric_sumsq) - kReps * mean * mean) / (kReps - 1);
  const double se = std::sqrt(var / kReps);
  const double target = s * (fam.eta - fam.alpha_prime);

  // 1000 coupled runs of 100 samples: 1e5 pooled draws per marginal.
  std::vector<double> o1(fam.n, 0.0), o3(fam.n, 0.0);
  const Rng master(72);
  for (int r = 0; r < 1000; ++r) {
    Rng rng = master.Split(r);
    const CoupledSamples c = CoupleDiamond(fam, s, rng);
    for (int64_t i = 0; i < fam.n; ++i) {
      o1[i] += c.t1.count(i);
      o3[i] += c.t3.count(i);
    }
  }
  const Pmf u = Pmf::Uniform(fam.n);
  const Pmf d = PDiamond(fam);
  std::vector<double> e1(fam.n), e3(fam.n);
  for (int64_t i = 0; i < fam.n; ++i) {
    e1[i] = 1e5 * u[i];
    e3[i] = 1e5 * d[i];
  }
  const double p1 = oracle::ChiSquarePValue(o1, e1);
  const double p3 = oracle::ChiSquarePValue(o3, e3);
  return {std::abs(mean - target) <= kSigmaZ * se && p1 > kChiSquareLevel &&
              p3 > kChiSquareLevel,
          Fmt("mean hamming=%.4f (target %.1f, se %.4f) gof p(U)=%.3g",
              mean, target, se, p1) +
              Fmt(" gof p(diamond)=%.3g", p3)};
}

ExperimentConfig ClosenessConfig(Scenario scenario) {
  ExperimentConfig c;
  c.task = Task::kCloseness;
  c.scenario = scenario;
  c.n = 100;
  c.eps = 0.3;
  c.alpha = 0.02;
  c.xi = 1.0;
  c.trials = 1000;
  c.master_seed = 81;
  return c;
}

Verdict Criterion8() {
  const SummaryRow null_row = RunExperiment(ClosenessConfig(Scenario::kNull))[0];
  const SummaryRow far_row = RunExperiment(ClosenessConfig(Scenario::kFar))[0];
  const SummaryRow perfect =
      RunExperiment(ClosenessConfig(Scenario::kAdviceClose))[0];
  const int64_t t = null_row.trials;
  const double invalid = null_row.rates[1] + null_row.rates[2];
  const double accept = far_row.rates[0];
  const double bot = perfect.rates[2];
  const double lim = kClosenessDelta + kSigmaZ * Se(kClosenessDelta, t);
  const double bot_lim = kPerfectAdviceBot + kSigmaZ * Se(kPerfectAdviceBot, t);

  // The desk configuration selects the baseline branch; run the same three
  // scenarios through the augmented pipeline as well.
  const int64_t n = 100;
  const double eps = 0.3;
  const ClosenessSchedule forced = Schedule(n, eps, 0.02, 1.0, true);
  const Pmf u = Pmf::Uniform(n);
  Rng fam_rng = Rng(81).Split(0xfeedfacecafebeefULL);
  const Pmf far = PBullet({n, 0.0, 0.36, 0.0}, fam_rng);
  const Pmf good_hat = AdvicePhat({n, 0.01, 0.0, 0.0});
  const SampleOracle u_src(u), far_src(far);
  auto run = [&](const SampleOracle& p, const Pmf& p_hat, uint64_t seed) {
    return RunTrialsParallel(t, seed, [&](int64_t, Rng& rng) {
      Tally one;
      one.AddVerdict(RunClosenessPipeline(p, u_src, p_hat, forced, eps, rng).outcome);
      return one;
    });
  };
  const Tally a_null = run(u_src, good_hat, 82);
  const Tally a_far = run(far_src, far, 83);
  const Tally a_perfect = run(u_src, u, 84);
  const double td = static_cast<double>(t);
  const double a_invalid =
      (a_null.count(Outcome::kReject) + a_null.count(Outcome::kBot)) / td;
  const double a_accept = a_far.count(Outcome::kAccept) / td;
  const double a_bot = a_perfect.count(Outcome::kBot) / td;

  return {invalid <= lim && accept <= lim && bot <= bot_lim &&
              a_invalid <= lim && a_accept <= lim && a_bot <= bot_lim,
          Fmt("augmented: invalid(null)=%.4f accept(far)=%.4f bot(perfect)=%.4f; ",
              a_invalid, a_accept, a_bot) +
              "branch=" + null_row.branch +
              Fmt(" k=%.0f s=%.0f", static_cast<double>(null_row.k),
                  static_cast<double>(null_row.s)) +
              Fmt(" invalid(null)=%.4f accept(far)=%.4f bot(perfect)=%.4f",
                  invalid, accept, bot) +
              Fmt(" limits %.4f/%.4f", lim, bot_lim)};
}

double FitSlope(const std::vector<double>& x, const std::vector<double>& y) {
  double mx = 0, my = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    mx += std::log(x[i]);
    my += std::log(y[i]);
  }
  mx /= x.size();
  my /= y.size();
  double sxy = 0, sxx = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    sxy += (std::log(x[i]) - mx) * (std::log(y[i]) - my);
    sxx += (std::log(x[i]) - mx) * (std::log(x[i]) - mx);
  }
  return sxy / sxx;
}

Verdict Criterion9() {
  const std::vector<double> gaps = {0.05, 0.1, 0.2, 0.4};
  std::vector<double> budgets;
  for (double g : gaps) {
    budgets.push_back(static_cast<double>(AugmentedIdentityBudget(g, 1.0)));
  }
  const double slope = FitSlope(gaps, budgets);

  // Leading closeness term where it dominates: eps = xi = 1, large n.
  bool dominated = true;
  const std::vector<double> ns = {1e12, 1e13, 1e14};
  const std::vector<double> alphas = {0.1, 0.3, 1.0};
  std::vector<double> by_n, by_alpha;
  for (double n : ns) {
    for (double a : alphas) {
      const double rate = ClosenessRateK(static_cast<int64_t>(n), 1.0, a, 1.0);
      const double lead = std::pow(n, 2.0 / 3.0) * std::cbrt(a);
      dominated = dominated && std::abs(rate - lead) <= kFormulaTol * lead;
    }
    by_n.push_back(ClosenessRateK(static_cast<int64_t>(n), 1.0, 0.1, 1.0));
  }
  for (double a : alphas) {
    by_alpha.push_back(ClosenessRateK(static_cast<int64_t>(1e13), 1.0, a, 1.0));
  }
  const double n_slope = FitSlope(ns, by_n);
  const double a_slope = FitSlope(alphas, by_alpha);
  return {std::abs(slope + 2.0) <= kSlopeTol && dominated &&
              std::abs(n_slope - 2.0 / 3.0) <= kFormulaTol &&
              std::abs(a_slope - 1.0 / 3.0) <= kFormulaTol,
          Fmt("identity slope=%.4f; closeness d log k/d log n=%.6f "
              "d log k/d log alpha=%.6f",
              slope, n_slope, a_slope)};
}

Verdict Criterion10() {
  bool same = true;
  std::string detail;
  for (Scenario sc : {Scenario::kNull, Scenario::kAdviceClose}) {
    ExperimentConfig c = IdentityConfig(sc);
    c.serial = true;
    const auto serial = RunExperiment(c);
    c.serial = false;
    const auto parallel = RunExperiment(c);
    const auto again = RunExperiment(c);
    const bool eq = serial[0].counts == parallel[0].counts &&
                    parallel[0].counts == again[0].counts &&
                    FormatCsv(serial) == FormatCsv(parallel) &&
                    FormatCsv(parallel) == FormatCsv(again) &&
                    FormatMetadata(c, serial, "", {}) ==
                        FormatMetadata(c, parallel, "", {});
    same = same && eq;
    detail += std::string(ScenarioName(sc)) + (eq ? "=identical " : "=DIFFERS ");
  }
  return {same, detail + "(serial vs parallel, tallies, CSV and JSON bytes)"};
}

}  // namespace
}  // namespace augtest

int main() {
  using augtest::Verdict;
  struct Entry {
    int id;
    double budget_seconds;
    std::function<Verdict()> run;
  };
  const std::vector<Entry> entries = {
      {1, 60, augtest::Criterion1},   {2, 120, augtest::Criterion2},
      {3, 60, augtest::Criterion3},   {4, 60, augtest::Criterion4},
      {5, 120, augtest::Criterion5},  {6, 60, augtest::Criterion6},
      {7, 60, augtest::Criterion7},   {8, 600, augtest::Criterion8},
      {9, 1, augtest::Criterion9},    {10, 120, augtest::Criterion10},
  };
  int failures = 0;
  for (const Entry& e : entries) {
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = e.run();
    } catch (const std::exception& ex) {
      v = {false, std::string("exception: ") + ex.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    const bool in_time = secs < e.budget_seconds;
    const bool pass = v.pass && in_time;
    if (!pass) ++failures;
    std::printf("%s criterion %d: %s [%.2fs / budget %.0fs%s]\n",
                pass ? "PASS" : "FAIL", e.id, v.detail.c_str(), secs,
                e.budget_seconds, in_time ? "" : ", over budget");
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n",
              static_cast<int>(entries.size()) - failures, entries.size());
  return failures == 0 ? 0 : 1;
}
