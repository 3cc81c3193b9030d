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

#include "augtest/identity_tester.h"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "augtest/errors.h"

namespace augtest {

IdentityInstance IdentityInstance::Create(Pmf q, AdviceSpec advice, double eps,
                                          PrivacyBudget budget) {
  if (advice.p_hat.n() != q.n()) {
    throw std::invalid_argument("identity: advice and q domains differ");
  }
  if (!(advice.alpha >= 0.0 && advice.alpha < 1.0)) {
    throw std::invalid_argument("identity: alpha must lie in [0, 1)");
  }
  if (!(eps > 0.0 && eps <= 1.0)) {
    throw std::invalid_argument("identity: eps must lie in (0, 1]");
  }
  IdentityInstance inst(std::move(q), std::move(advice), eps, budget);
  inst.scheffe_ = ScheffeSet(inst.advice_.p_hat, inst.q_);
  inst.eta_ = TvDistance(inst.advice_.p_hat, inst.q_);
  const double gap =
      inst.q_.Mass(inst.scheffe_) - inst.advice_.p_hat.Mass(inst.scheffe_);
  if (std::abs(std::abs(gap) - inst.eta_) >
      1e-12 * static_cast<double>(std::max<int64_t>(inst.q_.n(), 1))) {
    std::ostringstream msg;
    msg << "identity: Scheffe gap " << gap << " differs from tv " << inst.eta_;
    throw InvariantViolation(msg.str());
  }
  return inst;
}

std::vector<int64_t> ScheffeSet(const Pmf& p_hat, const Pmf& q) {
  if (p_hat.n() != q.n()) throw std::invalid_argument("scheffe: domain mismatch");
  std::vector<int64_t> s;
  for (int64_t i = 0; i < q.n(); ++i) {
    if (p_hat[i] < q[i]) s.push_back(i);
  }
  return s;
}

double SigmaStatistic(const SampleMultiset& samples,
                      const std::vector<int64_t>& S) {
  if (samples.empty()) throw std::invalid_argument("sigma: empty sample set");
  int64_t in = 0;
  for (int64_t i : S) in += samples.count(i);
  return static_cast<double>(in) / static_cast<double>(samples.size());
}

int64_t AugmentedIdentityBudget(double gap, double xi) {
  if (!(gap > 0.0)) throw std::invalid_argument("identity: eta - alpha <= 0");
  return static_cast<int64_t>(std::ceil(128.0 / (gap * gap))) +
         static_cast<int64_t>(std::ceil(24.0 / (gap * xi)));
}

double AugmentedIdentityCost(double gap, double xi) {
  return 1.0 / (gap * gap) + 1.0 / (gap * xi);
}

double BaselineIdentityCost(int64_t n, double eps, double xi) {
  const double rn = std::sqrt(static_cast<double>(n));
  return rn / (eps * eps) + rn / (eps * std::sqrt(xi)) +
         std::cbrt(static_cast<double>(n)) /
             (std::pow(eps, 4.0 / 3.0) * std::pow(xi, 2.0 / 3.0)) +
         1.0 / (eps * xi);
}

Branch BranchSelect(const IdentityInstance& instance) {
  const double gap = instance.eta() - instance.alpha();
  if (gap <= 0.0) return Branch::kBaseline;
  const double base = BaselineIdentityCost(instance.n(), instance.eps(),
                                           instance.xi());
  const double aug = AugmentedIdentityCost(gap, instance.xi());
  return base <= aug ? Branch::kBaseline : Branch::kAugmented;
}

IdentityResult AugmentedIdentityTest(const IdentityInstance& instance,
                                     const SampleOracle& source, Rng& rng) {
  if (BranchSelect(instance) != Branch::kAugmented) {
    throw std::invalid_argument("identity: augmented branch not selected");
  }
  if (source.n() != instance.n()) {
    throw std::invalid_argument("identity: source domain mismatch");
  }
  const double gap = instance.eta() - instance.alpha();
  IdentityResult r;
  r.branch = Branch::kAugmented;
  r.s = AugmentedIdentityBudget(gap, instance.xi());
  const SampleMultiset x = source.DrawFixed(r.s, rng);
  const double sigma = SigmaStatistic(x, instance.scheffe());
  const SensitivityBound delta =
      AnalyticBound(1.0 / static_cast<double>(r.s));
  r.released = Privatize(sigma, delta, instance.budget(), rng);
  const double q_s = instance.q().Mass(instance.scheffe());
  r.outcome = std::abs(r.released - q_s) > gap / 4.0 ? Outcome::kReject
                                                     : Outcome::kBot;
  return r;
}

int64_t BaselineIdentityBudget(int64_t n, double eps, double xi,
                               double constant) {
  return static_cast<int64_t>(
      std::ceil(constant * BaselineIdentityCost(n, eps, xi)));
}

double L1Statistic(const SampleMultiset& samples, const Pmf& q) {
  if (samples.domain() != q.n()) {
    throw std::invalid_argument("l1 statistic: domain mismatch");
  }
  const double s = static_cast<double>(samples.size());
  double t = 0.0;
  for (int64_t i = 0; i < q.n(); ++i) {
    t += std::abs(static_cast<double>(samples.count(i)) - s * q[i]);
  }
  return t;
}

BaselineIdentityTester::BaselineIdentityTester(Pmf q, double eps,
                                               PrivacyBudget budget,
                                               double constant,
                                               int64_t calibration_reps,
                                               uint64_t calibration_seed)
    : q_(std::move(q)),
      budget_(budget),
      s_(BaselineIdentityBudget(q_.n(), eps, budget.xi(), constant)) {
  if (calibration_reps < 1) {
    throw std::invalid_argument("baseline identity: calibration_reps < 1");
  }
  const AliasSampler sampler(q_);
  const Rng master(calibration_seed);
  std::vector<double> null_values(calibration_reps);
  for (int64_t r = 0; r < calibration_reps; ++r) {
    Rng rng = master.Split(static_cast<uint64_t>(r));
    const SampleMultiset x = DrawFixed(sampler, s_, rng);
    null_values[r] =
        L1Statistic(x, q_) + LaplaceSample(2.0 / budget_.xi(), rng);
  }
  std::sort(null_values.begin(), null_values.end());
  const auto idx = static_cast<int64_t>(
      std::ceil(kBaselineNullQuantile * static_cast<double>(calibration_reps)));
  threshold_ = null_values[std::clamp<int64_t>(idx - 1, 0, calibration_reps - 1)];
}

IdentityResult BaselineIdentityTester::Test(const SampleOracle& source,
                                            Rng& rng) const {
  if (source.n() != q_.n()) {
    throw std::invalid_argument("baseline identity: source domain mismatch");
  }
  IdentityResult r;
  r.branch = Branch::kBaseline;
  r.s = s_;
  const SampleMultiset x = source.DrawFixed(s_, rng);
  r.released = Privatize(L1Statistic(x, q_), AnalyticBound(2.0), budget_, rng);
  r.outcome = r.released > threshold_ ? Outcome::kReject : Outcome::kAccept;
  return r;
}

IdentityTester::IdentityTester(IdentityInstance instance)
    : instance_(std::move(instance)), branch_(BranchSelect(instance_)) {
  if (branch_ == Branch::kBaseline) {
    baseline_.emplace(instance_.q(), instance_.eps(), instance_.budget());
  }
}

int64_t IdentityTester::s() const {
  if (baseline_) return baseline_->s();
  return AugmentedIdentityBudget(instance_.eta() - instance_.alpha(),
                                 instance_.xi());
}

IdentityResult IdentityTester::Run(const SampleOracle& source, Rng& rng) const {
  if (baseline_) return baseline_->Test(source, rng);
  return AugmentedIdentityTest(instance_, source, rng);
}

}  // namespace augtest
