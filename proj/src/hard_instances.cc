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

#include "augtest/hard_instances.h"

#include <stdexcept>

namespace augtest {
namespace {

Pmf PairwiseBias(int64_t n, const std::vector<double>& bias) {
  std::vector<double> v(n);
  const double nd = static_cast<double>(n);
  for (int64_t a = 0; a < n / 2; ++a) {
    v[2 * a] = (1.0 - 2.0 * bias[a]) / nd;
    v[2 * a + 1] = (1.0 + 2.0 * bias[a]) / nd;
  }
  return Pmf::Create(std::move(v));
}

}  // namespace

void HardFamily::Validate() const {
  if (n < 2 || n % 2 != 0) {
    throw std::invalid_argument("hard family: n must be even and >= 2");
  }
  if (!(eta >= 0.0 && eta < 0.5)) {
    throw std::invalid_argument("hard family: eta must lie in [0, 1/2)");
  }
  if (!(alpha_prime >= 0.0 && alpha_prime <= eta)) {
    throw std::invalid_argument("hard family: alpha' must lie in [0, eta]");
  }
  if (!(eps_prime >= 0.0 && eps_prime <= 0.5)) {
    throw std::invalid_argument("hard family: eps' must lie in [0, 1/2]");
  }
}

Pmf AdvicePhat(const HardFamily& family) {
  family.Validate();
  return PairwiseBias(family.n, std::vector<double>(family.n / 2, family.eta));
}

Pmf PBulletWithSigns(const HardFamily& family, const std::vector<int>& signs) {
  family.Validate();
  if (static_cast<int64_t>(signs.size()) != family.n / 2) {
    throw std::invalid_argument("p_bullet: need n/2 signs");
  }
  std::vector<double> bias(family.n / 2);
  for (size_t a = 0; a < signs.size(); ++a) {
    if (signs[a] != 1 && signs[a] != -1) {
      throw std::invalid_argument("p_bullet: signs must be +1 or -1");
    }
    bias[a] = signs[a] * family.eps_prime;
  }
  return PairwiseBias(family.n, bias);
}

Pmf PBullet(const HardFamily& family, Rng& rng) {
  std::vector<int> signs(family.n / 2);
  for (int& z : signs) z = rng.UniformInt(2) == 0 ? -1 : 1;
  return PBulletWithSigns(family, signs);
}

Pmf PDiamond(const HardFamily& family) {
  family.Validate();
  return PairwiseBias(
      family.n,
      std::vector<double>(family.n / 2, family.eta - family.alpha_prime));
}

Pmf PadOddDomain(const Pmf& p) {
  std::vector<double> v = p.probs();
  v.push_back(0.0);
  return Pmf::Create(std::move(v));
}

CoupledSamples CoupleDiamond(const HardFamily& family, int64_t s, Rng& rng) {
  family.Validate();
  if (s < 0) throw std::invalid_argument("coupling: negative sample size");
  const double keep = 1.0 - 2.0 * (family.eta - family.alpha_prime);
  std::vector<int64_t> x(s);
  std::vector<int64_t> y(s);
  CoupledSamples out;
  for (int64_t j = 0; j < s; ++j) {
    const auto pair = static_cast<int64_t>(
        rng.UniformInt(static_cast<uint64_t>(family.n / 2)));
    const bool z = rng.UniformInt(2) == 1;
    const bool z_prime = rng.Uniform01() < keep;
    // Z = 0 selects the "+" element of the pair, Z = 1 the "-" element.
    x[j] = z ? 2 * pair : 2 * pair + 1;
    if (!z) {
      y[j] = x[j];
    } else {
      y[j] = z_prime ? 2 * pair : 2 * pair + 1;
    }
    if (x[j] != y[j]) ++out.hamming;
  }
  out.t1 = SampleMultiset::FromItems(family.n, std::move(x));
  out.t3 = SampleMultiset::FromItems(family.n, std::move(y));
  return out;
}

}  // namespace augtest
