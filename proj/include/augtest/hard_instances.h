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

#ifndef AUGTEST_HARD_INSTANCES_H_
#define AUGTEST_HARD_INSTANCES_H_

#include <cstdint>
#include <vector>

#include "augtest/pmf.h"
#include "augtest/rng.h"
#include "augtest/samples.h"

namespace augtest {

// Parameters of the paired perturbation family on an even domain. Elements
// come in pairs (2a, 2a+1); the odd index of each pair carries the "+" bias.
struct HardFamily {
  int64_t n = 2;
  double eta = 0.0;
  double eps_prime = 0.0;
  double alpha_prime = 0.0;

  void Validate() const;
};

// (1 + 2 eta)/n on odd indices, (1 - 2 eta)/n on even indices.
Pmf AdvicePhat(const HardFamily& family);

// Pairwise perturbation with independent uniform signs z_a in {-1, +1}.
Pmf PBullet(const HardFamily& family, Rng& rng);
Pmf PBulletWithSigns(const HardFamily& family, const std::vector<int>& signs);

// Bias eta - alpha' in the advice direction.
Pmf PDiamond(const HardFamily& family);

// Appends an element of probability 0 (odd-domain convention).
Pmf PadOddDomain(const Pmf& p);

struct CoupledSamples {
  SampleMultiset t1;  // marginal U_n^s
  SampleMultiset t3;  // marginal PDiamond^s
  int64_t hamming = 0;
};

// Per position: pair P ~ U[n/2], Z ~ Bern(1/2), Z' ~ Bern(1 - 2(eta - alpha'));
// X = pair element selected by Z, Y = X unless Z = 1 and Z' = 0.
CoupledSamples CoupleDiamond(const HardFamily& family, int64_t s, Rng& rng);

}  // namespace augtest

#endif  // AUGTEST_HARD_INSTANCES_H_
