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

#ifndef AUGTEST_SAMPLES_H_
#define AUGTEST_SAMPLES_H_

#include <cstdint>
#include <vector>

#include "augtest/pmf.h"
#include "augtest/rng.h"

namespace augtest {

// Multiset of domain indices. Always carries per-element counts; the ordered
// item sequence is optional (count-level Poissonized draws do not build it).
class SampleMultiset {
 public:
  explicit SampleMultiset(int64_t domain = 0);

  static SampleMultiset FromItems(int64_t domain, std::vector<int64_t> items);
  static SampleMultiset FromCounts(int64_t domain, std::vector<int64_t> counts);

  int64_t domain() const { return static_cast<int64_t>(counts_.size()); }
  int64_t size() const { return size_; }
  bool empty() const { return size_ == 0; }
  int64_t count(int64_t i) const { return counts_[i]; }
  const std::vector<int64_t>& counts() const { return counts_; }

  bool has_items() const { return has_items_; }
  // Requires has_items() or an empty multiset.
  const std::vector<int64_t>& items() const;

  // Multiset union. Items are concatenated when both sides carry them.
  SampleMultiset Union(const SampleMultiset& other) const;

 private:
  std::vector<int64_t> counts_;
  std::vector<int64_t> items_;
  int64_t size_ = 0;
  bool has_items_ = true;
};

// Vose alias table: O(n) setup, O(1) per draw.
class AliasSampler {
 public:
  explicit AliasSampler(const Pmf& p);

  int64_t Draw(Rng& rng) const;
  int64_t n() const { return static_cast<int64_t>(prob_.size()); }

 private:
  std::vector<double> prob_;
  std::vector<int64_t> alias_;
};

SampleMultiset DrawFixed(const Pmf& p, int64_t s, Rng& rng);
SampleMultiset DrawFixed(const AliasSampler& sampler, int64_t s, Rng& rng);

// N ~ Poi(mean), then N i.i.d. draws from p, in order.
SampleMultiset DrawPoissonized(const Pmf& p, double mean, Rng& rng);

// Same law as DrawPoissonized, built directly from independent
// Poi(mean * p_i) counts. Cost is O(n) regardless of mean.
SampleMultiset DrawPoissonizedCounts(const Pmf& p, double mean, Rng& rng);

int64_t DrawPoisson(double mean, Rng& rng);
int64_t DrawBinomial(int64_t trials, double prob, Rng& rng);

// Black-box access to an unknown distribution. Testers only see samples.
class SampleOracle {
 public:
  explicit SampleOracle(Pmf p) : p_(std::move(p)), sampler_(p_) {}

  int64_t n() const { return p_.n(); }
  SampleMultiset DrawFixed(int64_t s, Rng& rng) const;
  SampleMultiset DrawPoissonizedCounts(double mean, Rng& rng) const;

 private:
  Pmf p_;
  AliasSampler sampler_;
};

}  // namespace augtest

#endif  // AUGTEST_SAMPLES_H_
