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

#include "augtest/samples.h"

#include <random>
#include <stdexcept>

namespace augtest {

SampleMultiset::SampleMultiset(int64_t domain) : counts_(domain, 0) {
  if (domain < 0) throw std::invalid_argument("multiset: negative domain");
}

SampleMultiset SampleMultiset::FromItems(int64_t domain,
                                         std::vector<int64_t> items) {
  SampleMultiset m(domain);
  for (int64_t x : items) {
    if (x < 0 || x >= domain) {
      throw std::invalid_argument("multiset: item outside domain");
    }
    ++m.counts_[x];
  }
  m.size_ = static_cast<int64_t>(items.size());
  m.items_ = std::move(items);
  return m;
}

SampleMultiset SampleMultiset::FromCounts(int64_t domain,
                                          std::vector<int64_t> counts) {
  if (static_cast<int64_t>(counts.size()) != domain) {
    throw std::invalid_argument("multiset: counts length != domain");
  }
  SampleMultiset m(0);
  m.size_ = 0;
  for (int64_t c : counts) {
    if (c < 0) throw std::invalid_argument("multiset: negative count");
    m.size_ += c;
  }
  m.counts_ = std::move(counts);
  m.has_items_ = m.size_ == 0;
  return m;
}

const std::vector<int64_t>& SampleMultiset::items() const {
  if (!has_items_) throw std::logic_error("multiset: items not materialized");
  return items_;
}

SampleMultiset SampleMultiset::Union(const SampleMultiset& other) const {
  if (other.domain() != domain()) {
    throw std::invalid_argument("multiset: union of different domains");
  }
  if (has_items_ && other.has_items_) {
    std::vector<int64_t> items = items_;
    items.insert(items.end(), other.items_.begin(), other.items_.end());
    return FromItems(domain(), std::move(items));
  }
  std::vector<int64_t> c = counts_;
  for (int64_t i = 0; i < domain(); ++i) c[i] += other.counts_[i];
  return FromCounts(domain(), std::move(c));
}

AliasSampler::AliasSampler(const Pmf& p) : prob_(p.n()), alias_(p.n()) {
  const int64_t n = p.n();
  std::vector<double> scaled(n);
  std::vector<int64_t> small, large;
  small.reserve(n);
  large.reserve(n);
  for (int64_t i = 0; i < n; ++i) {
    scaled[i] = p[i] * static_cast<double>(n);
    (scaled[i] < 1.0 ? small : large).push_back(i);
  }
  while (!small.empty() && !large.empty()) {
    const int64_t s = small.back();
    small.pop_back();
    const int64_t l = large.back();
    prob_[s] = scaled[s];
    alias_[s] = l;
    scaled[l] = (scaled[l] + scaled[s]) - 1.0;
    if (scaled[l] < 1.0) {
      large.pop_back();
      small.push_back(l);
    }
  }
  for (int64_t l : large) {
    prob_[l] = 1.0;
    alias_[l] = l;
  }
  // Leftovers from rounding keep their own index unless they carry no mass.
  int64_t heaviest = 0;
  for (int64_t i = 1; i < n; ++i) {
    if (p[i] > p[heaviest]) heaviest = i;
  }
  for (int64_t s : small) {
    prob_[s] = p[s] > 0.0 ? 1.0 : 0.0;
    alias_[s] = p[s] > 0.0 ? s : heaviest;
  }
}

int64_t AliasSampler::Draw(Rng& rng) const {
  const int64_t i = static_cast<int64_t>(rng.UniformInt(prob_.size()));
  return rng.Uniform01() < prob_[i] ? i : alias_[i];
}

SampleMultiset DrawFixed(const AliasSampler& sampler, int64_t s, Rng& rng) {
  if (s < 0) throw std::invalid_argument("draw: negative sample size");
  std::vector<int64_t> items(s);
  for (int64_t j = 0; j < s; ++j) items[j] = sampler.Draw(rng);
  return SampleMultiset::FromItems(sampler.n(), std::move(items));
}

SampleMultiset DrawFixed(const Pmf& p, int64_t s, Rng& rng) {
  return DrawFixed(AliasSampler(p), s, rng);
}

int64_t DrawPoisson(double mean, Rng& rng) {
  if (mean < 0.0) throw std::invalid_argument("poisson: negative mean");
  if (mean == 0.0) return 0;
  std::poisson_distribution<int64_t> d(mean);
  return d(rng);
}

int64_t DrawBinomial(int64_t trials, double prob, Rng& rng) {
  if (trials <= 0 || prob <= 0.0) return 0;
  if (prob >= 1.0) return trials;
  std::binomial_distribution<int64_t> d(trials, prob);
  return d(rng);
}

SampleMultiset DrawPoissonized(const Pmf& p, double mean, Rng& rng) {
  if (!(mean > 0.0)) throw std::invalid_argument("draw: mean must be > 0");
  return DrawFixed(p, DrawPoisson(mean, rng), rng);
}

SampleMultiset DrawPoissonizedCounts(const Pmf& p, double mean, Rng& rng) {
  if (!(mean > 0.0)) throw std::invalid_argument("draw: mean must be > 0");
  std::vector<int64_t> c(p.n());
  for (int64_t i = 0; i < p.n(); ++i) c[i] = DrawPoisson(mean * p[i], rng);
  return SampleMultiset::FromCounts(p.n(), std::move(c));
}

SampleMultiset SampleOracle::DrawFixed(int64_t s, Rng& rng) const {
  return augtest::DrawFixed(sampler_, s, rng);
}

SampleMultiset SampleOracle::DrawPoissonizedCounts(double mean,
                                                   Rng& rng) const {
  return augtest::DrawPoissonizedCounts(p_, mean, rng);
}

}  // namespace augtest
