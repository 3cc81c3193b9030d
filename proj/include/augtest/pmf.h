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

#ifndef AUGTEST_PMF_H_
#define AUGTEST_PMF_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace augtest {

inline constexpr double kPmfTolerance = 1e-12;

// Probability vector over the domain {0, ..., n-1}.
class Pmf {
 public:
  // Requires non-negative entries summing to 1 within kPmfTolerance.
  static Pmf Create(std::vector<double> probs);
  // Scales non-negative weights to sum to 1.
  static Pmf Renormalized(std::vector<double> weights);
  static Pmf Uniform(int64_t n);
  static Pmf PointMass(int64_t n, int64_t i);

  int64_t n() const { return static_cast<int64_t>(probs_.size()); }
  double operator[](int64_t i) const { return probs_[i]; }
  const std::vector<double>& probs() const { return probs_; }

  // Total mass of the given index set.
  double Mass(const std::vector<int64_t>& indices) const;

 private:
  explicit Pmf(std::vector<double> probs) : probs_(std::move(probs)) {}

  std::vector<double> probs_;
};

double TvDistance(const Pmf& p, const Pmf& q);
double L2NormSq(const Pmf& p);

// Accepts one probability per line, or a comma separated list. Blank lines
// and lines starting with '#' are ignored.
Pmf ParsePmf(std::string_view text, bool renormalize = false);
Pmf LoadPmf(const std::string& path, bool renormalize = false);
std::string FormatPmf(const Pmf& p);

}  // namespace augtest

#endif  // AUGTEST_PMF_H_
