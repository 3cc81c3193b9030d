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

#include "augtest/pmf.h"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace augtest {
namespace {

double KahanSum(const std::vector<double>& v) {
  double sum = 0.0;
  double c = 0.0;
  for (double x : v) {
    const double y = x - c;
    const double t = sum + y;
    c = (t - sum) - y;
    sum = t;
  }
  return sum;
}

void CheckEntries(const std::vector<double>& v) {
  if (v.empty()) throw std::invalid_argument("pmf: empty domain");
  for (double x : v) {
    if (!(x >= 0.0) || !std::isfinite(x)) {
      throw std::invalid_argument("pmf: entries must be finite and >= 0");
    }
  }
}

std::string Trim(std::string_view s) {
  size_t b = 0;
  size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

}  // namespace

Pmf Pmf::Create(std::vector<double> probs) {
  CheckEntries(probs);
  const double total = KahanSum(probs);
  if (std::abs(total - 1.0) > kPmfTolerance) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "pmf: entries sum to " << total << ", not 1";
    throw std::invalid_argument(msg.str());
  }
  return Pmf(std::move(probs));
}

Pmf Pmf::Renormalized(std::vector<double> weights) {
  CheckEntries(weights);
  const double total = KahanSum(weights);
  if (!(total > 0.0)) throw std::invalid_argument("pmf: zero total weight");
  for (double& w : weights) w /= total;
  return Pmf(std::move(weights));
}

Pmf Pmf::Uniform(int64_t n) {
  if (n < 1) throw std::invalid_argument("pmf: n must be >= 1");
  return Pmf(std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

Pmf Pmf::PointMass(int64_t n, int64_t i) {
  if (n < 1 || i < 0 || i >= n) {
    throw std::invalid_argument("pmf: point mass index out of range");
  }
  std::vector<double> v(n, 0.0);
  v[i] = 1.0;
  return Pmf(std::move(v));
}

double Pmf::Mass(const std::vector<int64_t>& indices) const {
  double m = 0.0;
  for (int64_t i : indices) m += probs_.at(i);
  return m;
}

double TvDistance(const Pmf& p, const Pmf& q) {
  if (p.n() != q.n()) throw std::invalid_argument("tv: domain mismatch");
  double s = 0.0;
  for (int64_t i = 0; i < p.n(); ++i) s += std::abs(p[i] - q[i]);
  return 0.5 * s;
}

double L2NormSq(const Pmf& p) {
  double s = 0.0;
  for (double x : p.probs()) s += x * x;
  return s;
}

Pmf ParsePmf(std::string_view text, bool renormalize) {
  std::vector<double> v;
  std::string buf(text);
  for (char& c : buf) {
    if (c == ',' || c == ';') c = '\n';
  }
  std::istringstream in(buf);
  std::string line;
  while (std::getline(in, line)) {
    const std::string t = Trim(line);
    if (t.empty() || t[0] == '#') continue;
    size_t used = 0;
    double x = 0.0;
    try {
      x = std::stod(t, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("pmf: cannot parse '" + t + "'");
    }
    if (used != t.size()) {
      throw std::invalid_argument("pmf: cannot parse '" + t + "'");
    }
    v.push_back(x);
  }
  return renormalize ? Pmf::Renormalized(std::move(v))
                     : Pmf::Create(std::move(v));
}

Pmf LoadPmf(const std::string& path, bool renormalize) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("pmf: cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ParsePmf(ss.str(), renormalize);
}

std::string FormatPmf(const Pmf& p) {
  std::string out;
  char buf[64];
  for (double x : p.probs()) {
    std::snprintf(buf, sizeof(buf), "%.17g\n", x);
    out += buf;
  }
  return out;
}

}  // namespace augtest
