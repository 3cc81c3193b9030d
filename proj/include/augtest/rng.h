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

#ifndef AUGTEST_RNG_H_
#define AUGTEST_RNG_H_

#include <cstdint>
#include <limits>

namespace augtest {

// Counter-based generator. The i-th output of a stream is a pure function of
// (key, i), so streams can be split by index without shared state.
class Rng {
 public:
  using result_type = uint64_t;

  explicit Rng(uint64_t seed);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()();

  // Uniform on [0, 1) with 53 bits.
  double Uniform01();
  // Uniform on the open interval (0, 1).
  double UniformOpen01();
  // Uniform integer in [0, bound). bound must be positive.
  uint64_t UniformInt(uint64_t bound);

  // Independent child stream. Does not advance this stream.
  Rng Split(uint64_t index) const;

  uint64_t key() const { return key_; }
  uint64_t counter() const { return counter_; }

 private:
  Rng(uint64_t key, uint64_t counter) : key_(key), counter_(counter) {}

  uint64_t key_;
  uint64_t counter_;
};

uint64_t Mix64(uint64_t z);

}  // namespace augtest

#endif  // AUGTEST_RNG_H_
