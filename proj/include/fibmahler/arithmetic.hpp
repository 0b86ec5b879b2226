// Copyright 2026 The fibmahler Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <vector>

#include "fibmahler/bignat.hpp"
#include "fibmahler/real.hpp"

namespace fibmahler {

/// Fibonacci numbers h_0 = 0, h_1 = 1, h_i = h_{i-1} + h_{i-2} for
/// 0 <= i <= max_index().
class FibTable {
 public:
  explicit FibTable(int maxIndex);

  int max_index() const { return static_cast<int>(values_.size()) - 1; }
  /// Throws std::out_of_range outside [0, max_index()].
  const BigNat& fib(int i) const;
  /// fib(i) as a machine word; throws std::overflow_error past h_93.
  std::uint64_t fib_u64(int i) const;

 private:
  std::vector<BigNat> values_;
};

/// Machine-word Fibonacci numbers h_0..h_maxIndex (maxIndex <= 93).
std::vector<std::uint64_t> fibonacci_u64(int maxIndex);

enum class Ordering { Less, Equal, Greater };

/// Exact order of p^a against q^b. Bit-length bounds decide most inputs;
/// overlapping bounds fall back to full exponentiation.
Ordering cmp_power(std::uint64_t p, const BigNat& a, std::uint64_t q, const BigNat& b);

/// Deterministic Miller-Rabin, exact for every 64-bit input.
/// Throws std::domain_error for n < 2.
bool is_prime(std::uint64_t n);

/// (1 + sqrt 5) / 2 correctly rounded at the given precision (>= 96 bits).
Real golden_ratio(long precisionBits = Real::kDefaultPrecisionBits);

}  // namespace fibmahler
