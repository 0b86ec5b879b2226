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

#include "fibmahler/arithmetic.hpp"

#include <array>
#include <bit>
#include <stdexcept>
#include <string>

namespace fibmahler {

FibTable::FibTable(int maxIndex) {
  if (maxIndex < 2) throw std::domain_error("FibTable: maxIndex must be at least 2");
  values_.reserve(static_cast<std::size_t>(maxIndex) + 1);
  values_.emplace_back(0);
  values_.emplace_back(1);
  for (int i = 2; i <= maxIndex; ++i) {
    values_.push_back(values_[i - 1] + values_[i - 2]);
  }
}

const BigNat& FibTable::fib(int i) const {
  if (i < 0 || i > max_index()) {
    throw std::out_of_range("FibTable: index " + std::to_string(i) + " outside [0, " +
                            std::to_string(max_index()) + "]");
  }
  return values_[static_cast<std::size_t>(i)];
}

std::uint64_t FibTable::fib_u64(int i) const { return fib(i).to_u64(); }

std::vector<std::uint64_t> fibonacci_u64(int maxIndex) {
  if (maxIndex < 0 || maxIndex > 93) throw std::out_of_range("fibonacci_u64: index beyond h_93");
  std::vector<std::uint64_t> h(static_cast<std::size_t>(std::max(maxIndex, 1)) + 1);
  h[0] = 0;
  h[1] = 1;
  for (std::size_t i = 2; i < h.size(); ++i) h[i] = h[i - 1] + h[i - 2];
  h.resize(static_cast<std::size_t>(maxIndex) + 1);
  return h;
}

Ordering cmp_power(std::uint64_t p, const BigNat& a, std::uint64_t q, const BigNat& b) {
  if (p < 2 || q < 2) throw std::domain_error("cmp_power: bases must be at least 2");
  if (a.is_zero() || b.is_zero()) {
    if (a.is_zero() && b.is_zero()) return Ordering::Equal;
    return a.is_zero() ? Ordering::Less : Ordering::Greater;
  }
  if (p == q) {
    const auto c = a <=> b;
    return c < 0 ? Ordering::Less : (c > 0 ? Ordering::Greater : Ordering::Equal);
  }

  // 2^(a(Lp-1)) <= p^a < 2^(a Lp), likewise for q^b.
  const BigNat lenP(static_cast<std::uint64_t>(std::bit_width(p)));
  const BigNat lenQ(static_cast<std::uint64_t>(std::bit_width(q)));
  const BigNat lowP = a * (lenP - BigNat(1));
  const BigNat highP = a * lenP;
  const BigNat lowQ = b * (lenQ - BigNat(1));
  const BigNat highQ = b * lenQ;
  if (highP <= lowQ) return Ordering::Less;
  if (highQ <= lowP) return Ordering::Greater;

  const BigNat lhs = pow(BigNat(p), a);
  const BigNat rhs = pow(BigNat(q), b);
  const auto c = lhs <=> rhs;
  return c < 0 ? Ordering::Less : (c > 0 ? Ordering::Greater : Ordering::Equal);
}

namespace {

using u128 = unsigned __int128;

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t e, std::uint64_t m) {
  std::uint64_t result = 1;
  base %= m;
  while (e > 0) {
    if (e & 1U) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    e >>= 1U;
  }
  return result;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) throw std::domain_error("is_prime: n must be at least 2");
  // The first twelve primes form a deterministic witness set below 3.3e24.
  static constexpr std::array<std::uint64_t, 12> kWitnesses = {2,  3,  5,  7,  11, 13,
                                                               17, 19, 23, 29, 31, 37};
  for (const std::uint64_t w : kWitnesses) {
    if (n == w) return true;
    if (n % w == 0) return false;
  }
  const int s = std::countr_zero(n - 1);
  const std::uint64_t d = (n - 1) >> s;
  for (const std::uint64_t w : kWitnesses) {
    std::uint64_t x = pow_mod(w, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

Real golden_ratio(long precisionBits) {
  if (precisionBits < 96) throw std::domain_error("golden_ratio: precision below 96 bits");
  const long guard = precisionBits + 32;
  Real five = Real::from_u64(5, guard);
  Real phi = (Real(1.0, guard) + sqrt(five)) / Real(2.0, guard);
  return phi.with_precision(precisionBits);
}

}  // namespace fibmahler
