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

#include <gmpxx.h>

#include <cstdint>
#include <random>
#include <stdexcept>

#include "doctest.h"
#include "fibmahler/arithmetic.hpp"
#include "fibmahler/bignat.hpp"
#include "fibmahler/real.hpp"

using namespace fibmahler;

namespace {

bool trial_division_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

Ordering full_compare(std::uint64_t p, unsigned long a, std::uint64_t q, unsigned long b) {
  mpz_class lhs;
  mpz_class rhs;
  mpz_ui_pow_ui(lhs.get_mpz_t(), p, a);
  mpz_ui_pow_ui(rhs.get_mpz_t(), q, b);
  const int c = cmp(lhs, rhs);
  return c < 0 ? Ordering::Less : (c > 0 ? Ordering::Greater : Ordering::Equal);
}

}  // namespace

TEST_CASE("fibonacci table matches a plain loop and GMP") {
  const FibTable table(300);
  std::uint64_t a = 0;
  std::uint64_t b = 1;
  for (int i = 0; i <= 93; ++i) {
    CHECK(table.fib_u64(i) == a);
    const auto next = a + b;
    a = b;
    b = next;
  }
  for (int i : {94, 150, 300}) {
    mpz_class expected;
    mpz_fib_ui(expected.get_mpz_t(), static_cast<unsigned long>(i));
    CHECK(table.fib(i).mpz() == expected);
  }
  CHECK_THROWS_AS(table.fib(301), std::out_of_range);
  CHECK_THROWS_AS(table.fib(-1), std::out_of_range);
  CHECK_THROWS_AS(table.fib_u64(94), std::overflow_error);
  CHECK(fibonacci_u64(13).back() == 233);
}

TEST_CASE("cmp_power agrees with full exponentiation") {
  std::mt19937_64 rng(20261018);
  std::uniform_int_distribution<std::uint64_t> base(2, 5000);
  std::uniform_int_distribution<unsigned long> expo(0, 400);
  for (int k = 0; k < 2000; ++k) {
    const auto p = base(rng);
    const auto q = (k % 5 == 0) ? p : base(rng);
    const auto a = expo(rng);
    const auto b = (k % 7 == 0) ? a : expo(rng);
    CHECK(cmp_power(p, a, q, b) == full_compare(p, a, q, b));
  }
  // Equal values with different bases.
  CHECK(cmp_power(4, 3, 8, 2) == Ordering::Equal);
  CHECK(cmp_power(9, 5, 27, 3) == Ordering::Greater);
  CHECK(cmp_power(7, 0, 11, 0) == Ordering::Equal);
  CHECK_THROWS_AS(cmp_power(1, 3, 5, 2), std::domain_error);
}

TEST_CASE("cmp_power on the default pair follows the Fibonacci exponents") {
  const FibTable h(30);
  for (int n = 1; n <= 25; ++n) {
    const unsigned long a = static_cast<unsigned long>(h.fib_u64(n));
    const unsigned long b = static_cast<unsigned long>(h.fib_u64(n - 1));
    if (a > 200000) break;
    CHECK(cmp_power(1879, h.fib(n), 198301, h.fib(n - 1)) == full_compare(1879, a, 198301, b));
  }
  // Large exponents decided by bit-length bounds alone.
  CHECK(cmp_power(1879, h.fib(30), 198301, h.fib(28)) == Ordering::Greater);
}

TEST_CASE("is_prime matches trial division") {
  for (std::uint64_t n = 2; n < 20000; ++n) CHECK(is_prime(n) == trial_division_prime(n));
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<std::uint64_t> big(1000000, 1000000000000ULL);
  for (int k = 0; k < 300; ++k) {
    const auto n = big(rng);
    CHECK(is_prime(n) == trial_division_prime(n));
  }
  CHECK(is_prime(1879));
  CHECK(is_prime(198301));
  CHECK(is_prime(2305843009213693951ULL));    // 2^61 - 1
  CHECK(is_prime(18446744073709551557ULL));   // largest 64-bit prime
  CHECK_FALSE(is_prime(3215031751ULL));       // strong pseudoprime to bases 2, 3, 5, 7
  CHECK_FALSE(is_prime(561));
  CHECK_THROWS_AS(is_prime(1), std::domain_error);
}

TEST_CASE("golden ratio is stable across precisions") {
  const Real phi96 = golden_ratio(96);
  const Real phi128 = golden_ratio(128);
  const Real phi256 = golden_ratio(256);
  CHECK(abs(phi96.with_precision(256) - phi256).to_double() < 2e-28);
  CHECK(abs(phi128.with_precision(256) - phi256).to_double() < 1e-38);
  // phi^2 = phi + 1
  CHECK(abs(phi256 * phi256 - phi256 - Real(1.0, 256)).to_double() < 1e-75);
  CHECK(phi128.str(15) == "1.61803398874989");
  CHECK_THROWS_AS(golden_ratio(64), std::domain_error);
}

TEST_CASE("high precision real basics") {
  const Real x = Real::from_string("1879", 200);
  CHECK(x.precision_bits() == 200);
  CHECK(abs(exp(log(x)) - x).to_double() < 1e-50);
  CHECK(Real::from_integer(BigNat::from_string("123456789012345678901234567890"), 200).str(30) ==
        "123456789012345678901234567890");
  CHECK((Real(1.0) < Real(2.0)));
  CHECK(Real::infinity().str() == "inf");
  CHECK_THROWS_AS(log(Real(0.0)), std::domain_error);
  const Real mixed = Real(1.0, 64) + Real(1.0, 256);
  CHECK(mixed.precision_bits() == 256);
}

TEST_CASE("BigNat arithmetic") {
  const BigNat a = BigNat::from_string("340282366920938463463374607431768211456");  // 2^128
  CHECK(a.bit_length() == 129);
  CHECK_FALSE(a.fits_u64());
  CHECK_THROWS_AS(a.to_u64(), std::overflow_error);
  CHECK(pow(BigNat(2), BigNat(128)) == a);
  CHECK_THROWS_AS(BigNat(3) - BigNat(4), std::domain_error);
  CHECK((BigNat(5) - BigNat(3)).to_u64() == 2);
  CHECK(BigNat(0).bit_length() == 0);
}
