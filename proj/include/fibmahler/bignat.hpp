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

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <string>

namespace fibmahler {

/// Arbitrary-precision non-negative integer.
class BigNat {
 public:
  BigNat() = default;
  BigNat(std::uint64_t value);  // NOLINT(google-explicit-constructor)
  explicit BigNat(mpz_class value);

  static BigNat from_string(const std::string& decimal);

  const mpz_class& mpz() const { return value_; }

  bool fits_u64() const;
  /// Throws std::overflow_error when the value needs more than 64 bits.
  std::uint64_t to_u64() const;
  /// Number of significant bits; 0 for zero.
  std::size_t bit_length() const;
  bool is_zero() const { return value_ == 0; }
  std::string str() const { return value_.get_str(); }

  friend BigNat operator+(const BigNat& a, const BigNat& b);
  friend BigNat operator*(const BigNat& a, const BigNat& b);
  /// Throws std::domain_error when b > a.
  friend BigNat operator-(const BigNat& a, const BigNat& b);

  friend bool operator==(const BigNat& a, const BigNat& b) {
    return cmp(a.value_, b.value_) == 0;
  }
  friend std::strong_ordering operator<=>(const BigNat& a, const BigNat& b) {
    const int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  mpz_class value_{0};
};

/// base^exponent, exact. The exponent must fit in an unsigned long.
BigNat pow(const BigNat& base, const BigNat& exponent);

}  // namespace fibmahler
