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

#include <mpfr.h>

#include <compare>
#include <cstdint>
#include <string>

#include "fibmahler/bignat.hpp"

namespace fibmahler {

/// Binary floating-point scalar with a runtime-selected mantissa width,
/// backed by MPFR. Every value carries its own precision; the result of a
/// binary operation takes the larger precision of its operands and is
/// correctly rounded to nearest.
class HighPrecisionReal {
 public:
  static constexpr long kDefaultPrecisionBits = 128;

  HighPrecisionReal() : HighPrecisionReal(0.0) {}
  HighPrecisionReal(double value,  // NOLINT(google-explicit-constructor)
                    long precisionBits = kDefaultPrecisionBits);

  static HighPrecisionReal from_integer(const BigNat& value,
                                        long precisionBits = kDefaultPrecisionBits);
  static HighPrecisionReal from_u64(std::uint64_t value,
                                    long precisionBits = kDefaultPrecisionBits);
  /// Parses a decimal literal, rounding to the requested precision.
  static HighPrecisionReal from_string(const std::string& decimal,
                                       long precisionBits = kDefaultPrecisionBits);
  static HighPrecisionReal infinity(long precisionBits = kDefaultPrecisionBits);

  HighPrecisionReal(const HighPrecisionReal& other);
  HighPrecisionReal(HighPrecisionReal&& other) noexcept;
  HighPrecisionReal& operator=(const HighPrecisionReal& other);
  HighPrecisionReal& operator=(HighPrecisionReal&& other) noexcept;
  ~HighPrecisionReal();

  long precision_bits() const { return static_cast<long>(mpfr_get_prec(value_)); }
  /// Copy rounded to a new precision.
  HighPrecisionReal with_precision(long precisionBits) const;

  double to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }
  /// Decimal rendering with the given number of significant digits.
  std::string str(int significantDigits = 15) const;

  bool is_finite() const { return mpfr_number_p(value_) != 0; }
  bool is_zero() const { return mpfr_zero_p(value_) != 0; }
  int sign() const { return mpfr_sgn(value_); }
  /// Unit in the last place of this value at its own precision.
  HighPrecisionReal ulp() const;

  mpfr_srcptr get() const { return value_; }
  mpfr_ptr get_mutable() { return value_; }

  HighPrecisionReal& operator+=(const HighPrecisionReal& rhs);
  HighPrecisionReal& operator-=(const HighPrecisionReal& rhs);
  HighPrecisionReal& operator*=(const HighPrecisionReal& rhs);
  HighPrecisionReal& operator/=(const HighPrecisionReal& rhs);

  friend HighPrecisionReal operator+(const HighPrecisionReal& a, const HighPrecisionReal& b);
  friend HighPrecisionReal operator-(const HighPrecisionReal& a, const HighPrecisionReal& b);
  friend HighPrecisionReal operator*(const HighPrecisionReal& a, const HighPrecisionReal& b);
  friend HighPrecisionReal operator/(const HighPrecisionReal& a, const HighPrecisionReal& b);
  friend HighPrecisionReal operator-(const HighPrecisionReal& a);
  friend HighPrecisionReal operator*(const HighPrecisionReal& a, std::uint64_t k);
  friend HighPrecisionReal operator*(std::uint64_t k, const HighPrecisionReal& a) { return a * k; }

  friend bool operator==(const HighPrecisionReal& a, const HighPrecisionReal& b) {
    return mpfr_equal_p(a.value_, b.value_) != 0;
  }
  friend std::partial_ordering operator<=>(const HighPrecisionReal& a,
                                           const HighPrecisionReal& b);

 private:
  explicit HighPrecisionReal(long precisionBits, std::nullptr_t);

  mpfr_t value_;
};

using Real = HighPrecisionReal;

Real exp(const Real& x);
Real log(const Real& x);
Real sqrt(const Real& x);
Real abs(const Real& x);
/// base^exponent for base > 0.
Real pow(const Real& base, const Real& exponent);
const Real& min(const Real& a, const Real& b);
const Real& max(const Real& a, const Real& b);

}  // namespace fibmahler
