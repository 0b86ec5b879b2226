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

#include "fibmahler/real.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace fibmahler {
namespace {

mpfr_prec_t checked_precision(long bits) {
  if (bits < MPFR_PREC_MIN || bits > 1L << 20) {
    throw std::domain_error("HighPrecisionReal: unsupported precision " + std::to_string(bits));
  }
  return static_cast<mpfr_prec_t>(bits);
}

long wider(const Real& a, const Real& b) { return std::max(a.precision_bits(), b.precision_bits()); }

}  // namespace

HighPrecisionReal::HighPrecisionReal(long precisionBits, std::nullptr_t) {
  mpfr_init2(value_, checked_precision(precisionBits));
}

HighPrecisionReal::HighPrecisionReal(double value, long precisionBits)
    : HighPrecisionReal(precisionBits, nullptr) {
  mpfr_set_d(value_, value, MPFR_RNDN);
}

HighPrecisionReal HighPrecisionReal::from_integer(const BigNat& value, long precisionBits) {
  HighPrecisionReal out(precisionBits, nullptr);
  mpfr_set_z(out.value_, value.mpz().get_mpz_t(), MPFR_RNDN);
  return out;
}

HighPrecisionReal HighPrecisionReal::from_u64(std::uint64_t value, long precisionBits) {
  return from_integer(BigNat(value), precisionBits);
}

HighPrecisionReal HighPrecisionReal::from_string(const std::string& decimal, long precisionBits) {
  HighPrecisionReal out(precisionBits, nullptr);
  if (mpfr_set_str(out.value_, decimal.c_str(), 10, MPFR_RNDN) != 0) {
    throw std::invalid_argument("HighPrecisionReal: cannot parse '" + decimal + "'");
  }
  return out;
}

HighPrecisionReal HighPrecisionReal::infinity(long precisionBits) {
  HighPrecisionReal out(precisionBits, nullptr);
  mpfr_set_inf(out.value_, 1);
  return out;
}

HighPrecisionReal::HighPrecisionReal(const HighPrecisionReal& other)
    : HighPrecisionReal(other.precision_bits(), nullptr) {
  mpfr_set(value_, other.value_, MPFR_RNDN);
}

HighPrecisionReal::HighPrecisionReal(HighPrecisionReal&& other) noexcept {
  mpfr_init2(value_, mpfr_get_prec(other.value_));
  mpfr_swap(value_, other.value_);
}

HighPrecisionReal& HighPrecisionReal::operator=(const HighPrecisionReal& other) {
  if (this != &other) {
    mpfr_set_prec(value_, mpfr_get_prec(other.value_));
    mpfr_set(value_, other.value_, MPFR_RNDN);
  }
  return *this;
}

HighPrecisionReal& HighPrecisionReal::operator=(HighPrecisionReal&& other) noexcept {
  mpfr_swap(value_, other.value_);
  return *this;
}

HighPrecisionReal::~HighPrecisionReal() { mpfr_clear(value_); }

HighPrecisionReal HighPrecisionReal::with_precision(long precisionBits) const {
  HighPrecisionReal out(precisionBits, nullptr);
  mpfr_set(out.value_, value_, MPFR_RNDN);
  return out;
}

std::string HighPrecisionReal::str(int significantDigits) const {
  if (mpfr_nan_p(value_)) return "nan";
  if (mpfr_inf_p(value_)) return sign() > 0 ? "inf" : "-inf";
  // %.*Rg mirrors printf's %g: shortest of fixed/scientific, trailing zeros trimmed.
  const int n = mpfr_snprintf(nullptr, 0, "%.*Rg", significantDigits, value_);
  std::vector<char> buf(static_cast<std::size_t>(n) + 1);
  mpfr_snprintf(buf.data(), buf.size(), "%.*Rg", significantDigits, value_);
  return std::string(buf.data(), static_cast<std::size_t>(n));
}

HighPrecisionReal HighPrecisionReal::ulp() const {
  HighPrecisionReal out(precision_bits(), nullptr);
  if (!is_finite() || is_zero()) {
    mpfr_set_zero(out.value_, 1);
    return out;
  }
  mpfr_set_ui_2exp(out.value_, 1, mpfr_get_exp(value_) - mpfr_get_prec(value_), MPFR_RNDN);
  return out;
}

HighPrecisionReal& HighPrecisionReal::operator+=(const HighPrecisionReal& rhs) {
  return *this = *this + rhs;
}
HighPrecisionReal& HighPrecisionReal::operator-=(const HighPrecisionReal& rhs) {
  return *this = *this - rhs;
}
HighPrecisionReal& HighPrecisionReal::operator*=(const HighPrecisionReal& rhs) {
  return *this = *this * rhs;
}
HighPrecisionReal& HighPrecisionReal::operator/=(const HighPrecisionReal& rhs) {
  return *this = *this / rhs;
}

HighPrecisionReal operator+(const HighPrecisionReal& a, const HighPrecisionReal& b) {
  HighPrecisionReal out(wider(a, b), nullptr);
  mpfr_add(out.value_, a.value_, b.value_, MPFR_RNDN);
  return out;
}

HighPrecisionReal operator-(const HighPrecisionReal& a, const HighPrecisionReal& b) {
  HighPrecisionReal out(wider(a, b), nullptr);
  mpfr_sub(out.value_, a.value_, b.value_, MPFR_RNDN);
  return out;
}

HighPrecisionReal operator*(const HighPrecisionReal& a, const HighPrecisionReal& b) {
  HighPrecisionReal out(wider(a, b), nullptr);
  mpfr_mul(out.value_, a.value_, b.value_, MPFR_RNDN);
  return out;
}

HighPrecisionReal operator/(const HighPrecisionReal& a, const HighPrecisionReal& b) {
  HighPrecisionReal out(wider(a, b), nullptr);
  mpfr_div(out.value_, a.value_, b.value_, MPFR_RNDN);
  return out;
}

HighPrecisionReal operator-(const HighPrecisionReal& a) {
  HighPrecisionReal out(a.precision_bits(), nullptr);
  mpfr_neg(out.value_, a.value_, MPFR_RNDN);
  return out;
}

HighPrecisionReal operator*(const HighPrecisionReal& a, std::uint64_t k) {
  return a * HighPrecisionReal::from_u64(k, a.precision_bits());
}

std::partial_ordering operator<=>(const HighPrecisionReal& a, const HighPrecisionReal& b) {
  if (mpfr_unordered_p(a.value_, b.value_)) return std::partial_ordering::unordered;
  const int c = mpfr_cmp(a.value_, b.value_);
  return c < 0 ? std::partial_ordering::less
               : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
}

Real exp(const Real& x) {
  Real out = x;
  mpfr_exp(out.get_mutable(), x.get(), MPFR_RNDN);
  return out;
}

Real log(const Real& x) {
  if (x.sign() <= 0) throw std::domain_error("log of non-positive value");
  Real out = x;
  mpfr_log(out.get_mutable(), x.get(), MPFR_RNDN);
  return out;
}

Real sqrt(const Real& x) {
  if (x.sign() < 0) throw std::domain_error("sqrt of negative value");
  Real out = x;
  mpfr_sqrt(out.get_mutable(), x.get(), MPFR_RNDN);
  return out;
}

Real abs(const Real& x) { return x.sign() < 0 ? -x : x; }

Real pow(const Real& base, const Real& exponent) {
  if (base.sign() <= 0) throw std::domain_error("pow requires a positive base");
  Real out = base.precision_bits() >= exponent.precision_bits() ? base : exponent;
  mpfr_pow(out.get_mutable(), base.get(), exponent.get(), MPFR_RNDN);
  return out;
}

const Real& min(const Real& a, const Real& b) { return b < a ? b : a; }
const Real& max(const Real& a, const Real& b) { return a < b ? b : a; }

}  // namespace fibmahler
