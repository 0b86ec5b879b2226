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

#include "fibmahler/bignat.hpp"

#include <limits>
#include <stdexcept>

namespace fibmahler {

BigNat::BigNat(std::uint64_t value) {
  // mpz_class has no portable unsigned-64 constructor.
  mpz_import(value_.get_mpz_t(), 1, 1, sizeof(value), 0, 0, &value);
}

BigNat::BigNat(mpz_class value) : value_(std::move(value)) {
  if (value_ < 0) throw std::domain_error("BigNat: negative value");
}

BigNat BigNat::from_string(const std::string& decimal) {
  mpz_class v;
  if (decimal.empty() || v.set_str(decimal, 10) != 0) {
    throw std::invalid_argument("BigNat: not a decimal integer: '" + decimal + "'");
  }
  return BigNat(std::move(v));
}

bool BigNat::fits_u64() const { return bit_length() <= 64; }

std::uint64_t BigNat::to_u64() const {
  if (!fits_u64()) throw std::overflow_error("BigNat: value exceeds 64 bits");
  std::uint64_t out = 0;
  mpz_export(&out, nullptr, 1, sizeof(out), 0, 0, value_.get_mpz_t());
  return out;
}

std::size_t BigNat::bit_length() const {
  if (value_ == 0) return 0;
  return mpz_sizeinbase(value_.get_mpz_t(), 2);
}

BigNat operator+(const BigNat& a, const BigNat& b) { return BigNat(mpz_class(a.value_ + b.value_)); }

BigNat operator*(const BigNat& a, const BigNat& b) { return BigNat(mpz_class(a.value_ * b.value_)); }

BigNat operator-(const BigNat& a, const BigNat& b) {
  if (b > a) throw std::domain_error("BigNat: subtraction would be negative");
  return BigNat(mpz_class(a.mpz() - b.mpz()));
}

BigNat pow(const BigNat& base, const BigNat& exponent) {
  if (exponent.bit_length() > std::numeric_limits<unsigned long>::digits) {
    throw std::overflow_error("pow: exponent too large");
  }
  mpz_class out;
  mpz_pow_ui(out.get_mpz_t(), base.mpz().get_mpz_t(), mpz_get_ui(exponent.mpz().get_mpz_t()));
  return BigNat(std::move(out));
}

}  // namespace fibmahler
