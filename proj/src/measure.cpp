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

#include "fibmahler/measure.hpp"

#include <optional>
#include <stdexcept>
#include <string>

namespace fibmahler {

namespace {

void require_positive_t(const Real& t) {
  if (!(t.sign() > 0) || !t.is_finite()) throw std::domain_error("measure function: t must be positive and finite");
}

}  // namespace

PrimePair::PrimePair(std::uint64_t p, std::uint64_t q, long precisionBits)
    : p_(p), q_(q), logP_(0.0, precisionBits), logQ_(0.0, precisionBits), ratio_(0.0, precisionBits) {
  if (p == q) throw std::domain_error("prime pair: p and q must differ");
  if (p < 2 || !is_prime(p)) throw std::domain_error("prime pair: " + std::to_string(p) + " is not prime");
  if (q < 2 || !is_prime(q)) throw std::domain_error("prime pair: " + std::to_string(q) + " is not prime");
  logP_ = log(Real::from_u64(p, precisionBits));
  logQ_ = log(Real::from_u64(q, precisionBits));
  ratio_ = logQ_ / logP_;
}

const char* to_string(Branch b) {
  switch (b) {
    case Branch::PTerm: return "p";
    case Branch::QTerm: return "q";
    case Branch::Tie: return "tie";
  }
  return "?";
}

MahlerValue mahler_rational(const PrimePair& pair, const BigNat& a, const BigNat& b) {
  const long bits = pair.precision_bits();
  MahlerValue out;
  if (a.is_zero() && b.is_zero()) {
    out.value = Real(0.0, bits);
    out.degenerate = true;
    return out;
  }
  switch (cmp_power(pair.p(), a, pair.q(), b)) {
    case Ordering::Greater:
      out.branch = Branch::PTerm;
      out.value = Real::from_integer(a, bits) * pair.log_p();
      break;
    case Ordering::Less:
      out.branch = Branch::QTerm;
      out.value = Real::from_integer(b, bits) * pair.log_q();
      break;
    case Ordering::Equal:
      out.branch = Branch::Tie;
      out.value = Real::from_integer(a, bits) * pair.log_p();
      break;
  }
  return out;
}

CoefficientVector::CoefficientVector(const PrimePair& pair, int N) : pair_(pair), N_(N) {
  if (N < 1) throw std::domain_error("coefficient vector: N must be positive");
  const FibTable h(N + 1);
  coeffs_.reserve(static_cast<std::size_t>(N) + 1);
  for (int i = 1; i <= N + 1; ++i) {
    auto m = mahler_rational(pair, h.fib(i), h.fib(i - 1));
    MeasureCoefficient c;
    c.index = i;
    c.logValue = log(m.value);
    c.value = std::move(m.value);
    c.branch = m.branch;
    coeffs_.push_back(std::move(c));
  }
}

const MeasureCoefficient& CoefficientVector::at(int i) const {
  if (i < 1 || i > N_ + 1) {
    throw std::out_of_range("coefficient index " + std::to_string(i) + " outside [1, " + std::to_string(N_ + 1) + "]");
  }
  return coeffs_[static_cast<std::size_t>(i - 1)];
}

bool CoefficientVector::strictly_increasing() const {
  for (std::size_t k = 1; k < coeffs_.size(); ++k) {
    if (!(coeffs_[k - 1].value < coeffs_[k].value)) return false;
  }
  return true;
}

CoefficientVector coefficient_vector(const PrimePair& pair, int N) { return CoefficientVector(pair, N); }

Real eval_measure_fn(const ExponentVector& x, const CoefficientVector& coeffs, const Real& t) {
  require_positive_t(t);
  if (x.dimension() > coeffs.dimension() + 1) throw std::domain_error("measure function: vector longer than coefficients");
  // f = exp((M + log sum exp(e_i - M)) / t), e_i = t log c_i + log x_i.
  std::vector<Real> exponents;
  std::optional<Real> top;
  for (int i = 1; i <= x.dimension(); ++i) {
    if (x.slot(i) == 0) continue;
    Real e = t * coeffs.log_value(i) + log(Real::from_u64(x.slot(i), coeffs.precision_bits()));
    if (!top || e > *top) top = e;
    exponents.push_back(std::move(e));
  }
  if (!top) throw std::domain_error("measure function: zero vector");
  Real sum(0.0, coeffs.precision_bits());
  for (const auto& e : exponents) sum += exp(e - *top);
  return exp((*top + log(sum)) / t);
}

Real eval_measure_pow(const ExponentVector& x, const CoefficientVector& coeffs, const Real& t) {
  require_positive_t(t);
  Real sum(0.0, std::max(coeffs.precision_bits(), t.precision_bits()));
  for (int i = 1; i <= x.dimension(); ++i) {
    if (x.slot(i) == 0) continue;
    sum += exp(t * coeffs.log_value(i)) * static_cast<std::uint64_t>(x.slot(i));
  }
  return sum;
}

std::vector<std::pair<BigNat, BigNat>> omega(const ExponentVector& x) {
  const FibTable h(x.dimension());
  std::vector<std::pair<BigNat, BigNat>> out;
  for (int i = 1; i <= x.dimension(); ++i) {
    for (std::uint32_t k = 0; k < x.slot(i); ++k) out.emplace_back(h.fib(i), h.fib(i - 1));
  }
  return out;
}

ScaledPowers::ScaledPowers(const CoefficientVector& coeffs, const Real& t, int refIndex)
    : coeffs_(&coeffs), t_(t), ref_(refIndex) {
  require_positive_t(t);
  const Real& logRef = coeffs.log_value(refIndex);
  w_.reserve(coeffs.coefficients().size());
  for (const auto& c : coeffs.coefficients()) w_.push_back(exp(t * (c.logValue - logRef)));
}

Real ScaledPowers::weighted_sum(std::span<const std::uint32_t> x) const {
  Real sum(0.0, coeffs_->precision_bits());
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (x[k] != 0) sum += w_[k] * static_cast<std::uint64_t>(x[k]);
  }
  return sum;
}

Real ScaledPowers::weighted_sum(std::span<const std::uint16_t> x) const {
  Real sum(0.0, coeffs_->precision_bits());
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (x[k] != 0) sum += w_[k] * static_cast<std::uint64_t>(x[k]);
  }
  return sum;
}

Real ScaledPowers::measure(const Real& weightedSum) const {
  return coeffs_->value(ref_) * exp(log(weightedSum) / t_);
}

}  // namespace fibmahler
