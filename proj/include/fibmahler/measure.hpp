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
#include <span>
#include <utility>
#include <vector>

#include "fibmahler/arithmetic.hpp"
#include "fibmahler/bignat.hpp"
#include "fibmahler/lattice.hpp"
#include "fibmahler/real.hpp"

namespace fibmahler {

/// Two distinct primes with their logarithms at a fixed working precision.
class PrimePair {
 public:
  /// Throws std::domain_error unless p and q are distinct primes.
  PrimePair(std::uint64_t p, std::uint64_t q, long precisionBits = Real::kDefaultPrecisionBits);

  std::uint64_t p() const { return p_; }
  std::uint64_t q() const { return q_; }
  long precision_bits() const { return logP_.precision_bits(); }
  const Real& log_p() const { return logP_; }
  const Real& log_q() const { return logQ_; }
  /// log q / log p.
  const Real& ratio() const { return ratio_; }

  /// Same primes at another precision.
  PrimePair with_precision(long precisionBits) const { return PrimePair(p_, q_, precisionBits); }

 private:
  std::uint64_t p_;
  std::uint64_t q_;
  Real logP_;
  Real logQ_;
  Real ratio_;
};

/// Which side of max{a log p, b log q} won. Tie only arises when p^a = q^b.
enum class Branch { PTerm, QTerm, Tie };

const char* to_string(Branch b);

struct MahlerValue {
  Real value;
  Branch branch = Branch::Tie;
  /// a = b = 0: the rational is 1 and the measure is 0.
  bool degenerate = false;
};

/// m(p^a / q^b) = max{a log p, b log q}, the branch chosen by exact integer
/// comparison of p^a and q^b.
MahlerValue mahler_rational(const PrimePair& pair, const BigNat& a, const BigNat& b);

struct MeasureCoefficient {
  int index = 0;
  Real value;
  /// log(value), cached for evaluation of value^t.
  Real logValue;
  Branch branch = Branch::Tie;
};

/// c_i = m(p^{h_i} / q^{h_{i-1}}) for i = 1..N+1.
class CoefficientVector {
 public:
  CoefficientVector(const PrimePair& pair, int N);

  const PrimePair& pair() const { return pair_; }
  int dimension() const { return N_; }
  long precision_bits() const { return pair_.precision_bits(); }
  /// 1-based, 1 <= i <= N+1.
  const MeasureCoefficient& at(int i) const;
  const Real& value(int i) const { return at(i).value; }
  const Real& log_value(int i) const { return at(i).logValue; }
  const std::vector<MeasureCoefficient>& coefficients() const { return coeffs_; }
  /// True when c_1 < c_2 < ... < c_{N+1}.
  bool strictly_increasing() const;

 private:
  PrimePair pair_;
  int N_;
  std::vector<MeasureCoefficient> coeffs_;
};

CoefficientVector coefficient_vector(const PrimePair& pair, int N);

/// f_x(t) = (sum_i x_i c_i^t)^{1/t}, evaluated in the log domain.
/// Throws std::domain_error for t <= 0 or x = 0.
Real eval_measure_fn(const ExponentVector& x, const CoefficientVector& coeffs, const Real& t);

/// f_x(t)^t = sum_i x_i c_i^t, linear in x. Throws std::domain_error for t <= 0.
Real eval_measure_pow(const ExponentVector& x, const CoefficientVector& coeffs, const Real& t);

/// The factors p^{h_i} / q^{h_{i-1}} of the product representation x, as
/// exponent pairs (h_i, h_{i-1}) repeated x_i times, in slot order.
std::vector<std::pair<BigNat, BigNat>> omega(const ExponentVector& x);

/// w_i = (c_i / c_ref)^t for i = 1..N+1 at a single t. Many vectors can be
/// evaluated at the same t from one set of powers: f_x(t)^t = c_ref^t *
/// sum_i x_i w_i.
class ScaledPowers {
 public:
  ScaledPowers(const CoefficientVector& coeffs, const Real& t, int refIndex);

  const Real& t() const { return t_; }
  int ref_index() const { return ref_; }
  const Real& w(int i) const { return w_.at(static_cast<std::size_t>(i - 1)); }
  /// sum_i x_i w_i over the slots of x.
  Real weighted_sum(std::span<const std::uint32_t> x) const;
  Real weighted_sum(std::span<const std::uint16_t> x) const;
  /// c_ref * sum^{1/t}, the measure function value for a weighted sum.
  Real measure(const Real& weightedSum) const;

 private:
  const CoefficientVector* coeffs_;
  Real t_;
  int ref_;
  std::vector<Real> w_;
};

}  // namespace fibmahler
