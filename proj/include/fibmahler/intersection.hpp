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

#include "fibmahler/measure.hpp"
#include "fibmahler/real.hpp"

namespace fibmahler {

inline constexpr double kDefaultTolerance = 1e-12;

enum class BreakpointKind { TPoint, SPoint };

/// Root of a^t + b^t = 1 (a, b < 1), bracketed by a certified sign change of
/// the decreasing residual: residual(lo) >= 0 >= residual(hi).
struct Breakpoint {
  int index = 0;
  Real value;
  Real lo;
  Real hi;
  BreakpointKind kind = BreakpointKind::TPoint;
  /// |a^value + b^value - 1|.
  Real residual;
  /// The root is exactly 1: the three coefficients share a branch, so
  /// c_n = c_{n-1} + c_{n-2} holds as an identity.
  bool exact = false;
};

/// Solves x^t = y^t + z^t for x > y, z > 0 given as logarithms, by bisection
/// on (y/x)^t + (z/x)^t - 1. The initial bracket is [1, 2] with the upper
/// end doubled until the sign changes (DivergenceError past 2^20); when the
/// residual at 1 is already non-positive the lower end is halved instead.
/// Iterates until the bracket width is at most tol * lo.
Breakpoint solve_intersection(const Real& logX, const Real& logY, const Real& logZ, int index,
                              BreakpointKind kind, double tol = kDefaultTolerance);

/// t_n(p, q): c_n^t = c_{n-1}^t + c_{n-2}^t, for 3 <= n <= N+1.
Breakpoint solve_tn(const CoefficientVector& coeffs, int n, double tol = kDefaultTolerance);
Breakpoint solve_tn(const PrimePair& pair, int n, double tol = kDefaultTolerance);

/// s_n: the same equation with c_k replaced by max{h_k, phi h_{k-1}}. The
/// max is decided by parity (h_k / h_{k-1} > phi exactly when k is odd).
Breakpoint solve_sn(int n, double tol = kDefaultTolerance,
                    long precisionBits = Real::kDefaultPrecisionBits);

/// h_N/h_{N-1} < log q/log p < h_{N-1}/h_{N-2} or the reversed chain,
/// decided exactly with cmp_power. Requires N >= 3.
bool weak_compatible(const PrimePair& pair, int N);

struct CompatibilityReport {
  int N = 0;
  bool weakOk = false;
  /// t_3..t_{N+1} in index order; empty when the weak test fails.
  std::vector<Breakpoint> breakpoints;
  bool strictlyDecreasing = false;
  bool verdict = false;
};

/// Weak test, then t_3..t_{N+1} and the certified ordering
/// t_{N+1} < ... < t_3 (hi of the later bracket below lo of the earlier).
/// Overlapping brackets are re-solved near the working precision limit;
/// still overlapping raises PrecisionError.
CompatibilityReport compatible(const PrimePair& pair, int N, double tol = kDefaultTolerance);

/// Largest N in [3, cap] with compatible(pair, N), or 0.
int max_compatible_N(const PrimePair& pair, int cap, double tol = kDefaultTolerance);

/// Largest N in [3, cap] for which t_{N+1} < ... < t_3 holds, ignoring the
/// weak test. Diagnostic only.
int max_ordered_N(const PrimePair& pair, int cap, double tol = kDefaultTolerance);

struct PairCandidate {
  PrimePair pair;
  /// |log q / log p - phi|
  Real offset;
  int maxN = 0;
};

/// For each prime p in [pMin, pMax], tests the 8 primes on each side of
/// round(p^phi) with compatible(., N). Returns up to maxResults pairs sorted
/// by offset. Primes p whose p^phi exceeds 2^63 are skipped.
std::vector<PairCandidate> find_compatible_pairs(int N, std::uint64_t pMin, std::uint64_t pMax,
                                                 std::size_t maxResults, double tol = kDefaultTolerance,
                                                 long precisionBits = Real::kDefaultPrecisionBits,
                                                 int maxNCap = 30);

}  // namespace fibmahler
