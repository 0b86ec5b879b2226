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

#include "fibmahler/intersection.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <stdexcept>
#include <string>
#include <thread>

#include "fibmahler/arithmetic.hpp"
#include "fibmahler/errors.hpp"

namespace fibmahler {

namespace {

constexpr int kMaxDoublings = 20;

long working_bits(const Real& a, const Real& b, const Real& c) {
  return std::max({a.precision_bits(), b.precision_bits(), c.precision_bits()});
}

/// Relative tolerance reachable at the given precision.
double precision_floor(long bits) { return std::ldexp(1.0, -static_cast<int>(std::min(bits - 16, 1000L))); }

}  // namespace

Breakpoint solve_intersection(const Real& logX, const Real& logY, const Real& logZ, int index,
                              BreakpointKind kind, double tol) {
  const long bits = working_bits(logX, logY, logZ);
  const Real la = logY - logX;  // log(y/x)
  const Real lb = logZ - logX;
  if (la.sign() >= 0 || lb.sign() >= 0) {
    throw DivergenceError("intersection " + std::to_string(index) +
                          ": largest coefficient is not strictly largest, no root exists");
  }
  const auto residual = [&](const Real& t) { return exp(t * la) + exp(t * lb) - Real(1.0, bits); };

  Real lo(1.0, bits);
  Real hi(2.0, bits);
  if (residual(lo).sign() > 0) {
    int doublings = 1;
    while (residual(hi).sign() > 0) {
      lo = hi;
      hi = hi * Real(2.0, bits);
      if (++doublings > kMaxDoublings) {
        throw DivergenceError("intersection " + std::to_string(index) + ": no sign change below 2^20");
      }
    }
  } else {
    // Root at or below 1 (only when the weak inequalities fail).
    hi = lo;
    lo = Real(0.5, bits);
    while (residual(lo).sign() <= 0) {
      hi = lo;
      lo = lo * Real(0.5, bits);
      if (lo.to_double() < std::ldexp(1.0, -kMaxDoublings)) {
        throw DivergenceError("intersection " + std::to_string(index) + ": no sign change above 2^-20");
      }
    }
  }

  const Real target(std::max(tol, precision_floor(bits)), bits);
  const Real half(0.5, bits);
  for (int iter = 0; iter < 4 * bits && (hi - lo) > target * lo; ++iter) {
    Real mid = (lo + hi) * half;
    if (residual(mid).sign() > 0) {
      lo = std::move(mid);
    } else {
      hi = std::move(mid);
    }
  }
  Breakpoint b;
  b.index = index;
  b.kind = kind;
  b.value = (lo + hi) * half;
  b.residual = abs(residual(b.value));
  b.lo = std::move(lo);
  b.hi = std::move(hi);
  return b;
}

Breakpoint solve_tn(const CoefficientVector& coeffs, int n, double tol) {
  if (n < 3 || n > coeffs.dimension() + 1) {
    throw std::domain_error("solve_tn: index " + std::to_string(n) + " outside [3, " +
                            std::to_string(coeffs.dimension() + 1) + "]");
  }
  const auto& cn = coeffs.at(n);
  const auto& c1 = coeffs.at(n - 1);
  const auto& c2 = coeffs.at(n - 2);
  if (cn.branch == c1.branch && c1.branch == c2.branch && cn.branch != Branch::Tie) {
    const long bits = coeffs.precision_bits();
    Breakpoint b;
    b.index = n;
    b.kind = BreakpointKind::TPoint;
    b.value = Real(1.0, bits);
    b.lo = b.value;
    b.hi = b.value;
    b.residual = Real(0.0, bits);
    b.exact = true;
    return b;
  }
  return solve_intersection(cn.logValue, c1.logValue, c2.logValue, n, BreakpointKind::TPoint, tol);
}

Breakpoint solve_tn(const PrimePair& pair, int n, double tol) {
  return solve_tn(coefficient_vector(pair, std::max(n - 1, 1)), n, tol);
}

Breakpoint solve_sn(int n, double tol, long precisionBits) {
  if (n < 3) throw std::domain_error("solve_sn: n must be at least 3");
  const FibTable h(n);
  const Real phi = golden_ratio(std::max(precisionBits, 96L)).with_precision(precisionBits);
  const auto log_term = [&](int k) {
    // h_k > phi h_{k-1} exactly for odd k.
    return (k % 2 == 1) ? log(Real::from_integer(h.fib(k), precisionBits))
                        : log(phi * Real::from_integer(h.fib(k - 1), precisionBits));
  };
  return solve_intersection(log_term(n), log_term(n - 1), log_term(n - 2), n, BreakpointKind::SPoint, tol);
}

bool weak_compatible(const PrimePair& pair, int N) {
  if (N < 3) throw std::domain_error("weak_compatible: N must be at least 3");
  const FibTable h(N);
  // h_N/h_{N-1} < r  <=>  p^{h_N} < q^{h_{N-1}}
  const auto upper = cmp_power(pair.p(), h.fib(N), pair.q(), h.fib(N - 1));
  const auto lower = cmp_power(pair.p(), h.fib(N - 1), pair.q(), h.fib(N - 2));
  return (upper == Ordering::Less && lower == Ordering::Greater) ||
         (upper == Ordering::Greater && lower == Ordering::Less);
}

namespace {

/// t_later < t_earlier, certified by brackets. Returns nullopt when the
/// brackets overlap and the values are not exactly equal.
std::optional<bool> certified_less(const Breakpoint& later, const Breakpoint& earlier) {
  if (later.exact && earlier.exact) return later.value < earlier.value;
  if (later.hi < earlier.lo) return true;
  if (earlier.hi < later.lo) return false;
  return std::nullopt;
}

bool ordered(const PrimePair& pair, int N, double tol, std::vector<Breakpoint>& bps) {
  const auto coeffs = coefficient_vector(pair, N);
  bps.clear();
  for (int n = 3; n <= N + 1; ++n) bps.push_back(solve_tn(coeffs, n, tol));
  bool decreasing = true;
  for (int n = 3; n <= N; ++n) {
    auto& earlier = bps[static_cast<std::size_t>(n - 3)];
    auto& later = bps[static_cast<std::size_t>(n - 2)];
    auto verdict = certified_less(later, earlier);
    if (!verdict) {
      const double fine = precision_floor(pair.precision_bits());
      earlier = solve_tn(coeffs, n, fine);
      later = solve_tn(coeffs, n + 1, fine);
      verdict = certified_less(later, earlier);
      if (!verdict) {
        throw PrecisionError("cannot order t_" + std::to_string(n + 1) + " and t_" + std::to_string(n) +
                             " at " + std::to_string(pair.precision_bits()) +
                             " bits; rerun with a larger precision");
      }
    }
    decreasing = decreasing && *verdict;
  }
  return decreasing;
}

}  // namespace

CompatibilityReport compatible(const PrimePair& pair, int N, double tol) {
  if (N < 3) throw std::domain_error("compatible: N must be at least 3");
  CompatibilityReport report;
  report.N = N;
  report.weakOk = weak_compatible(pair, N);
  if (!report.weakOk) return report;
  report.strictlyDecreasing = ordered(pair, N, tol, report.breakpoints);
  report.verdict = report.weakOk && report.strictlyDecreasing;
  return report;
}

int max_compatible_N(const PrimePair& pair, int cap, double tol) {
  if (cap < 3) throw std::domain_error("max_compatible_N: cap must be at least 3");
  int best = 0;
  for (int N = 3; N <= cap; ++N) {
    if (compatible(pair, N, tol).verdict) best = N;
  }
  return best;
}

int max_ordered_N(const PrimePair& pair, int cap, double tol) {
  if (cap < 3) throw std::domain_error("max_ordered_N: cap must be at least 3");
  int best = 0;
  std::vector<Breakpoint> bps;
  for (int N = 3; N <= cap; ++N) {
    try {
      if (ordered(pair, N, tol, bps)) best = N;
    } catch (const DivergenceError&) {
      // A missing root means the ordering cannot hold at this N.
    }
  }
  return best;
}

namespace {

std::vector<std::uint64_t> primes_near(std::uint64_t centre, int each) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t k = centre; k >= 2 && static_cast<int>(out.size()) < each; --k) {
    if (is_prime(k)) out.push_back(k);
  }
  int above = 0;
  for (std::uint64_t k = centre + 1; above < each && k < (1ULL << 63); ++k) {
    if (is_prime(k)) {
      out.push_back(k);
      ++above;
    }
  }
  return out;
}

}  // namespace

std::vector<PairCandidate> find_compatible_pairs(int N, std::uint64_t pMin, std::uint64_t pMax,
                                                 std::size_t maxResults, double tol, long precisionBits,
                                                 int maxNCap) {
  if (pMin < 2 || pMin > pMax || pMax >= (1ULL << 40)) {
    throw std::domain_error("find_compatible_pairs: need 2 <= pMin <= pMax < 2^40");
  }
  const Real phi = golden_ratio(std::max(precisionBits, 96L)).with_precision(precisionBits);

  std::vector<std::uint64_t> ps;
  for (std::uint64_t p = pMin; p <= pMax; ++p) {
    if (is_prime(p)) ps.push_back(p);
  }

  const auto search_one = [&](std::uint64_t p) {
    std::vector<PairCandidate> found;
    const Real centre = exp(phi * log(Real::from_u64(p, precisionBits)));
    if (centre.to_double() > std::ldexp(1.0, 63)) return found;
    const auto rounded = static_cast<std::uint64_t>(std::llround(centre.to_double()));
    for (const auto q : primes_near(rounded, 8)) {
      if (q == p) continue;
      PrimePair pair(p, q, precisionBits);
      try {
        if (!compatible(pair, N, tol).verdict) continue;
        const int maxN = max_compatible_N(pair, std::max(maxNCap, N), tol);
        found.push_back(PairCandidate{pair, abs(pair.ratio() - phi), maxN});
      } catch (const PrecisionError&) {
        // Undecidable at this precision: not reported as compatible.
      }
    }
    return found;
  };

  const std::size_t workers = std::max(1U, std::thread::hardware_concurrency());
  std::vector<std::future<std::vector<PairCandidate>>> tasks;
  for (std::size_t w = 0; w < std::min(workers, ps.size()); ++w) {
    tasks.push_back(std::async(std::launch::async, [&, w] {
      std::vector<PairCandidate> out;
      for (std::size_t k = w; k < ps.size(); k += workers) {
        auto part = search_one(ps[k]);
        out.insert(out.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
      }
      return out;
    }));
  }
  std::vector<PairCandidate> all;
  for (auto& t : tasks) {
    auto part = t.get();
    all.insert(all.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
  }
  std::sort(all.begin(), all.end(), [](const PairCandidate& a, const PairCandidate& b) {
    if (a.offset != b.offset) return a.offset < b.offset;
    return std::pair(a.pair.p(), a.pair.q()) < std::pair(b.pair.p(), b.pair.q());
  });
  if (all.size() > maxResults) all.erase(all.begin() + static_cast<std::ptrdiff_t>(maxResults), all.end());
  return all;
}

}  // namespace fibmahler
