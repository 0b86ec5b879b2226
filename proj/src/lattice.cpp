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

#include "fibmahler/lattice.hpp"

#include <algorithm>
#include <future>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>

#include "fibmahler/arithmetic.hpp"
#include "fibmahler/errors.hpp"

namespace fibmahler {

// ---------------------------------------------------------------------------
// ExponentVector

ExponentVector::ExponentVector(std::vector<std::uint32_t> entries, int n)
    : entries_(std::move(entries)), n_(n) {
  if (n_ < 1 || n_ > dimension()) {
    throw std::domain_error("ExponentVector: index n=" + std::to_string(n_) +
                            " outside [1, " + std::to_string(dimension()) + "]");
  }
  for (int i = n_ + 1; i <= dimension(); ++i) {
    if (slot(i) != 0) throw std::domain_error("ExponentVector: nonzero entry beyond slot n");
  }
}

std::uint64_t ExponentVector::total() const {
  return std::accumulate(entries_.begin(), entries_.end(), std::uint64_t{0});
}

int ExponentVector::last_support() const {
  for (int i = dimension(); i >= 1; --i) {
    if (slot(i) != 0) return i;
  }
  return 0;
}

bool ExponentVector::dominates(const ExponentVector& other) const {
  if (other.dimension() != dimension()) throw std::domain_error("dominates: dimension mismatch");
  for (std::size_t k = 0; k < entries_.size(); ++k) {
    if (entries_[k] < other.entries_[k]) return false;
  }
  return true;
}

ExponentVector ExponentVector::plus(const ExponentVector& other, int resultIndex) const {
  if (other.dimension() != dimension()) throw std::domain_error("plus: dimension mismatch");
  std::vector<std::uint32_t> out(entries_);
  for (std::size_t k = 0; k < out.size(); ++k) out[k] += other.entries_[k];
  return ExponentVector(std::move(out), resultIndex);
}

std::string ExponentVector::trimmed() const {
  const int last = std::max(last_support(), 1);
  std::string out = "(";
  for (int i = 1; i <= last; ++i) {
    if (i > 1) out += ',';
    out += std::to_string(slot(i));
  }
  return out + ")";
}

std::string ExponentVector::csv() const {
  std::string out;
  for (std::size_t k = 0; k < entries_.size(); ++k) {
    if (k > 0) out += ',';
    out += std::to_string(entries_[k]);
  }
  return out;
}

std::strong_ordering operator<=>(const ExponentVector& a, const ExponentVector& b) {
  if (auto c = std::lexicographical_compare_three_way(a.entries_.begin(), a.entries_.end(),
                                                      b.entries_.begin(), b.entries_.end());
      c != 0) {
    return c;
  }
  return a.n_ <=> b.n_;
}

bool satisfies_system(const ExponentVector& x) {
  const auto h = fibonacci_u64(x.dimension() + 1);
  std::uint64_t row1 = 0;
  std::uint64_t row2 = 0;
  for (int i = 1; i <= x.dimension(); ++i) {
    row1 += h[static_cast<std::size_t>(i)] * x.slot(i);
    row2 += h[static_cast<std::size_t>(i - 1)] * x.slot(i);
  }
  return row1 == h[static_cast<std::size_t>(x.n())] && row2 == h[static_cast<std::size_t>(x.n() - 1)];
}

const char* to_string(SetKind kind) {
  switch (kind) {
    case SetKind::V: return "V";
    case SetKind::C: return "C";
    case SetKind::R: return "R";
    case SetKind::S: return "S";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// SetFamily

namespace {

void check_dimensions(int n, int N) {
  if (N < 1 || N > kMaxLatticeDimension) {
    throw std::domain_error("dimension N=" + std::to_string(N) + " outside [1, " +
                            std::to_string(kMaxLatticeDimension) + "]");
  }
  if (n < 1 || n > N) {
    throw std::domain_error("index n=" + std::to_string(n) + " outside [1, N=" +
                            std::to_string(N) + "]");
  }
}

}  // namespace

SetFamily::SetFamily(int n, int N, SetKind kind) : n_(n), N_(N), kind_(kind) {
  check_dimensions(n, N);
}

SetFamily::SetFamily(int n, int N, SetKind kind, const std::vector<ExponentVector>& members)
    : SetFamily(n, N, kind) {
  rows_.reserve(members.size() * static_cast<std::size_t>(N));
  for (const auto& m : members) {
    if (m.dimension() != N || m.n() != n) {
      throw std::domain_error("SetFamily: member " + m.trimmed() + " does not belong to index " +
                              std::to_string(n));
    }
    for (const auto e : m.entries()) {
      if (e > 0xFFFF) throw std::overflow_error("SetFamily: entry exceeds 16-bit storage");
      rows_.push_back(static_cast<std::uint16_t>(e));
    }
  }
  sort_rows();
}

SetFamily SetFamily::from_rows(int n, int N, SetKind kind, std::vector<std::uint16_t> rows) {
  SetFamily out(n, N, kind);
  if (rows.size() % static_cast<std::size_t>(N) != 0) {
    throw std::domain_error("SetFamily: packed rows are not a multiple of N");
  }
  out.rows_ = std::move(rows);
  out.sort_rows();
  return out;
}

void SetFamily::sort_rows() {
  const std::size_t count = size();
  const auto width = static_cast<std::size_t>(N_);
  std::vector<std::uint32_t> order(count);
  std::iota(order.begin(), order.end(), 0U);
  const auto row_less = [&](std::uint32_t a, std::uint32_t b) {
    const auto* ra = rows_.data() + a * width;
    const auto* rb = rows_.data() + b * width;
    return std::lexicographical_compare(ra, ra + width, rb, rb + width);
  };
  if (!std::is_sorted(order.begin(), order.end(), row_less)) {
    std::sort(order.begin(), order.end(), row_less);
  }
  std::vector<std::uint16_t> sorted;
  sorted.reserve(rows_.size());
  for (std::size_t k = 0; k < count; ++k) {
    const auto* r = rows_.data() + order[k] * width;
    if (k > 0 && std::equal(r, r + width, sorted.end() - static_cast<std::ptrdiff_t>(width))) {
      continue;
    }
    sorted.insert(sorted.end(), r, r + width);
  }
  rows_ = std::move(sorted);
}

std::span<const std::uint16_t> SetFamily::row(std::size_t k) const {
  if (k >= size()) throw std::out_of_range("SetFamily: member index out of range");
  return {rows_.data() + k * static_cast<std::size_t>(N_), static_cast<std::size_t>(N_)};
}

ExponentVector SetFamily::operator[](std::size_t k) const {
  const auto r = row(k);
  return ExponentVector(std::vector<std::uint32_t>(r.begin(), r.end()), n_);
}

std::vector<ExponentVector> SetFamily::members() const {
  std::vector<ExponentVector> out;
  out.reserve(size());
  for (std::size_t k = 0; k < size(); ++k) out.push_back((*this)[k]);
  return out;
}

bool SetFamily::contains(const ExponentVector& x) const {
  if (x.dimension() != N_ || x.n() != n_) return false;
  std::size_t lo = 0;
  std::size_t hi = size();
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    const auto r = row(mid);
    const auto c = std::lexicographical_compare_three_way(r.begin(), r.end(), x.entries().begin(),
                                                          x.entries().end());
    if (c == 0) return true;
    if (c < 0) {
      lo = mid + 1;
    } else {
      hi = mid;
    }
  }
  return false;
}

std::vector<ExponentVector> SetFamily::minus(const SetFamily& other) const {
  std::vector<ExponentVector> out;
  for (std::size_t k = 0; k < size(); ++k) {
    auto x = (*this)[k];
    if (!other.contains(x)) out.push_back(std::move(x));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Enumeration of V_n

namespace {

/// A partial assignment of the slots above `nextSlot`, with the residuals of
/// both rows of A still to be covered by slots 1..nextSlot.
struct Branch {
  std::vector<std::uint16_t> row;
  int nextSlot = 0;
  std::uint64_t residual1 = 0;
  std::uint64_t residual2 = 0;
};

class VEnumerator {
 public:
  VEnumerator(int n, int N) : n_(n), N_(N), h_(fibonacci_u64(N + 1)) { check_dimensions(n, N); }

  Branch root() const {
    Branch b;
    b.row.assign(static_cast<std::size_t>(N_), 0);
    b.nextSlot = std::max(n_, 2);
    b.residual1 = h_[static_cast<std::size_t>(n_)];
    b.residual2 = h_[static_cast<std::size_t>(n_ - 1)];
    return b;
  }

  /// Largest admissible value of slot i given the residuals (i >= 3).
  std::uint64_t bound(int i, std::uint64_t r1, std::uint64_t r2) const {
    return std::min(r2 / h_[static_cast<std::size_t>(i - 1)],
                    (r1 - r2) / h_[static_cast<std::size_t>(i - 2)]);
  }

  void run(Branch b, const RowVisitor& visit) const {
    recurse(b.row, b.nextSlot, b.residual1, b.residual2, visit);
  }

  /// Splits the search into disjoint branches by assigning slots from the
  /// top until at least `target` branches exist or slot 3 is reached.
  std::vector<Branch> split(std::size_t target) const {
    std::vector<Branch> frontier{root()};
    while (frontier.size() < target && frontier.front().nextSlot >= 3) {
      std::vector<Branch> next;
      for (const auto& b : frontier) {
        const int i = b.nextSlot;
        for (std::uint64_t x = 0, hi = bound(i, b.residual1, b.residual2); x <= hi; ++x) {
          Branch c = b;
          c.row[static_cast<std::size_t>(i - 1)] = static_cast<std::uint16_t>(x);
          c.nextSlot = i - 1;
          c.residual1 -= x * h_[static_cast<std::size_t>(i)];
          c.residual2 -= x * h_[static_cast<std::size_t>(i - 1)];
          next.push_back(std::move(c));
        }
      }
      frontier = std::move(next);
    }
    return frontier;
  }

 private:
  void recurse(std::vector<std::uint16_t>& row, int i, std::uint64_t r1, std::uint64_t r2,
               const RowVisitor& visit) const {
    if (i <= 2) {
      // x_1 + x_2 = r1 and x_2 = r2 (h_0 = 0, h_1 = h_2 = 1).
      if (N_ == 1) {
        if (r2 != 0) return;
        row[0] = static_cast<std::uint16_t>(r1);
      } else {
        row[1] = static_cast<std::uint16_t>(r2);
        row[0] = static_cast<std::uint16_t>(r1 - r2);
      }
      visit(row);
      return;
    }
    const std::uint64_t hi = bound(i, r1, r2);
    const auto hi1 = h_[static_cast<std::size_t>(i)];
    const auto hi2 = h_[static_cast<std::size_t>(i - 1)];
    for (std::uint64_t x = 0; x <= hi; ++x) {
      row[static_cast<std::size_t>(i - 1)] = static_cast<std::uint16_t>(x);
      recurse(row, i - 1, r1 - x * hi1, r2 - x * hi2, visit);
    }
    row[static_cast<std::size_t>(i - 1)] = 0;
  }

  int n_;
  int N_;
  std::vector<std::uint64_t> h_;
};

}  // namespace

void for_each_V(int n, int N, const RowVisitor& visit) {
  const VEnumerator e(n, N);
  e.run(e.root(), visit);
}

std::uint64_t count_V(int n, int N) {
  std::uint64_t count = 0;
  for_each_V(n, N, [&](std::span<const std::uint16_t>) { ++count; });
  return count;
}

SetFamily enumerate_V(int n, int N) {
  const VEnumerator e(n, N);
  const std::size_t workers = std::max(1U, std::thread::hardware_concurrency());
  auto branches = e.split(workers * 8);

  // Round-robin branches over workers; each worker owns its output buffer.
  std::vector<std::future<std::vector<std::uint16_t>>> tasks;
  for (std::size_t w = 0; w < std::min(workers, branches.size()); ++w) {
    tasks.push_back(std::async(std::launch::async, [&, w] {
      std::vector<std::uint16_t> rows;
      for (std::size_t k = w; k < branches.size(); k += workers) {
        e.run(branches[k], [&](std::span<const std::uint16_t> r) {
          rows.insert(rows.end(), r.begin(), r.end());
        });
      }
      return rows;
    }));
  }
  std::vector<std::uint16_t> all;
  for (auto& t : tasks) {
    auto part = t.get();
    all.insert(all.end(), part.begin(), part.end());
  }
  return SetFamily::from_rows(n, N, SetKind::V, std::move(all));
}

bool is_almost_consecutive_free(std::span<const std::uint16_t> z) {
  const std::size_t len = z.size();
  for (std::size_t j = 0; j + 1 < len; ++j) {
    if (z[j] != 0 && z[j + 1] != 0) {
      for (std::size_t i = j + 2; i < len; ++i) {
        if (z[i] != 0) return false;
      }
      return true;
    }
  }
  return true;
}

bool is_almost_consecutive_free(const ExponentVector& z) {
  std::vector<std::uint16_t> row(z.entries().begin(), z.entries().end());
  return is_almost_consecutive_free(std::span<const std::uint16_t>(row));
}

SetFamily enumerate_C(int n, int N) {
  std::vector<std::uint16_t> rows;
  for_each_V(n, N, [&](std::span<const std::uint16_t> r) {
    if (is_almost_consecutive_free(r)) rows.insert(rows.end(), r.begin(), r.end());
  });
  return SetFamily::from_rows(n, N, SetKind::C, std::move(rows));
}

// ---------------------------------------------------------------------------
// S_n and the shift

ExponentVector x_vector(int n, int i, int N) {
  check_dimensions(n, N);
  std::vector<std::uint32_t> entries(static_cast<std::size_t>(N), 0);
  if (n == 1 && i == 2) {
    entries[0] = 1;
    return ExponentVector(std::move(entries), 1);
  }
  if (i < 3 || i > n + 1) {
    throw std::domain_error("x_vector: generator index i=" + std::to_string(i) +
                            " outside [3, n+1] for n=" + std::to_string(n));
  }
  const auto h = fibonacci_u64(n + 1);
  entries[static_cast<std::size_t>(i - 3)] = static_cast<std::uint32_t>(h[static_cast<std::size_t>(n + 1 - i)]);
  entries[static_cast<std::size_t>(i - 2)] = static_cast<std::uint32_t>(h[static_cast<std::size_t>(n + 2 - i)]);
  return ExponentVector(std::move(entries), n);
}

std::vector<ExponentVector> s_generators(int n, int N) {
  if (n == 1) return {x_vector(1, 2, N)};
  std::vector<ExponentVector> out;
  for (int i = 3; i <= n + 1; ++i) out.push_back(x_vector(n, i, N));
  return out;
}

SetFamily build_S(int n, int N) { return SetFamily(n, N, SetKind::S, s_generators(n, N)); }

ExponentVector shift_lambda(const ExponentVector& x) {
  const int N = x.dimension();
  if (x.slot(N) != 0) throw std::overflow_error("shift_lambda: last slot is nonzero");
  std::vector<std::uint32_t> out(static_cast<std::size_t>(N), 0);
  std::copy(x.entries().begin(), x.entries().end() - 1, out.begin() + 1);
  return ExponentVector(std::move(out), x.n() + 1);
}

bool in_some_S(const ExponentVector& x) {
  const int n = x.n();
  if (n == 1) return x == x_vector(1, 2, x.dimension());
  for (int i = 3; i <= n + 1; ++i) {
    if (x == x_vector(n, i, x.dimension())) return true;
  }
  return false;
}

// ---------------------------------------------------------------------------
// Factorizations

bool Factorization::is_improper() const {
  return std::all_of(parts.begin(), parts.end(), [](const ExponentVector& p) { return p.total() == 1; });
}

bool Factorization::is_s_type() const {
  return std::all_of(parts.begin(), parts.end(), [](const ExponentVector& p) { return in_some_S(p); });
}

namespace {

/// Members of V_i (dimension of z) that are componentwise <= z.
std::vector<ExponentVector> dominated_members(const ExponentVector& z, int i) {
  std::vector<ExponentVector> out;
  const int N = z.dimension();
  for_each_V(i, N, [&](std::span<const std::uint16_t> r) {
    for (int k = 0; k < N; ++k) {
      if (r[static_cast<std::size_t>(k)] > z.slot(k + 1)) return;
    }
    out.emplace_back(std::vector<std::uint32_t>(r.begin(), r.end()), i);
  });
  return out;
}

class FactorizationSearch {
 public:
  FactorizationSearch(const ExponentVector& z, std::vector<ExponentVector> candidates,
                      std::uint64_t cap)
      : target_(z), candidates_(std::move(candidates)), cap_(cap) {
    std::sort(candidates_.begin(), candidates_.end(), std::greater<>());
  }

  std::vector<Factorization> run() {
    std::vector<std::uint32_t> remainder(target_.entries().begin(), target_.entries().end());
    recurse(0, remainder);
    return std::move(found_);
  }

 private:
  bool fits(const ExponentVector& c, const std::vector<std::uint32_t>& remainder) const {
    for (std::size_t k = 0; k < remainder.size(); ++k) {
      if (c.entries()[k] > remainder[k]) return false;
    }
    return true;
  }

  void recurse(std::size_t start, std::vector<std::uint32_t>& remainder) {
    if (std::all_of(remainder.begin(), remainder.end(), [](std::uint32_t v) { return v == 0; })) {
      Factorization f;
      f.parts.assign(stack_.rbegin(), stack_.rend());
      f.target = target_;
      found_.push_back(std::move(f));
      return;
    }
    if (stack_.size() >= cap_) return;
    for (std::size_t k = start; k < candidates_.size(); ++k) {
      const auto& c = candidates_[k];
      if (!fits(c, remainder)) continue;
      for (std::size_t j = 0; j < remainder.size(); ++j) remainder[j] -= c.entries()[j];
      stack_.push_back(c);
      recurse(k, remainder);
      stack_.pop_back();
      for (std::size_t j = 0; j < remainder.size(); ++j) remainder[j] += c.entries()[j];
    }
  }

  ExponentVector target_;
  std::vector<ExponentVector> candidates_;
  std::uint64_t cap_;
  std::vector<ExponentVector> stack_;
  std::vector<Factorization> found_;
};

}  // namespace

std::vector<Factorization> enumerate_factorizations(const ExponentVector& z,
                                                    std::optional<std::uint64_t> capParts) {
  std::vector<ExponentVector> candidates;
  for (int i = 1; i <= z.n(); ++i) {
    auto members = dominated_members(z, i);
    candidates.insert(candidates.end(), members.begin(), members.end());
  }
  FactorizationSearch search(z, std::move(candidates), capParts.value_or(z.total()));
  return search.run();
}

// ---------------------------------------------------------------------------
// R_n and Delta_n

SetFamily enumerate_R(const SetFamily& Cn, const std::vector<SetFamily>& priorR) {
  const int n = Cn.n();
  const int N = Cn.dimension();
  if (priorR.size() != static_cast<std::size_t>(n - 1)) {
    throw DependencyError("enumerate_R: R_1..R_" + std::to_string(n - 1) + " required, got " +
                          std::to_string(priorR.size()) + " families");
  }
  std::vector<ExponentVector> pool;
  for (std::size_t k = 0; k < priorR.size(); ++k) {
    const auto& Ri = priorR[k];
    if (Ri.n() != static_cast<int>(k) + 1 || Ri.kind() != SetKind::R || Ri.dimension() != N) {
      throw DependencyError("enumerate_R: prior family at position " + std::to_string(k + 1) +
                            " is not R_" + std::to_string(k + 1) + " in dimension " +
                            std::to_string(N));
    }
    auto extra = Ri.minus(build_S(Ri.n(), N));
    pool.insert(pool.end(), extra.begin(), extra.end());
  }

  const SetFamily Sn = build_S(n, N);
  std::vector<ExponentVector> members = Sn.members();
  for (auto& z : Cn.minus(Sn)) {
    const bool reducible = std::any_of(pool.begin(), pool.end(),
                                       [&](const ExponentVector& x) { return z.dominates(x); });
    if (!reducible) members.push_back(std::move(z));
  }
  return SetFamily(n, N, SetKind::R, members);
}

SetFamily enumerate_R(int n, int N, const std::vector<SetFamily>& priorR) {
  return enumerate_R(enumerate_C(n, N), priorR);
}

std::vector<ExponentVector> delta(const SetFamily& Rn, const SetFamily& Rprev) {
  const int n = Rn.n();
  const int N = Rn.dimension();
  auto fresh = Rn.minus(build_S(n, N));
  if (n == 1 || Rprev.empty()) return fresh;
  if (Rprev.n() != n - 1 || Rprev.dimension() != N) {
    throw DependencyError("delta: previous family must be R_" + std::to_string(n - 1));
  }
  std::vector<ExponentVector> shifted;
  for (const auto& x : Rprev.minus(build_S(n - 1, N))) shifted.push_back(shift_lambda(x));
  std::vector<ExponentVector> out;
  for (auto& z : fresh) {
    if (std::find(shifted.begin(), shifted.end(), z) == shifted.end()) out.push_back(std::move(z));
  }
  std::sort(out.begin(), out.end());
  return out;
}

VSource direct_enumeration() {
  return VSource{[](int n, int N, const RowVisitor& visit) {
    std::uint64_t count = 0;
    for_each_V(n, N, [&](std::span<const std::uint16_t> r) {
      ++count;
      visit(r);
    });
    return count;
  }};
}

std::vector<LatticeLevel> build_levels(int nMax, int N, const VSource& source) {
  check_dimensions(nMax, N);
  std::vector<LatticeLevel> levels;
  std::vector<SetFamily> priorR;
  for (int n = 1; n <= nMax; ++n) {
    LatticeLevel level;
    level.n = n;
    std::vector<std::uint16_t> cRows;
    level.countV = source.stream(n, N, [&](std::span<const std::uint16_t> r) {
      if (is_almost_consecutive_free(r)) cRows.insert(cRows.end(), r.begin(), r.end());
    });
    level.C = SetFamily::from_rows(n, N, SetKind::C, std::move(cRows));
    level.S = build_S(n, N);
    level.R = enumerate_R(level.C, priorR);
    level.delta = delta(level.R, n == 1 ? SetFamily(1, N, SetKind::R) : priorR.back());
    priorR.push_back(level.R);
    levels.push_back(std::move(level));
  }
  return levels;
}

}  // namespace fibmahler
