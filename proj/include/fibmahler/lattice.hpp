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

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace fibmahler {

/// Largest ambient dimension N for which lattice families are supported.
/// Entries of members of V_n are bounded by h_n, and h_24 still fits the
/// 16-bit packed row storage of SetFamily.
inline constexpr int kMaxLatticeDimension = 24;

/// A point of N_0^N, a candidate product representation of alpha_n.
/// Slots are 1-based in the accessors to match x_1..x_N.
class ExponentVector {
 public:
  ExponentVector() = default;
  /// Throws std::domain_error when an entry past slot n is nonzero or n is
  /// outside [1, N].
  ExponentVector(std::vector<std::uint32_t> entries, int n);

  int n() const { return n_; }
  int dimension() const { return static_cast<int>(entries_.size()); }
  std::uint32_t slot(int i) const { return entries_.at(static_cast<std::size_t>(i - 1)); }
  std::span<const std::uint32_t> entries() const { return entries_; }

  /// Sum of entries, the number of factors in the representation.
  std::uint64_t total() const;
  /// Largest slot holding a nonzero entry, or 0 for the zero vector.
  int last_support() const;
  /// Componentwise this >= other.
  bool dominates(const ExponentVector& other) const;
  /// Componentwise sum carrying the given target index.
  ExponentVector plus(const ExponentVector& other, int resultIndex) const;

  /// Zero-trimmed tuple, e.g. "(1,0,0,4)".
  std::string trimmed() const;
  /// All N entries comma separated.
  std::string csv() const;

  friend bool operator==(const ExponentVector&, const ExponentVector&) = default;
  /// Lexicographic on entries, then by target index.
  friend std::strong_ordering operator<=>(const ExponentVector& a, const ExponentVector& b);

 private:
  std::vector<std::uint32_t> entries_;
  int n_ = 0;
};

/// True when A x = (h_n, h_{n-1}) for the Fibonacci matrix A.
bool satisfies_system(const ExponentVector& x);

enum class SetKind { V, C, R, S };

const char* to_string(SetKind kind);

/// A sorted, duplicate-free family of members of V_n.
///
/// Rows are packed as 16-bit entries so that V_13 (about 1.1e7 members)
/// fits comfortably in memory.
class SetFamily {
 public:
  SetFamily(int n, int N, SetKind kind);
  SetFamily(int n, int N, SetKind kind, const std::vector<ExponentVector>& members);
  /// Takes ownership of packed rows (row-major, N entries per member) and
  /// sorts and deduplicates them.
  static SetFamily from_rows(int n, int N, SetKind kind, std::vector<std::uint16_t> rows);

  int n() const { return n_; }
  int dimension() const { return N_; }
  SetKind kind() const { return kind_; }
  std::size_t size() const { return N_ == 0 ? 0 : rows_.size() / static_cast<std::size_t>(N_); }
  bool empty() const { return rows_.empty(); }

  std::span<const std::uint16_t> row(std::size_t k) const;
  ExponentVector operator[](std::size_t k) const;
  std::vector<ExponentVector> members() const;
  bool contains(const ExponentVector& x) const;
  /// Members of this family that are not in `other`.
  std::vector<ExponentVector> minus(const SetFamily& other) const;

  friend bool operator==(const SetFamily&, const SetFamily&) = default;

 private:
  void sort_rows();

  int n_ = 0;
  int N_ = 0;
  SetKind kind_ = SetKind::V;
  std::vector<std::uint16_t> rows_;
};

using RowVisitor = std::function<void(std::span<const std::uint16_t>)>;

/// Streams every member of V_n in depth-first order (not sorted). Slots are
/// assigned from x_n down to x_3 with both residual bounds, and x_2, x_1 are
/// solved from the remaining 2x2 system, so every leaf is a solution.
/// Throws std::domain_error unless 1 <= n <= N <= kMaxLatticeDimension.
void for_each_V(int n, int N, const RowVisitor& visit);

std::uint64_t count_V(int n, int N);

/// Materialized V_n, sorted lexicographically. Disjoint branches (fixed
/// values of the top few slots) run as independent tasks and are merged
/// deterministically.
SetFamily enumerate_V(int n, int N);

/// z_j z_{j+1} != 0 implies z_i = 0 for every i > j + 1.
bool is_almost_consecutive_free(std::span<const std::uint16_t> z);
bool is_almost_consecutive_free(const ExponentVector& z);

SetFamily enumerate_C(int n, int N);

/// x_n(i): h_{n+1-i} in slot i-2 and h_{n+2-i} in slot i-1. Valid for
/// 3 <= i <= n+1, and for (n, i) = (1, 2) where it is (1).
ExponentVector x_vector(int n, int i, int N);

/// The generators of S_n in generator order i = 3..n+1 (or x_1(2) for n = 1).
std::vector<ExponentVector> s_generators(int n, int N);

SetFamily build_S(int n, int N);

/// (0, x_1, ..., x_{N-1}), taking V_{n-1} into V_n.
/// Throws std::overflow_error when x_N != 0.
ExponentVector shift_lambda(const ExponentVector& x);

struct Factorization {
  /// Canonical form: parts sorted lexicographically ascending.
  std::vector<ExponentVector> parts;
  ExponentVector target;

  bool is_trivial() const { return parts.size() == 1; }
  /// Every part is a unit generator x_i(i+1).
  bool is_improper() const;
  /// Every part lies in some S_i.
  bool is_s_type() const;
};

/// Every multiset of vectors from V_1 u ... u V_n summing to z, up to
/// permutation, including the trivial and improper factorizations.
/// capParts bounds the number of parts (default: the sum of entries of z).
std::vector<Factorization> enumerate_factorizations(const ExponentVector& z,
                                                    std::optional<std::uint64_t> capParts = {});

/// True when x lies in some S_i with 1 <= i <= x.n().
bool in_some_S(const ExponentVector& x);

/// R_n via the dominance test against prior restricted points:
/// z in C_n \ S_n is kept unless z - x >= 0 for some x in R_i \ S_i, i < n.
/// priorR must hold R_1..R_{n-1} in order; otherwise DependencyError.
SetFamily enumerate_R(const SetFamily& Cn, const std::vector<SetFamily>& priorR);
SetFamily enumerate_R(int n, int N, const std::vector<SetFamily>& priorR);

/// (R_n \ S_n) \ lambda(R_{n-1} \ S_{n-1}), sorted. For n = 1 pass an empty
/// family as Rprev.
std::vector<ExponentVector> delta(const SetFamily& Rn, const SetFamily& Rprev);

/// Source of V_n rows for the level builder; defaults to direct enumeration.
struct VSource {
  std::function<std::uint64_t(int n, int N, const RowVisitor& visit)> stream;
};

VSource direct_enumeration();

/// All set data at one index n.
struct LatticeLevel {
  int n = 0;
  std::uint64_t countV = 0;
  SetFamily C{1, 1, SetKind::C};
  SetFamily R{1, 1, SetKind::R};
  SetFamily S{1, 1, SetKind::S};
  std::vector<ExponentVector> delta;
};

/// Levels 1..nMax, computed bottom-up (R_n needs every R_i with i < n).
std::vector<LatticeLevel> build_levels(int nMax, int N, const VSource& source = direct_enumeration());

}  // namespace fibmahler
