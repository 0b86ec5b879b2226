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

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "fibmahler/errors.hpp"
#include "fibmahler/lattice.hpp"

using namespace fibmahler;

namespace {

using Row = std::vector<std::uint32_t>;

std::vector<std::uint64_t> fib(int upto) {
  std::vector<std::uint64_t> h{0, 1};
  while (static_cast<int>(h.size()) <= upto) h.push_back(h[h.size() - 1] + h[h.size() - 2]);
  return h;
}

std::pair<std::uint64_t, std::uint64_t> apply_A(const Row& x) {
  const auto h = fib(static_cast<int>(x.size()) + 1);
  std::uint64_t a = 0;
  std::uint64_t b = 0;
  for (std::size_t i = 1; i <= x.size(); ++i) {
    a += h[i] * x[i - 1];
    b += h[i - 1] * x[i - 1];
  }
  return {a, b};
}

// Every x with 0 <= x <= upper, visited in an odometer loop.
void for_each_in_box(const Row& upper, const std::function<void(const Row&)>& visit) {
  Row x(upper.size(), 0);
  while (true) {
    visit(x);
    std::size_t k = 0;
    while (k < x.size() && x[k] == upper[k]) x[k++] = 0;
    if (k == x.size()) return;
    ++x[k];
  }
}

// Index i with A x = (h_i, h_{i-1}), or 0 when none.
int target_index(const Row& x) {
  const auto [a, b] = apply_A(x);
  const auto h = fib(40);
  for (int i = 1; i < 40; ++i) {
    if (h[static_cast<std::size_t>(i)] == a && h[static_cast<std::size_t>(i - 1)] == b) return i;
  }
  return 0;
}

std::set<Row> brute_V(int n, int N) {
  const auto h = fib(N);
  Row upper(static_cast<std::size_t>(N), 0);
  for (int i = 1; i <= N; ++i) upper[static_cast<std::size_t>(i - 1)] = i <= n ? h[n] / h[i] : 0;
  std::set<Row> out;
  for_each_in_box(upper, [&](const Row& x) {
    const auto [a, b] = apply_A(x);
    if (a == h[n] && b == h[n - 1]) out.insert(x);
  });
  return out;
}

bool oracle_acf(const Row& z) {
  for (std::size_t j = 0; j + 1 < z.size(); ++j) {
    if (z[j] && z[j + 1]) {
      for (std::size_t i = j + 2; i < z.size(); ++i) {
        if (z[i]) return false;
      }
    }
  }
  return true;
}

// The S-type generators written out from the closed form.
bool oracle_in_S(const Row& x, int n) {
  const auto h = fib(n + 2);
  if (n == 1) {
    Row e(x.size(), 0);
    e[0] = 1;
    return x == e;
  }
  for (int i = 3; i <= n + 1; ++i) {
    Row g(x.size(), 0);
    g[static_cast<std::size_t>(i - 3)] = static_cast<std::uint32_t>(h[static_cast<std::size_t>(n + 1 - i)]);
    g[static_cast<std::size_t>(i - 2)] = static_cast<std::uint32_t>(h[static_cast<std::size_t>(n + 2 - i)]);
    if (g == x) return true;
  }
  return false;
}

// z is restricted when every nonzero x <= z solving some lower system is of
// S type: a non-S part would give a factorization z = x + (z - x) with the
// remainder split into unit generators.
bool oracle_restricted(const Row& z, int n) {
  bool ok = true;
  for_each_in_box(z, [&](const Row& x) {
    if (!ok) return;
    const int i = target_index(x);
    if (i == 0 || i >= n) return;
    if (!oracle_in_S(x, i)) ok = false;
  });
  return ok;
}

// Multiset partitions of z into nonzero solutions of lower or equal systems.
std::set<std::vector<Row>> oracle_factorizations(const Row& z) {
  std::vector<Row> parts;
  for_each_in_box(z, [&](const Row& x) {
    if (std::any_of(x.begin(), x.end(), [](auto v) { return v != 0; }) && target_index(x) != 0) {
      parts.push_back(x);
    }
  });
  std::set<std::vector<Row>> out;
  std::vector<Row> stack;
  std::function<void(std::size_t, Row)> rec = [&](std::size_t start, Row rem) {
    if (std::all_of(rem.begin(), rem.end(), [](auto v) { return v == 0; })) {
      auto sorted = stack;
      std::sort(sorted.begin(), sorted.end());
      out.insert(sorted);
      return;
    }
    for (std::size_t k = start; k < parts.size(); ++k) {
      bool fits = true;
      for (std::size_t j = 0; j < rem.size(); ++j) fits = fits && parts[k][j] <= rem[j];
      if (!fits) continue;
      Row next = rem;
      for (std::size_t j = 0; j < rem.size(); ++j) next[j] -= parts[k][j];
      stack.push_back(parts[k]);
      rec(k, next);
      stack.pop_back();
    }
  };
  rec(0, z);
  return out;
}

Row to_row(std::span<const std::uint16_t> r) { return Row(r.begin(), r.end()); }
Row to_row(const ExponentVector& x) { return Row(x.entries().begin(), x.entries().end()); }

ExponentVector vec(std::vector<std::uint32_t> entries, int N, int n) {
  entries.resize(static_cast<std::size_t>(N), 0);
  return ExponentVector(std::move(entries), n);
}

}  // namespace

TEST_CASE("DFS enumeration of V_n matches a brute-force box scan") {
  for (int N = 1; N <= 7; ++N) {
    for (int n = 1; n <= std::min(N, 6); ++n) {
      std::set<Row> dfs;
      for_each_V(n, N, [&](std::span<const std::uint16_t> r) { CHECK(dfs.insert(to_row(r)).second); });
      CHECK(dfs == brute_V(n, N));
    }
  }
  const auto family = enumerate_V(5, 7);
  CHECK(family.size() == 6);
  std::set<Row> materialized;
  for (std::size_t k = 0; k < family.size(); ++k) materialized.insert(to_row(family.row(k)));
  CHECK(materialized == brute_V(5, 7));
}

TEST_CASE("V, C, R, S cardinalities for N = 13 up to n = 11") {
  const std::uint64_t V[] = {1, 1, 2, 3, 6, 13, 38, 139, 695, 4699, 44359};
  const std::size_t C[] = {1, 1, 2, 3, 4, 5, 7, 11, 20, 41, 104};
  const std::size_t R[] = {1, 1, 2, 3, 4, 5, 7, 8, 10, 12, 18};
  const std::size_t S[] = {1, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  const auto levels = build_levels(11, 13);
  REQUIRE(levels.size() == 11);
  for (int n = 1; n <= 11; ++n) {
    const auto& L = levels[static_cast<std::size_t>(n - 1)];
    CAPTURE(n);
    CHECK(L.countV == V[n - 1]);
    CHECK(count_V(n, 13) == V[n - 1]);
    CHECK(L.C.size() == C[n - 1]);
    CHECK(L.R.size() == R[n - 1]);
    CHECK(L.S.size() == S[n - 1]);
  }
}

TEST_CASE("materialized V is sorted, unique and equals the streamed set") {
  const auto family = enumerate_V(9, 13);
  CHECK(family.size() == 695);
  for (std::size_t k = 1; k < family.size(); ++k) {
    const auto a = family.row(k - 1);
    const auto b = family.row(k);
    CHECK(std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end()));
  }
  std::uint64_t seen = 0;
  for_each_V(9, 13, [&](std::span<const std::uint16_t> r) {
    ++seen;
    CHECK(family.contains(ExponentVector(std::vector<std::uint32_t>(r.begin(), r.end()), 9)));
  });
  CHECK(seen == family.size());
}

TEST_CASE("C filter agrees with the definition") {
  for (int n = 1; n <= 9; ++n) {
    const auto Cn = enumerate_C(n, 10);
    std::size_t expected = 0;
    for_each_V(n, 10, [&](std::span<const std::uint16_t> r) {
      const Row z = to_row(r);
      if (oracle_acf(z)) {
        ++expected;
        CHECK(Cn.contains(ExponentVector(z, n)));
      }
    });
    CHECK(Cn.size() == expected);
  }
  const std::uint16_t bad[] = {1, 1, 0, 1};
  const std::uint16_t good[] = {0, 1, 1, 0};
  CHECK_FALSE(is_almost_consecutive_free(std::span<const std::uint16_t>(bad)));
  CHECK(is_almost_consecutive_free(std::span<const std::uint16_t>(good)));
}

TEST_CASE("dominance construction of R matches the factorization definition") {
  const int N = 10;
  const auto levels = build_levels(10, N);
  for (const auto& L : levels) {
    CAPTURE(L.n);
    std::size_t expected = 0;
    for (std::size_t k = 0; k < L.C.size(); ++k) {
      const Row z = to_row(L.C.row(k));
      const bool restricted = oracle_restricted(z, L.n);
      CHECK(L.R.contains(ExponentVector(z, L.n)) == restricted);
      expected += restricted ? 1 : 0;
    }
    CHECK(L.R.size() == expected);
  }
}

TEST_CASE("restricted points have only S-type non-trivial factorizations") {
  const auto levels = build_levels(9, 9);
  for (const auto& L : levels) {
    for (const auto& z : L.C.members()) {
      bool allS = true;
      for (const auto& f : enumerate_factorizations(z)) {
        if (!f.is_trivial() && !f.is_s_type()) allS = false;
      }
      CHECK(allS == L.R.contains(z));
    }
  }
}

TEST_CASE("factorization enumeration matches brute-force partitions") {
  const auto z = vec({0, 0, 1, 1, 0}, 5, 5);
  const auto fs = enumerate_factorizations(z);
  REQUIRE(fs.size() == 2);
  int trivial = 0;
  for (const auto& f : fs) {
    trivial += f.is_trivial() ? 1 : 0;
    CHECK(f.target == z);
  }
  CHECK(trivial == 1);

  for (int n = 2; n <= 8; ++n) {
    for_each_V(n, 8, [&](std::span<const std::uint16_t> r) {
      const ExponentVector x(std::vector<std::uint32_t>(r.begin(), r.end()), n);
      if (x.total() > 9) return;
      std::set<std::vector<Row>> got;
      for (const auto& f : enumerate_factorizations(x)) {
        std::vector<Row> parts;
        for (const auto& p : f.parts) parts.push_back(to_row(p));
        CHECK(std::is_sorted(parts.begin(), parts.end()));
        CHECK(got.insert(parts).second);
      }
      CHECK(got == oracle_factorizations(to_row(x)));
    });
  }
}

TEST_CASE("factorization cap and improper factorizations") {
  const auto z = vec({1, 0, 0, 4}, 13, 7);
  const auto all = enumerate_factorizations(z);
  const auto capped = enumerate_factorizations(z, 2);
  CHECK(capped.size() < all.size());
  for (const auto& f : capped) CHECK(f.parts.size() <= 2);
  const auto improper = std::count_if(all.begin(), all.end(), [](const Factorization& f) { return f.is_improper(); });
  CHECK(improper == 1);
}

TEST_CASE("S generators lie in V_n and the shift maps V_{n-1} into V_n") {
  for (int n = 1; n <= 13; ++n) {
    for (const auto& x : s_generators(n, 13)) {
      CHECK(satisfies_system(x));
      CHECK(x.n() == n);
      CHECK(is_almost_consecutive_free(x));
      CHECK(in_some_S(x));
    }
  }
  CHECK(x_vector(5, 3, 6).trimmed() == "(2,3)");
  CHECK(x_vector(5, 6, 6).trimmed() == "(0,0,0,0,1)");
  CHECK(x_vector(5, 5, 6).trimmed() == "(0,0,1,1)");
  CHECK_THROWS_AS(x_vector(5, 7, 6), std::domain_error);

  for (int n = 1; n <= 8; ++n) {
    for_each_V(n, 9, [&](std::span<const std::uint16_t> r) {
      const ExponentVector x(std::vector<std::uint32_t>(r.begin(), r.end()), n);
      const auto y = shift_lambda(x);
      CHECK(y.n() == n + 1);
      CHECK(satisfies_system(y));
    });
  }
  CHECK_THROWS_AS(shift_lambda(vec({0, 0, 1}, 3, 3)), std::overflow_error);
}

TEST_CASE("satisfies_system agrees with enumeration on random vectors") {
  std::mt19937 rng(99);
  const int N = 8;
  std::map<int, SetFamily> V;
  for (int n = 1; n <= N; ++n) V.emplace(n, enumerate_V(n, N));
  std::uniform_int_distribution<int> small(0, 3);
  std::uniform_int_distribution<int> index(1, N);
  int hits = 0;
  for (int trial = 0; trial < 5000; ++trial) {
    const int n = index(rng);
    std::vector<std::uint32_t> e(static_cast<std::size_t>(N), 0);
    for (int i = 0; i < n; ++i) e[static_cast<std::size_t>(i)] = static_cast<std::uint32_t>(small(rng));
    const ExponentVector x(e, n);
    const bool member = V.at(n).contains(x);
    CHECK(satisfies_system(x) == member);
    hits += member ? 1 : 0;
  }
  CHECK(hits > 0);
}

TEST_CASE("delta sets for small n") {
  const auto levels = build_levels(11, 13);
  for (int n : {1, 2, 3, 4, 5, 6, 8}) CHECK(levels[static_cast<std::size_t>(n - 1)].delta.empty());
  const auto& d7 = levels[6].delta;
  REQUIRE(d7.size() == 1);
  CHECK(d7[0].trimmed() == "(1,0,0,4)");
  REQUIRE(levels[8].delta.size() == 1);
  CHECK(levels[8].delta[0].trimmed() == "(1,0,0,3,0,3)");
  REQUIRE(levels[9].delta.size() == 1);
  CHECK(levels[9].delta[0].trimmed() == "(1,0,0,2,0,6)");
  std::set<std::string> d11;
  for (const auto& z : levels[10].delta) d11.insert(z.trimmed());
  CHECK(d11 == std::set<std::string>{"(1,0,0,0,0,11)", "(1,0,0,1,0,8,0,1)", "(1,0,0,1,0,9,1)",
                                     "(1,0,0,2,0,5,0,2)", "(1,0,0,3,0,2,0,3)"});
}

TEST_CASE("lattice argument validation") {
  CHECK_THROWS_AS(for_each_V(0, 5, [](auto) {}), std::domain_error);
  CHECK_THROWS_AS(for_each_V(6, 5, [](auto) {}), std::domain_error);
  CHECK_THROWS_AS(enumerate_C(3, kMaxLatticeDimension + 1), std::domain_error);
  CHECK_THROWS_AS(ExponentVector({1, 0, 2}, 2), std::domain_error);
  CHECK_THROWS_AS(enumerate_R(enumerate_C(5, 8), std::vector<SetFamily>{}), DependencyError);
  std::vector<SetFamily> wrong{SetFamily(1, 8, SetKind::C)};
  CHECK_THROWS_AS(enumerate_R(enumerate_C(2, 8), wrong), DependencyError);
}
