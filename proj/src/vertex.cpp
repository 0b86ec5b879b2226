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

#include "fibmahler/vertex.hpp"

#include <algorithm>
#include <future>
#include <stdexcept>
#include <thread>

namespace fibmahler {

namespace {

/// Dense rational tableau for  M lambda = b, lambda >= 0, b >= 0, with one
/// artificial variable per row. Columns 0..m-1 are structural, m..m+r-1
/// artificial.
class Phase1 {
 public:
  Phase1(std::vector<std::vector<mpq_class>> rows, std::vector<mpq_class> rhs)
      : r_(rows.size()), m_(r_ == 0 ? 0 : rows.front().size()) {
    tab_.assign(r_, std::vector<mpq_class>(m_ + r_));
    rhs_ = std::move(rhs);
    basis_.resize(r_);
    obj_.assign(m_ + r_, 0);
    objValue_ = 0;
    for (std::size_t i = 0; i < r_; ++i) {
      for (std::size_t j = 0; j < m_; ++j) tab_[i][j] = rows[i][j];
      tab_[i][m_ + i] = 1;
      basis_[i] = m_ + i;
      for (std::size_t j = 0; j < m_; ++j) obj_[j] -= tab_[i][j];
      objValue_ -= rhs_[i];
    }
  }

  /// Runs to optimality; returns structural values when the artificial sum
  /// reaches zero.
  std::optional<std::vector<mpq_class>> solve() {
    while (true) {
      // Bland: lowest-index improving column.
      std::size_t enter = obj_.size();
      for (std::size_t j = 0; j < obj_.size(); ++j) {
        if (sgn(obj_[j]) < 0) {
          enter = j;
          break;
        }
      }
      if (enter == obj_.size()) break;
      std::size_t leave = r_;
      mpq_class best;
      for (std::size_t i = 0; i < r_; ++i) {
        if (sgn(tab_[i][enter]) <= 0) continue;
        mpq_class ratio = rhs_[i] / tab_[i][enter];
        if (leave == r_ || ratio < best || (ratio == best && basis_[i] < basis_[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave == r_) throw std::logic_error("phase-1 simplex: unbounded direction");
      pivot(leave, enter);
    }
    if (sgn(objValue_) != 0) return std::nullopt;
    std::vector<mpq_class> x(m_, 0);
    for (std::size_t i = 0; i < r_; ++i) {
      if (basis_[i] < m_) x[basis_[i]] = rhs_[i];
    }
    return x;
  }

 private:
  void pivot(std::size_t row, std::size_t col) {
    const mpq_class p = tab_[row][col];
    for (auto& v : tab_[row]) v /= p;
    rhs_[row] /= p;
    for (std::size_t i = 0; i < r_; ++i) {
      if (i == row || sgn(tab_[i][col]) == 0) continue;
      const mpq_class f = tab_[i][col];
      for (std::size_t j = 0; j < tab_[i].size(); ++j) tab_[i][j] -= f * tab_[row][j];
      rhs_[i] -= f * rhs_[row];
    }
    if (sgn(obj_[col]) != 0) {
      const mpq_class f = obj_[col];
      for (std::size_t j = 0; j < obj_.size(); ++j) obj_[j] -= f * tab_[row][j];
      objValue_ -= f * rhs_[row];
    }
    basis_[row] = col;
  }

  std::size_t r_;
  std::size_t m_;
  std::vector<std::vector<mpq_class>> tab_;
  std::vector<mpq_class> rhs_;
  std::vector<std::size_t> basis_;
  std::vector<mpq_class> obj_;
  mpq_class objValue_;  // negated artificial sum
};

}  // namespace

std::optional<ConvexWitness> convex_combination(const ExponentVector& z,
                                                const std::vector<ExponentVector>& others) {
  if (others.empty()) return std::nullopt;
  const int N = z.dimension();
  for (const auto& o : others) {
    if (o.dimension() != N) throw std::domain_error("convex_combination: dimension mismatch");
  }
  // One equation per coordinate that is not identically zero, plus sum = 1.
  std::vector<std::vector<mpq_class>> rows;
  std::vector<mpq_class> rhs;
  for (int k = 1; k <= N; ++k) {
    const bool used = z.slot(k) != 0 || std::any_of(others.begin(), others.end(),
                                                    [&](const ExponentVector& o) { return o.slot(k) != 0; });
    if (!used) continue;
    std::vector<mpq_class> row;
    row.reserve(others.size());
    for (const auto& o : others) row.emplace_back(o.slot(k));
    rows.push_back(std::move(row));
    rhs.emplace_back(z.slot(k));
  }
  rows.emplace_back(others.size(), mpq_class(1));
  rhs.emplace_back(1);

  auto solution = Phase1(std::move(rows), std::move(rhs)).solve();
  if (!solution) return std::nullopt;
  ConvexWitness w;
  w.point = z;
  for (std::size_t j = 0; j < others.size(); ++j) {
    if (sgn((*solution)[j]) > 0) {
      w.support.push_back(others[j]);
      w.weights.push_back((*solution)[j]);
    }
  }
  return w;
}

bool is_valid_witness(const ConvexWitness& w) {
  if (w.support.size() != w.weights.size() || w.support.empty()) return false;
  mpq_class total = 0;
  std::vector<mpq_class> sum(static_cast<std::size_t>(w.point.dimension()), 0);
  for (std::size_t k = 0; k < w.support.size(); ++k) {
    if (sgn(w.weights[k]) < 0) return false;
    if (w.support[k].dimension() != w.point.dimension() || w.support[k] == w.point) return false;
    total += w.weights[k];
    for (int i = 1; i <= w.point.dimension(); ++i) {
      sum[static_cast<std::size_t>(i - 1)] += w.weights[k] * w.support[k].slot(i);
    }
  }
  if (total != 1) return false;
  for (int i = 1; i <= w.point.dimension(); ++i) {
    if (sum[static_cast<std::size_t>(i - 1)] != w.point.slot(i)) return false;
  }
  return true;
}

VertexReport vertex_filter(const SetFamily& family) {
  const auto members = family.members();
  const std::size_t count = members.size();
  std::vector<std::optional<ConvexWitness>> results(count);

  const auto test = [&](std::size_t k) {
    std::vector<ExponentVector> others;
    others.reserve(count - 1);
    for (std::size_t j = 0; j < count; ++j) {
      if (j != k) others.push_back(members[j]);
    }
    return convex_combination(members[k], others);
  };

  const std::size_t workers = std::min<std::size_t>(std::max(1U, std::thread::hardware_concurrency()), count);
  std::vector<std::future<void>> tasks;
  for (std::size_t w = 0; w < workers; ++w) {
    tasks.push_back(std::async(std::launch::async, [&, w] {
      for (std::size_t k = w; k < count; k += workers) results[k] = test(k);
    }));
  }
  for (auto& t : tasks) t.get();

  VertexReport report;
  for (std::size_t k = 0; k < count; ++k) {
    if (results[k]) {
      report.nonVertices.push_back(std::move(*results[k]));
    } else {
      report.vertices.push_back(members[k]);
    }
  }
  return report;
}

}  // namespace fibmahler
