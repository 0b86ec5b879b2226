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
#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

#include "doctest.h"
#include "fibmahler/errors.hpp"
#include "fibmahler/verifier.hpp"

using namespace fibmahler;

namespace {

const CoefficientVector& coeffs13() {
  static const CoefficientVector c = coefficient_vector(PrimePair(1879, 198301), 13);
  return c;
}

ExponentVector vec(std::vector<std::uint32_t> entries, int n) {
  entries.resize(13, 0);
  return ExponentVector(std::move(entries), n);
}

double rel_diff(const Real& a, const Real& b) { return (abs(a - b) / abs(b)).to_double(); }

const std::vector<LatticeLevel>& levels9() {
  static const auto levels = build_levels(9, 13);
  return levels;
}

}  // namespace

TEST_CASE("envelope segments and constant head") {
  const auto env = build_envelope(9, coeffs13());
  CHECK(env.segments().size() == 8);
  CHECK(env.segments().front().generator == 10);
  CHECK(env.segments().back().generator == 3);
  // Below t_n the trivial generator wins and f is constant c_n.
  const Real tn = env.breakpoints().back().value;
  for (double frac : {0.01, 0.3, 0.9}) {
    const Real t = tn * Real(frac);
    CHECK(env.generator_at(t) == 10);
    CHECK(rel_diff(env.evaluate(t), coeffs13().value(9)) < 1e-35);
  }
  const auto small = build_envelope(2, coeffs13());
  CHECK(small.generators().size() == 1);
  CHECK(rel_diff(small.evaluate(Real(3.0)), coeffs13().value(2)) < 1e-35);
  CHECK_THROWS_AS(build_envelope(14, coeffs13()), std::domain_error);
}

TEST_CASE("adjacent generators agree at each breakpoint and cross there") {
  for (int n : {5, 9, 13}) {
    const auto env = build_envelope(n, coeffs13());
    for (const auto& b : env.breakpoints()) {
      const int i = b.index;
      CAPTURE(n);
      CAPTURE(i);
      const auto& gi = env.generator(i);
      const auto& gj = env.generator(i + 1);
      CHECK(rel_diff(eval_measure_fn(gi, coeffs13(), b.value), eval_measure_fn(gj, coeffs13(), b.value)) < 1e-9);
      for (double d : {1e-4, 1e-2}) {
        const Real below = b.value * Real(1 - d);
        const Real above = b.value * Real(1 + d);
        CHECK(eval_measure_fn(gi, coeffs13(), below) > eval_measure_fn(gj, coeffs13(), below));
        CHECK(eval_measure_fn(gi, coeffs13(), above) < eval_measure_fn(gj, coeffs13(), above));
      }
    }
  }
}

TEST_CASE("envelope equals the brute-force minimum at random t") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> logt(std::log(0.05), std::log(80.0));
  for (int n : {4, 8, 12, 13}) {
    const auto env = build_envelope(n, coeffs13());
    for (int k = 0; k < 300; ++k) {
      const Real t(std::exp(logt(rng)));
      bool nearBreak = false;
      for (const auto& b : env.breakpoints()) nearBreak = nearBreak || rel_diff(t, b.value) < 1e-6;
      if (nearBreak) continue;
      const auto [best, index] = env.brute_force_min(t);
      CHECK(index == env.generator_at(t));
      CHECK(best == env.evaluate(t));
      for (const auto& g : env.generators()) {
        if (g == env.generator(index)) continue;
        CHECK(eval_measure_fn(g, coeffs13(), t) > best);
      }
    }
  }
}

TEST_CASE("min test certifies (1,0,0,4) with sound cutoffs") {
  const auto env = build_envelope(7, coeffs13());
  const auto z = vec({1, 0, 0, 4}, 7);
  const auto cert = verify_mintest(z, env);
  CHECK(cert.status == CertificateStatus::Certified);
  CHECK(cert.minMargin.sign() > 0);
  CHECK(cert.gridSize == 4096);
  CHECK(cert.headCutoff < cert.tailCutoff);
  // Independent checks beyond the sampled window.
  for (const Real& t : {cert.headCutoff * Real(0.5), cert.headCutoff * Real(0.01), cert.tailCutoff * Real(2.0),
                        cert.tailCutoff * Real(50.0)}) {
    CHECK(eval_measure_fn(z, coeffs13(), t) > env.evaluate(t));
  }
  CHECK_THROWS_AS(verify_mintest(vec({1, 0, 0, 4}, 7), build_envelope(8, coeffs13())), std::domain_error);
}

TEST_CASE("members of S_n certify by membership") {
  const auto env = build_envelope(6, coeffs13());
  for (const auto& g : env.generators()) {
    const auto cert = verify_mintest(g, env);
    CHECK(cert.status == CertificateStatus::Certified);
    CHECK(cert.minMargin.sign() >= 0);
  }
}

TEST_CASE("conjecture verification through n = 9") {
  const auto summaries = verify_through(9, coeffs13(), levels9());
  REQUIRE(summaries.size() == 9);
  for (const auto& s : summaries) {
    CAPTURE(s.n);
    CHECK(s.status == CertificateStatus::Certified);
    CHECK(s.offending.empty());
    const auto& L = levels9()[static_cast<std::size_t>(s.n - 1)];
    CHECK(s.certificates.size() == L.R.minus(L.S).size());
  }
  const auto env9 = build_envelope(9, coeffs13());
  // Prior summaries must cover 1..n-1.
  CHECK_THROWS_AS(verify_conjecture(env9, levels9()[8].R, {}), DependencyError);
  auto bad = std::vector<ConjectureSummary>(summaries.begin(), summaries.begin() + 8);
  bad[3].status = CertificateStatus::Inconclusive;
  CHECK_THROWS_AS(verify_conjecture(env9, levels9()[8].R, bad), DependencyError);

  const auto ex = exceptional_points(env9, summaries.back());
  CHECK(ex.count() == 7);
  ConjectureSummary unverified = summaries.back();
  unverified.status = CertificateStatus::Violated;
  CHECK_THROWS_AS(exceptional_points(env9, unverified), DependencyError);
}

TEST_CASE("vertex prefilter skips exactly the non-vertices of R_11") {
  const auto levels = build_levels(11, 13);
  // Only the status of earlier levels is consulted.
  std::vector<ConjectureSummary> prior(10);
  for (int k = 0; k < 10; ++k) {
    prior[static_cast<std::size_t>(k)].n = k + 1;
    prior[static_cast<std::size_t>(k)].status = CertificateStatus::Certified;
  }
  GridConfig cfg;
  cfg.vertexPrefilter = true;
  const auto s = verify_conjecture(build_envelope(11, coeffs13()), levels[10].R, prior, cfg);
  CHECK(s.status == CertificateStatus::Certified);
  REQUIRE(s.skipped.size() == 2);
  CHECK(s.skipped[0].trimmed() == "(1,0,0,1,0,8,0,1)");
  CHECK(s.skipped[1].trimmed() == "(1,0,0,2,0,5,0,2)");
  CHECK(s.certificates.size() + 2 == levels[10].R.minus(levels[10].S).size());
}

TEST_CASE("grid refinement does not flip a certificate") {
  const auto env = build_envelope(9, coeffs13());
  GridConfig coarse;
  coarse.gridSize = 512;
  for (const auto& z : levels9()[8].R.members()) {
    const auto fine = verify_mintest(z, env);
    const auto rough = verify_mintest(z, env, coarse);
    CHECK(fine.status == rough.status);
    // The coarse grid sees a subset of comparable points, so its minimum is no smaller (up to refinement).
    CHECK(rough.minMargin.to_double() >= fine.minMargin.to_double() * (1 - 1e-6) - 1e-30);
  }
}

TEST_CASE("exhausted refinement budget is inconclusive, never certified") {
  const auto env = build_envelope(9, coeffs13());
  GridConfig cfg;
  cfg.refineThreshold = 1e6;
  cfg.maxRefineEvaluations = 0;
  cfg.tol = 10.0;
  const auto z = levels9()[8].R.minus(levels9()[8].S).front();
  const auto cert = verify_mintest(z, env, cfg);
  CHECK(cert.status == CertificateStatus::Inconclusive);
  CHECK_FALSE(cert.note.empty());
}

TEST_CASE("plot data layout") {
  const auto env = build_envelope(7, coeffs13());
  const std::vector<ExponentVector> extra = {vec({1, 0, 0, 4}, 7)};
  std::ostringstream out;
  emit_plot_data(env, extra, 0.5, 4.0, 200, out);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  const auto split = [](const std::string& s) {
    std::vector<std::string> cols;
    std::stringstream ss(s);
    std::string cell;
    while (std::getline(ss, cell, '\t')) cols.push_back(cell);
    return cols;
  };
  const auto header = split(line);
  REQUIRE(header.size() == 1 + env.generators().size() + extra.size() + 2);
  CHECK(header.front() == "t");
  CHECK(header[header.size() - 2] == "envelope");
  CHECK(header.back() == "marker");
  int rows = 0;
  int markers = 0;
  double prev = 1e300;
  while (std::getline(in, line)) {
    const auto cols = split(line);
    REQUIRE(cols.size() == header.size());
    double rowMin = 1e300;
    for (std::size_t k = 1; k <= env.generators().size(); ++k) rowMin = std::min(rowMin, std::stod(cols[k]));
    const double e = std::stod(cols[cols.size() - 2]);
    CHECK(e == doctest::Approx(rowMin).epsilon(1e-14));
    CHECK(e <= prev * (1 + 1e-14));
    prev = e;
    if (cols.back() != "-") markers += static_cast<int>(std::count(cols.back().begin(), cols.back().end(), 't'));
    ++rows;
  }
  CHECK(rows == 200);
  int inWindow = 0;
  for (const auto& b : env.breakpoints()) inWindow += b.value >= Real(0.5) && b.value <= Real(4.0);
  CHECK(markers == inWindow);
  CHECK_THROWS_AS(emit_plot_data(env, extra, 2.0, 1.0, 10, out), std::domain_error);
}
