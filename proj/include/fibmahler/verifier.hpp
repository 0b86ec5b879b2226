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
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "fibmahler/intersection.hpp"
#include "fibmahler/lattice.hpp"
#include "fibmahler/measure.hpp"

namespace fibmahler {

/// min over S_n of f_x(t), as a piecewise function:
///   (0, t_n]            generator n+1 (the trivial element, constant c_n)
///   [t_i, t_{i-1}]      generator i, 4 <= i <= n
///   [t_3, inf)          generator 3
/// For n <= 2 there is a single generator on (0, inf).
class Envelope {
 public:
  struct Segment {
    /// Lower end, 0 for the first segment.
    Real lo;
    /// Upper end, +inf for the last segment.
    Real hi;
    /// Generator index i of x_n(i).
    int generator = 0;
  };

  Envelope(int n, CoefficientVector coeffs, std::vector<Breakpoint> breakpoints);

  int n() const { return n_; }
  const CoefficientVector& coefficients() const { return coeffs_; }
  /// t_3..t_n in index order.
  const std::vector<Breakpoint>& breakpoints() const { return breakpoints_; }
  /// Ordered by t.
  const std::vector<Segment>& segments() const { return segments_; }
  const std::vector<ExponentVector>& generators() const { return generators_; }
  const ExponentVector& generator(int i) const;

  /// Generator index of the segment containing t (left segment at shared ends).
  int generator_at(const Real& t) const;
  /// f of the segment generator at t.
  Real evaluate(const Real& t) const;
  /// min over all generators at t, with the index attaining it.
  std::pair<Real, int> brute_force_min(const Real& t) const;

 private:
  int n_;
  CoefficientVector coeffs_;
  std::vector<Breakpoint> breakpoints_;
  std::vector<Segment> segments_;
  std::vector<ExponentVector> generators_;  // generators_[k] = x_n(k + 3), or x_n(n+1) for n <= 2
};

/// Requires compatible(pair, N) for the ambient N of coeffs and 1 <= n <= N.
/// Throws CompatibilityError otherwise.
Envelope build_envelope(int n, const CoefficientVector& coeffs, double tol = kDefaultTolerance);

struct GridConfig {
  int gridSize = 4096;
  int refineDepth = 24;
  /// Points with relative margin below this are refined.
  double refineThreshold = 1e-6;
  /// Relative margins at or below this after refinement are undecided.
  double tol = kDefaultTolerance;
  /// Budget of extra evaluations per vector across all refinements.
  std::uint64_t maxRefineEvaluations = 1ULL << 16;
  /// Drop non-vertices of R_n before the sweep.
  bool vertexPrefilter = false;
  /// Upper end of the grid when no tail cutoff exists.
  double fallbackTail = 512.0;
};

enum class CertificateStatus { Certified, Violated, Inconclusive };

const char* to_string(CertificateStatus s);

struct VerificationCertificate {
  ExponentVector target;
  int n = 0;
  CertificateStatus status = CertificateStatus::Inconclusive;
  /// The head bound covers (0, headCutoff].
  Real headCutoff;
  /// The tail bound covers [tailCutoff, inf).
  Real tailCutoff;
  int gridSize = 0;
  std::uint64_t refineEvaluations = 0;
  /// min over evaluated points of f_z(t) - envelope(t).
  Real minMargin;
  /// t at which the minimum margin was seen.
  Real minMarginAt;
  std::optional<Real> witness;
  std::string note;
};

/// Checks f_z(t) >= min{f_x(t) : x in S_n} for all t > 0: analytically on
/// (0, eps] and [T, inf), on a log-spaced grid with adaptive refinement in
/// between. Comparisons use f^t sums scaled by a common reference power.
VerificationCertificate verify_mintest(const ExponentVector& z, const Envelope& envelope,
                                       const GridConfig& config = {});

struct ConjectureSummary {
  int n = 0;
  CertificateStatus status = CertificateStatus::Inconclusive;
  std::vector<VerificationCertificate> certificates;
  /// Members of R_n \ S_n that did not certify.
  std::vector<ExponentVector> offending;
  /// Members skipped as non-vertices when the prefilter is on.
  std::vector<ExponentVector> skipped;
};

/// Verifies every member of R_n \ S_n. prior must hold certified summaries
/// for 1..n-1 in order; otherwise DependencyError.
ConjectureSummary verify_conjecture(const Envelope& envelope, const SetFamily& Rn,
                                    const std::vector<ConjectureSummary>& prior,
                                    const GridConfig& config = {});

/// Levels 1..nMax in order, stopping after the first level that does not
/// certify.
std::vector<ConjectureSummary> verify_through(int nMax, const CoefficientVector& coeffs,
                                              const std::vector<LatticeLevel>& levels,
                                              const GridConfig& config = {},
                                              double tol = kDefaultTolerance);

struct ExceptionalReport {
  int n = 0;
  /// t_3, t_4, ..., t_n.
  std::vector<Breakpoint> points;
  std::size_t count() const { return points.size(); }
};

/// The switching points of the envelope; requires a certified summary for n.
ExceptionalReport exceptional_points(const Envelope& envelope, const ConjectureSummary& summary);

/// Tab-separated samples over [tMin, tMax] (linear spacing, both ends
/// included): t, each S_n generator, each extra vector, the envelope, and a
/// marker column naming breakpoints in [t_k, t_{k+1}).
void emit_plot_data(const Envelope& envelope, const std::vector<ExponentVector>& extra, double tMin,
                    double tMax, int samples, std::ostream& out);

}  // namespace fibmahler
