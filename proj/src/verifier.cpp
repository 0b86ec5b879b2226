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

#include "fibmahler/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <stdexcept>
#include <string>
#include <thread>

#include "fibmahler/errors.hpp"
#include "fibmahler/vertex.hpp"

namespace fibmahler {

// ---------------------------------------------------------------------------
// Envelope

Envelope::Envelope(int n, CoefficientVector coeffs, std::vector<Breakpoint> breakpoints)
    : n_(n), coeffs_(std::move(coeffs)), breakpoints_(std::move(breakpoints)) {
  const int N = coeffs_.dimension();
  if (n < 1 || n > N) throw std::domain_error("envelope: n outside [1, N]");
  const long bits = coeffs_.precision_bits();
  if (n <= 2) {
    if (!breakpoints_.empty()) throw std::invalid_argument("envelope: no breakpoints for n <= 2");
    generators_.push_back(x_vector(n, n + 1, N));
    segments_.push_back({Real(0.0, bits), Real::infinity(bits), n + 1});
    return;
  }
  if (breakpoints_.size() != static_cast<std::size_t>(n - 2)) {
    throw std::invalid_argument("envelope: expected t_3..t_n");
  }
  generators_ = s_generators(n, N);
  const auto t = [&](int i) -> const Real& { return breakpoints_[static_cast<std::size_t>(i - 3)].value; };
  segments_.push_back({Real(0.0, bits), t(n), n + 1});
  for (int i = n; i >= 4; --i) segments_.push_back({t(i), t(i - 1), i});
  segments_.push_back({t(3), Real::infinity(bits), 3});
}

const ExponentVector& Envelope::generator(int i) const {
  if (n_ <= 2) {
    if (i != n_ + 1) throw std::out_of_range("envelope: generator index");
    return generators_.front();
  }
  if (i < 3 || i > n_ + 1) throw std::out_of_range("envelope: generator index");
  return generators_[static_cast<std::size_t>(i - 3)];
}

int Envelope::generator_at(const Real& t) const {
  for (const auto& s : segments_) {
    if (t <= s.hi) return s.generator;
  }
  return segments_.back().generator;
}

Real Envelope::evaluate(const Real& t) const {
  return eval_measure_fn(generator(generator_at(t)), coeffs_, t);
}

std::pair<Real, int> Envelope::brute_force_min(const Real& t) const {
  std::optional<Real> best;
  int index = 0;
  const int first = n_ <= 2 ? n_ + 1 : 3;
  for (int i = first; i <= n_ + 1; ++i) {
    Real v = eval_measure_fn(generator(i), coeffs_, t);
    if (!best || v < *best) {
      best = std::move(v);
      index = i;
    }
  }
  return {*best, index};
}

Envelope build_envelope(int n, const CoefficientVector& coeffs, double tol) {
  const int N = coeffs.dimension();
  if (n < 1 || n > N) throw std::domain_error("build_envelope: n outside [1, N]");
  if (N < 3) return Envelope(n, coeffs, {});
  const auto report = compatible(coeffs.pair(), N, tol);
  if (!report.verdict) {
    throw CompatibilityError("primes (" + std::to_string(coeffs.pair().p()) + ", " +
                             std::to_string(coeffs.pair().q()) + ") are not compatible with N=" +
                             std::to_string(N) + (report.weakOk ? " (breakpoints not strictly decreasing)"
                                                                : " (log-ratio inequality fails)"));
  }
  std::vector<Breakpoint> bps;
  for (int i = 3; i <= n; ++i) bps.push_back(report.breakpoints[static_cast<std::size_t>(i - 3)]);
  return Envelope(n, coeffs, std::move(bps));
}

// ---------------------------------------------------------------------------
// MinTest verification

const char* to_string(CertificateStatus s) {
  switch (s) {
    case CertificateStatus::Certified: return "certified";
    case CertificateStatus::Violated: return "violated";
    case CertificateStatus::Inconclusive: return "inconclusive";
  }
  return "?";
}

namespace {

struct Sample {
  Real t;
  /// (S_z - S_min) / S_min on the common f^t scale.
  Real rel;
  /// f_z(t) - min_S f(t).
  Real margin;
};

class MarginEvaluator {
 public:
  MarginEvaluator(const ExponentVector& z, const Envelope& env) : z_(z), env_(env) {
    const auto& c = env.coefficients();
    ref_ = 1;
    for (int i = 2; i <= env.n(); ++i) {
      if (c.value(i) > c.value(ref_)) ref_ = i;
    }
  }

  Sample operator()(const Real& t) {
    ++evaluations_;
    const ScaledPowers sp(env_.coefficients(), t, ref_);
    const Real sz = sp.weighted_sum(z_.entries());
    std::optional<Real> smin;
    for (const auto& g : env_.generators()) {
      Real s = sp.weighted_sum(g.entries());
      if (!smin || s < *smin) smin = std::move(s);
    }
    return {t, (sz - *smin) / *smin, sp.measure(sz) - sp.measure(*smin)};
  }

  std::uint64_t evaluations() const { return evaluations_; }

 private:
  const ExponentVector& z_;
  const Envelope& env_;
  int ref_;
  std::uint64_t evaluations_ = 0;
};

/// Smallest T with h_{n-2} (c_1/M)^T + h_{n-1} (c_2/M)^T <= 1, i.e. the
/// tail generator x_n(3) has dropped to M. Empty when M <= c_2.
std::optional<Real> tail_cutoff(const Envelope& env, const Real& logM) {
  const auto& c = env.coefficients();
  const int n = env.n();
  const long bits = c.precision_bits();
  const Real la = c.log_value(1) - logM;
  const Real lb = c.log_value(2) - logM;
  if (la.sign() >= 0 || lb.sign() >= 0) return std::nullopt;
  const FibTable h(n);
  const Real ha = log(Real::from_integer(h.fib(n - 2), bits));
  const Real hb = log(Real::from_integer(h.fib(n - 1), bits));
  const auto g = [&](const Real& T) { return exp(ha + T * la) + exp(hb + T * lb) - Real(1.0, bits); };
  Real lo(0.0, bits);
  Real hi(1.0, bits);
  while (g(hi).sign() > 0) {
    lo = hi;
    hi = hi * Real(2.0, bits);
    if (hi.to_double() > 1048576.0) return std::nullopt;
  }
  const Real half(0.5, bits);
  for (int k = 0; k < 200 && (hi - lo) > Real(1e-12, bits) * hi; ++k) {
    Real mid = (lo + hi) * half;
    if (g(mid).sign() > 0) {
      lo = std::move(mid);
    } else {
      hi = std::move(mid);
    }
  }
  return hi;  // g(hi) <= 0: the safe side
}

class Sweep {
 public:
  Sweep(const ExponentVector& z, const Envelope& env, const GridConfig& config, VerificationCertificate& cert)
      : eval_(z, env), config_(config), cert_(cert), bits_(env.coefficients().precision_bits()) {}

  /// Records a sample; returns true when it needs refinement.
  bool record(const Sample& s) {
    if (!cert_.minMargin.is_finite() || s.margin < cert_.minMargin) {
      cert_.minMargin = s.margin;
      cert_.minMarginAt = s.t;
    }
    const double rel = s.rel.to_double();
    if (rel < -config_.tol) {
      if (!cert_.witness) cert_.witness = s.t;
      violated_ = true;
    }
    return rel < config_.refineThreshold;
  }

  Sample sample(const Real& t) { return eval_(t); }

  /// Geometric bisection of (a, b) looking for a negative margin.
  void refine(const Real& a, const Real& b, int depth) {
    if (violated_ || budgetExceeded_) return;
    if (eval_.evaluations() - baseline_ >= config_.maxRefineEvaluations) {
      budgetExceeded_ = true;
      return;
    }
    const Real mid = exp((log(a) + log(b)) * Real(0.5, bits_));
    const Sample s = eval_(mid);
    const bool small = record(s);
    if (!small) return;
    if (depth >= config_.refineDepth) {
      if (std::abs(s.rel.to_double()) <= config_.tol) undecided_ = true;
      return;
    }
    refine(a, mid, depth + 1);
    refine(mid, b, depth + 1);
  }

  void start_refinement() { baseline_ = eval_.evaluations(); }
  std::uint64_t refinement_evaluations() const { return eval_.evaluations() - baseline_; }
  bool violated() const { return violated_; }
  bool undecided() const { return undecided_ || budgetExceeded_; }
  bool budget_exceeded() const { return budgetExceeded_; }

 private:
  MarginEvaluator eval_;
  const GridConfig& config_;
  VerificationCertificate& cert_;
  long bits_;
  std::uint64_t baseline_ = 0;
  bool violated_ = false;
  bool undecided_ = false;
  bool budgetExceeded_ = false;
};

std::vector<Real> log_grid(const Real& lo, const Real& hi, int size) {
  std::vector<Real> out;
  if (size < 2) throw std::domain_error("grid needs at least 2 points");
  const Real a = log(lo);
  const Real b = log(hi);
  const long bits = lo.precision_bits();
  for (int k = 0; k < size; ++k) {
    if (k == 0) {
      out.push_back(lo);
    } else if (k == size - 1) {
      out.push_back(hi);
    } else {
      const Real frac = Real(static_cast<double>(k), bits) / Real(static_cast<double>(size - 1), bits);
      out.push_back(exp(a + (b - a) * frac));
    }
  }
  return out;
}

}  // namespace

VerificationCertificate verify_mintest(const ExponentVector& z, const Envelope& envelope,
                                       const GridConfig& config) {
  const int n = envelope.n();
  const auto& c = envelope.coefficients();
  const long bits = c.precision_bits();
  if (z.n() != n || z.dimension() != c.dimension() || !satisfies_system(z)) {
    throw std::domain_error("verify_mintest: " + z.trimmed() + " is not in V_" + std::to_string(n));
  }
  VerificationCertificate cert;
  cert.target = z;
  cert.n = n;
  cert.minMargin = Real::infinity(bits);
  cert.minMarginAt = Real(0.0, bits);

  const auto& gens = envelope.generators();
  const bool member = std::find(gens.begin(), gens.end(), z) != gens.end();
  if (member) {
    // The envelope is the minimum over a set containing z, so f_z - min >= 0
    // identically. Sample the breakpoint range as evidence only.
    cert.status = CertificateStatus::Certified;
    cert.note = "member of S_" + std::to_string(n);
    if (n >= 3) {
      cert.headCutoff = envelope.breakpoints().back().value * Real(0.5, bits);
      cert.tailCutoff = envelope.breakpoints().front().value * Real(2.0, bits);
      const int size = std::min(config.gridSize, 256);
      MarginEvaluator eval(z, envelope);
      for (const auto& t : log_grid(cert.headCutoff, cert.tailCutoff, size)) {
        const Sample s = eval(t);
        if (s.margin < cert.minMargin) {
          cert.minMargin = s.margin;
          cert.minMarginAt = t;
        }
      }
      cert.gridSize = size;
    } else {
      cert.headCutoff = Real::infinity(bits);
      cert.tailCutoff = Real(0.0, bits);
      cert.minMargin = Real(0.0, bits);
    }
    return cert;
  }

  // Head: f_z(t) >= (sum z)^{1/t} min c >= c_n for t <= log(sum z) / log(c_n / min c).
  std::optional<Real> logMin;
  std::optional<Real> logMax;
  for (int i = 1; i <= n; ++i) {
    if (z.slot(i) == 0) continue;
    const Real& lc = c.log_value(i);
    if (!logMin || lc < *logMin) logMin = lc;
    if (!logMax || lc > *logMax) logMax = lc;
  }
  const Real gap = c.log_value(n) - *logMin;
  const Real logTotal = log(Real::from_u64(z.total(), bits));
  if (gap.sign() <= 0) {
    cert.status = CertificateStatus::Certified;
    cert.headCutoff = Real::infinity(bits);
    cert.tailCutoff = Real(0.0, bits);
    cert.minMargin = Real(0.0, bits);
    cert.note = "head bound covers every t";
    return cert;
  }
  cert.headCutoff = logTotal / gap;

  // Tail: f_z >= max{c_i : z_i > 0} >= f_{x_n(3)}(T) >= envelope on [T, inf).
  bool tailValid = true;
  if (auto T = tail_cutoff(envelope, *logMax)) {
    cert.tailCutoff = std::move(*T);
  } else {
    tailValid = false;
    cert.tailCutoff = Real(config.fallbackTail, bits);
  }

  if (!(cert.headCutoff < cert.tailCutoff)) {
    cert.status = tailValid ? CertificateStatus::Certified : CertificateStatus::Inconclusive;
    cert.note = tailValid ? "head and tail bounds overlap" : "no tail bound";
    return cert;
  }

  Sweep sweep(z, envelope, config, cert);
  const auto grid = log_grid(cert.headCutoff, cert.tailCutoff, config.gridSize);
  std::vector<bool> flagged(grid.size(), false);
  for (std::size_t k = 0; k < grid.size(); ++k) flagged[k] = sweep.record(sweep.sample(grid[k]));
  cert.gridSize = static_cast<int>(grid.size());

  sweep.start_refinement();
  for (std::size_t k = 0; k < grid.size() && !sweep.violated(); ++k) {
    if (!flagged[k]) continue;
    if (k > 0) sweep.refine(grid[k - 1], grid[k], 1);
    if (k + 1 < grid.size()) sweep.refine(grid[k], grid[k + 1], 1);
  }
  cert.refineEvaluations = sweep.refinement_evaluations();

  if (sweep.violated()) {
    cert.status = CertificateStatus::Violated;
    cert.note = "negative margin";
  } else if (sweep.undecided()) {
    cert.status = CertificateStatus::Inconclusive;
    cert.note = sweep.budget_exceeded() ? "refinement budget exhausted" : "margin below tolerance at depth limit";
  } else if (!tailValid) {
    cert.status = CertificateStatus::Inconclusive;
    cert.note = "no tail bound beyond the grid";
  } else {
    cert.status = CertificateStatus::Certified;
  }
  return cert;
}

ConjectureSummary verify_conjecture(const Envelope& envelope, const SetFamily& Rn,
                                    const std::vector<ConjectureSummary>& prior, const GridConfig& config) {
  const int n = envelope.n();
  if (Rn.n() != n || Rn.kind() != SetKind::R) throw std::invalid_argument("verify_conjecture: family is not R_n");
  if (prior.size() != static_cast<std::size_t>(n - 1)) {
    throw DependencyError("verify_conjecture: summaries for 1.." + std::to_string(n - 1) + " required");
  }
  for (std::size_t k = 0; k < prior.size(); ++k) {
    if (prior[k].n != static_cast<int>(k) + 1 || prior[k].status != CertificateStatus::Certified) {
      throw DependencyError("verify_conjecture: level " + std::to_string(k + 1) + " is not certified");
    }
  }

  ConjectureSummary summary;
  summary.n = n;
  std::vector<ExponentVector> targets = Rn.minus(build_S(n, Rn.dimension()));
  if (config.vertexPrefilter && !targets.empty()) {
    const auto report = vertex_filter(Rn);
    for (const auto& w : report.nonVertices) {
      auto it = std::find(targets.begin(), targets.end(), w.point);
      if (it != targets.end()) {
        summary.skipped.push_back(*it);
        targets.erase(it);
      }
    }
  }

  std::vector<VerificationCertificate> certs(targets.size());
  const std::size_t workers = std::min<std::size_t>(std::max(1U, std::thread::hardware_concurrency()), targets.size());
  std::vector<std::future<void>> tasks;
  for (std::size_t w = 0; w < workers; ++w) {
    tasks.push_back(std::async(std::launch::async, [&, w] {
      for (std::size_t k = w; k < targets.size(); k += workers) certs[k] = verify_mintest(targets[k], envelope, config);
    }));
  }
  for (auto& t : tasks) t.get();

  summary.status = CertificateStatus::Certified;
  for (auto& cert : certs) {
    if (cert.status != CertificateStatus::Certified) {
      summary.offending.push_back(cert.target);
      if (cert.status == CertificateStatus::Violated || summary.status == CertificateStatus::Certified) {
        summary.status = cert.status;
      }
    }
    summary.certificates.push_back(std::move(cert));
  }
  return summary;
}

std::vector<ConjectureSummary> verify_through(int nMax, const CoefficientVector& coeffs,
                                              const std::vector<LatticeLevel>& levels, const GridConfig& config,
                                              double tol) {
  if (levels.size() < static_cast<std::size_t>(nMax)) {
    throw DependencyError("verify_through: lattice levels 1.." + std::to_string(nMax) + " required");
  }
  std::vector<ConjectureSummary> out;
  for (int n = 1; n <= nMax; ++n) {
    const auto env = build_envelope(n, coeffs, tol);
    out.push_back(verify_conjecture(env, levels[static_cast<std::size_t>(n - 1)].R, out, config));
    if (out.back().status != CertificateStatus::Certified) break;
  }
  return out;
}

ExceptionalReport exceptional_points(const Envelope& envelope, const ConjectureSummary& summary) {
  if (summary.n != envelope.n() || summary.status != CertificateStatus::Certified) {
    throw DependencyError("exceptional points of alpha_" + std::to_string(envelope.n()) +
                          " need a certified verification of that level");
  }
  ExceptionalReport report;
  report.n = envelope.n();
  report.points = envelope.breakpoints();
  return report;
}

void emit_plot_data(const Envelope& envelope, const std::vector<ExponentVector>& extra, double tMin, double tMax,
                    int samples, std::ostream& out) {
  if (!(tMin > 0) || !(tMin < tMax)) throw std::domain_error("plot: need 0 < tMin < tMax");
  if (samples < 2) throw std::domain_error("plot: need at least 2 samples");
  const auto& c = envelope.coefficients();
  const long bits = c.precision_bits();
  const auto& gens = envelope.generators();

  out << "t";
  for (const auto& g : gens) out << '\t' << g.trimmed();
  for (const auto& x : extra) out << '\t' << x.trimmed();
  out << "\tenvelope\tmarker\n";

  const Real lo(tMin, bits);
  const Real step = (Real(tMax, bits) - lo) / Real(static_cast<double>(samples - 1), bits);
  for (int k = 0; k < samples; ++k) {
    const Real t = k == samples - 1 ? Real(tMax, bits) : lo + step * static_cast<std::uint64_t>(k);
    const Real next = lo + step * static_cast<std::uint64_t>(k + 1);
    out << t.str(15);
    std::optional<Real> best;
    for (const auto& g : gens) {
      Real v = eval_measure_fn(g, c, t);
      out << '\t' << v.str(15);
      if (!best || v < *best) best = std::move(v);
    }
    for (const auto& x : extra) out << '\t' << eval_measure_fn(x, c, t).str(15);
    out << '\t' << best->str(15) << '\t';
    std::string marker;
    for (auto it = envelope.breakpoints().rbegin(); it != envelope.breakpoints().rend(); ++it) {
      const bool inside = it->value >= t && (k == samples - 1 ? it->value <= t : it->value < next);
      if (inside) marker += (marker.empty() ? "t_" : ",t_") + std::to_string(it->index);
    }
    out << (marker.empty() ? "-" : marker) << '\n';
  }
}

}  // namespace fibmahler
