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

#include "fibmahler/report.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>

#include "fibmahler/cache.hpp"
#include "fibmahler/errors.hpp"

namespace fibmahler {

using json = nlohmann::ordered_json;

namespace {

constexpr int kDigits = 15;

std::string num(const Real& x) { return x.str(kDigits); }

/// Rows of cells printed as TSV or CSV. Cells containing the separator or a
/// quote are quoted in CSV.
class TextTable {
 public:
  explicit TextTable(std::vector<std::string> header) { rows_.push_back(std::move(header)); }
  void add(std::vector<std::string> row) { rows_.push_back(std::move(row)); }

  void print(std::ostream& out, OutputFormat format) const {
    const char sep = format == OutputFormat::Csv ? ',' : '\t';
    for (const auto& row : rows_) {
      for (std::size_t k = 0; k < row.size(); ++k) {
        if (k > 0) out << sep;
        out << cell(row[k], format);
      }
      out << '\n';
    }
  }

 private:
  static std::string cell(const std::string& s, OutputFormat format) {
    if (format != OutputFormat::Csv || s.find_first_of(",\"") == std::string::npos) return s;
    std::string quoted = "\"";
    for (char c : s) {
      if (c == '"') quoted += '"';
      quoted += c;
    }
    return quoted + "\"";
  }

  std::vector<std::vector<std::string>> rows_;
};

void require_index(int n, const RunConfig& config) {
  if (n < 1 || n > config.N) {
    throw std::invalid_argument("n must lie in [1, N=" + std::to_string(config.N) + "]");
  }
}

CoefficientVector coefficients(const RunConfig& config) {
  return coefficient_vector(PrimePair(config.p, config.q, config.precisionBits), config.N);
}

/// Prints why the configured pair cannot be used and returns kExitIncompatible,
/// or returns nullopt when the pair is compatible with N.
std::optional<int> incompatible(const RunConfig& config, std::ostream& out) {
  const PrimePair pair(config.p, config.q, config.precisionBits);
  const auto report = compatible(pair, config.N, config.tol);
  if (report.verdict) return std::nullopt;
  const std::string why = report.weakOk ? "breakpoints t_3..t_{N+1} are not strictly decreasing"
                                        : "log q / log p is outside the interval between h_N/h_{N-1} and h_{N-1}/h_{N-2}";
  if (config.format == OutputFormat::Json) {
    out << json{{"p", config.p}, {"q", config.q}, {"N", config.N}, {"compatible", false}, {"reason", why}}.dump(2)
        << '\n';
  } else {
    out << "incompatible pair (" << config.p << ", " << config.q << ") for N=" << config.N << ": " << why << '\n';
  }
  return kExitIncompatible;
}

}  // namespace

int exit_code(CertificateStatus status) {
  switch (status) {
    case CertificateStatus::Certified: return kExitOk;
    case CertificateStatus::Violated: return kExitViolated;
    case CertificateStatus::Inconclusive: return kExitInconclusive;
  }
  return kExitError;
}

json to_json(const ExponentVector& x) {
  json arr = json::array();
  for (int i = 1; i <= std::max(x.last_support(), 1); ++i) arr.push_back(x.slot(i));
  return arr;
}

json to_json(const Breakpoint& b) {
  return json{{"index", b.index},
              {"kind", b.kind == BreakpointKind::TPoint ? "t" : "s"},
              {"value", num(b.value)},
              {"bracket", json::array({num(b.lo), num(b.hi)})},
              {"exact", b.exact}};
}

json to_json(const VerificationCertificate& c) {
  json j{{"vector", to_json(c.target)},
         {"n", c.n},
         {"status", to_string(c.status)},
         {"headCutoff", num(c.headCutoff)},
         {"tailCutoff", num(c.tailCutoff)},
         {"gridSize", c.gridSize},
         {"refineEvaluations", c.refineEvaluations},
         {"minMargin", num(c.minMargin)},
         {"minMarginAt", num(c.minMarginAt)},
         {"witness", nullptr},
         {"note", c.note}};
  if (c.witness) j["witness"] = num(*c.witness);
  return j;
}

json to_json(const ConjectureSummary& s) {
  json certs = json::array();
  for (const auto& c : s.certificates) certs.push_back(to_json(c));
  json offending = json::array();
  for (const auto& x : s.offending) offending.push_back(to_json(x));
  json vectors = json::array();
  for (const auto& c : s.certificates) vectors.push_back(to_json(c.target));
  return json{{"n", s.n}, {"status", to_string(s.status)}, {"vectors", vectors}, {"certificates", certs},
              {"offending", offending}};
}

std::vector<LatticeLevel> load_levels(int nMax, const RunConfig& config) {
  if (config.cacheDir.empty()) return build_levels(nMax, config.N);
  const CacheLock lock(config.cacheDir);
  const VCache cache(config.cacheDir);
  return build_levels(nMax, config.N, cache.source());
}

int cmd_table(int nMax, const RunConfig& config, std::ostream& out) {
  require_index(nMax, config);
  const auto levels = load_levels(nMax, config);
  if (config.format == OutputFormat::Json) {
    json rows = json::array();
    for (const auto& L : levels) {
      rows.push_back(json{{"n", L.n}, {"V", L.countV}, {"C", L.C.size()}, {"R", L.R.size()}, {"S", L.S.size()}});
    }
    out << rows.dump(2) << '\n';
    return kExitOk;
  }
  TextTable table({"n", "V", "C", "R", "S"});
  for (const auto& L : levels) {
    table.add({std::to_string(L.n), std::to_string(L.countV), std::to_string(L.C.size()), std::to_string(L.R.size()),
               std::to_string(L.S.size())});
  }
  table.print(out, config.format);
  return kExitOk;
}

int cmd_delta(int n, const RunConfig& config, std::ostream& out) {
  require_index(n, config);
  const auto levels = load_levels(n, config);
  const auto& d = levels.back().delta;
  if (config.format == OutputFormat::Json) {
    json vectors = json::array();
    for (const auto& x : d) vectors.push_back(to_json(x));
    out << json{{"n", n}, {"vectors", vectors}}.dump(2) << '\n';
    return kExitOk;
  }
  if (d.empty()) out << "None\n";
  for (const auto& x : d) out << (config.format == OutputFormat::Csv ? "\"" + x.trimmed() + "\"" : x.trimmed()) << '\n';
  return kExitOk;
}

namespace {

/// Runs levels 1..n; returns the summaries (stopping at the first failure).
std::vector<ConjectureSummary> run_verification(int n, const RunConfig& config, const GridConfig& grid) {
  const auto levels = load_levels(n, config);
  GridConfig g = grid;
  g.tol = std::max(g.tol, config.tol);
  return verify_through(n, coefficients(config), levels, g, config.tol);
}

}  // namespace

int cmd_verify(int n, const RunConfig& config, std::ostream& out, const GridConfig& grid) {
  require_index(n, config);
  if (auto code = incompatible(config, out)) return *code;
  const auto summaries = run_verification(n, config, grid);
  const auto& last = summaries.back();
  const int code = exit_code(last.status);

  if (config.format == OutputFormat::Json) {
    json levels = json::array();
    for (const auto& s : summaries) levels.push_back(to_json(s));
    out << json{{"n", n}, {"p", config.p}, {"q", config.q}, {"N", config.N},
                {"status", summaries.size() == static_cast<std::size_t>(n) ? to_string(last.status) : "incomplete"},
                {"levels", levels}}
               .dump(2)
        << '\n';
    return code;
  }
  TextTable levels({"level", "status", "checked"});
  for (const auto& s : summaries) {
    levels.add({std::to_string(s.n), to_string(s.status), std::to_string(s.certificates.size())});
  }
  levels.print(out, config.format);
  out << '\n';
  TextTable certs({"vector", "status", "head_cutoff", "tail_cutoff", "grid", "refined", "min_margin", "min_margin_at", "note"});
  for (const auto& c : last.certificates) {
    certs.add({c.target.trimmed(), to_string(c.status), num(c.headCutoff), num(c.tailCutoff), std::to_string(c.gridSize),
               std::to_string(c.refineEvaluations), num(c.minMargin), num(c.minMarginAt),
               c.note.empty() ? "-" : c.note});
  }
  certs.print(out, config.format);
  if (last.status != CertificateStatus::Certified) {
    out << "\nlevel " << last.n << " " << to_string(last.status) << "; offending vectors:\n";
    for (const auto& x : last.offending) out << x.trimmed() << '\n';
  }
  return code;
}

int cmd_compat(const RunConfig& config, std::ostream& out, int cap) {
  const PrimePair pair(config.p, config.q, config.precisionBits);
  const auto report = compatible(pair, config.N, config.tol);
  const int maxN = max_compatible_N(pair, cap, config.tol);
  const int maxOrdered = max_ordered_N(pair, cap, config.tol);
  if (config.format == OutputFormat::Json) {
    json bps = json::array();
    for (const auto& b : report.breakpoints) bps.push_back(to_json(b));
    out << json{{"p", config.p},
                {"q", config.q},
                {"N", config.N},
                {"ratio", num(pair.ratio())},
                {"weak", report.weakOk},
                {"strictlyDecreasing", report.strictlyDecreasing},
                {"compatible", report.verdict},
                {"maxCompatibleN", maxN},
                {"maxOrderedN", maxOrdered},
                {"breakpoints", bps}}
               .dump(2)
        << '\n';
  } else {
    TextTable summary({"key", "value"});
    summary.add({"p", std::to_string(config.p)});
    summary.add({"q", std::to_string(config.q)});
    summary.add({"N", std::to_string(config.N)});
    summary.add({"ratio", num(pair.ratio())});
    summary.add({"weak", report.weakOk ? "true" : "false"});
    summary.add({"strictly_decreasing", report.strictlyDecreasing ? "true" : "false"});
    summary.add({"compatible", report.verdict ? "true" : "false"});
    summary.add({"max_compatible_N", std::to_string(maxN)});
    summary.add({"max_ordered_N", std::to_string(maxOrdered)});
    summary.print(out, config.format);
    if (!report.breakpoints.empty()) {
      out << '\n';
      TextTable bps({"index", "value", "lo", "hi", "exact"});
      for (const auto& b : report.breakpoints) {
        bps.add({std::to_string(b.index), num(b.value), num(b.lo), num(b.hi), b.exact ? "true" : "false"});
      }
      bps.print(out, config.format);
    }
  }
  return report.verdict ? kExitOk : kExitIncompatible;
}

int cmd_search(int N, std::uint64_t pMin, std::uint64_t pMax, std::size_t maxResults, const RunConfig& config,
               std::ostream& out) {
  const auto pairs = find_compatible_pairs(N, pMin, pMax, maxResults, config.tol, config.precisionBits);
  if (config.format == OutputFormat::Json) {
    json rows = json::array();
    for (const auto& c : pairs) {
      rows.push_back(json{{"p", c.pair.p()}, {"q", c.pair.q()}, {"offset", c.offset.str(6)}, {"maxN", c.maxN}});
    }
    out << json{{"N", N}, {"pairs", rows}}.dump(2) << '\n';
    return kExitOk;
  }
  TextTable table({"p", "q", "offset", "max_N"});
  for (const auto& c : pairs) {
    table.add({std::to_string(c.pair.p()), std::to_string(c.pair.q()), c.offset.str(6), std::to_string(c.maxN)});
  }
  table.print(out, config.format);
  return kExitOk;
}

int cmd_plot(int n, double tMin, double tMax, int samples, const RunConfig& config, std::ostream& out) {
  require_index(n, config);
  if (auto code = incompatible(config, out)) return *code;
  const auto levels = load_levels(n, config);
  const auto env = build_envelope(n, coefficients(config), config.tol);
  const auto extra = levels.back().R.minus(levels.back().S);
  emit_plot_data(env, extra, tMin, tMax, samples, out);
  return kExitOk;
}

int cmd_exceptional(int n, const RunConfig& config, std::ostream& out, const GridConfig& grid) {
  require_index(n, config);
  if (auto code = incompatible(config, out)) return *code;
  const auto summaries = run_verification(n, config, grid);
  const auto& last = summaries.back();
  if (last.n != n || last.status != CertificateStatus::Certified) {
    out << "cannot report exceptional points: level " << last.n << " is " << to_string(last.status) << '\n';
    return exit_code(last.status);
  }
  const auto env = build_envelope(n, coefficients(config), config.tol);
  const auto report = exceptional_points(env, last);
  if (config.format == OutputFormat::Json) {
    json points = json::array();
    for (const auto& b : report.points) points.push_back(to_json(b));
    out << json{{"n", n}, {"count", report.count()}, {"breakpoints", points}}.dump(2) << '\n';
    return kExitOk;
  }
  out << "count" << (config.format == OutputFormat::Csv ? ',' : '\t') << report.count() << "\n\n";
  TextTable table({"index", "value", "lo", "hi"});
  for (const auto& b : report.points) table.add({std::to_string(b.index), num(b.value), num(b.lo), num(b.hi)});
  table.print(out, config.format);
  return kExitOk;
}

}  // namespace fibmahler
