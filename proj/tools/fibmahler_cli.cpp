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

// Command-line front end: tables, delta sets, compatibility, verification,
// prime search, plot data and exceptional points.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "fibmahler/config.hpp"
#include "fibmahler/errors.hpp"
#include "fibmahler/report.hpp"

namespace {

using namespace fibmahler;

struct GlobalFlags {
  std::optional<std::uint64_t> p;
  std::optional<std::uint64_t> q;
  std::optional<int> N;
  std::optional<long> precision;
  std::optional<double> tol;
  std::optional<std::string> cacheDir;
  std::optional<std::string> format;
  std::optional<std::string> configFile;

  RunConfig resolve() const {
    RunConfig cfg;
    if (configFile) cfg.apply_file(*configFile);
    if (p) cfg.p = *p;
    if (q) cfg.q = *q;
    if (N) cfg.N = *N;
    if (precision) cfg.precisionBits = *precision;
    if (tol) cfg.tol = *tol;
    if (cacheDir) cfg.cacheDir = *cacheDir;
    if (format) cfg.format = parse_output_format(*format);
    cfg.validate();
    return cfg;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fibonacci-indexed t-metric Mahler measure computations"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalFlags g;
  app.add_option("--p", g.p, "First prime (default 1879)");
  app.add_option("--q", g.q, "Second prime (default 198301)");
  app.add_option("--N", g.N, "Ambient dimension (default 13)");
  app.add_option("--precision", g.precision, "Working precision in bits (default 128)");
  app.add_option("--tol", g.tol, "Relative tolerance for breakpoints (default 1e-12)");
  app.add_option("--cache-dir", g.cacheDir, "Directory for cached V_n enumerations");
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"csv", "json", "tsv"}));
  app.add_option("--config", g.configFile, "key=value file applied before flags")->check(CLI::ExistingFile);

  std::optional<int> nMax;
  auto* table = app.add_subcommand("table", "Cardinalities of V_n, C_n, R_n, S_n");
  table->add_option("--n-max", nMax, "Largest n (default N)");

  int n = 0;
  auto* delta = app.add_subcommand("delta", "New restricted points at level n");
  delta->add_option("--n", n, "Level")->required();

  GridConfig grid;
  auto* verify = app.add_subcommand("verify", "Verify the minimum over S_n for levels 1..n");
  verify->add_option("--n", n, "Level")->required();
  verify->add_option("--grid", grid.gridSize, "Grid points per vector")->check(CLI::Range(2, 1 << 20));
  verify->add_flag("--vertex-prefilter", grid.vertexPrefilter, "Skip non-vertices of R_n");

  auto* compat = app.add_subcommand("compat", "Compatibility of (p, q) with N");

  std::uint64_t pMin = 2;
  std::uint64_t pMax = 2000;
  std::size_t maxResults = 10;
  auto* search = app.add_subcommand("search", "Search prime pairs compatible with N");
  search->add_option("--p-min", pMin, "Smallest p")->required();
  search->add_option("--p-max", pMax, "Largest p")->required();
  search->add_option("--max-results", maxResults, "Maximum pairs listed");

  double tMin = 0.9;
  double tMax = 1.8;
  int samples = 200;
  std::string outPath;
  auto* plot = app.add_subcommand("plot", "Measure functions and envelope sampled over t");
  plot->add_option("--n", n, "Level")->required();
  plot->add_option("--t-min", tMin, "Smallest t");
  plot->add_option("--t-max", tMax, "Largest t");
  plot->add_option("--samples", samples, "Number of rows")->check(CLI::Range(2, 1 << 24));
  plot->add_option("--out", outPath, "Output file (default stdout)");

  auto* exceptional = app.add_subcommand("exceptional", "Exceptional points after verification");
  exceptional->add_option("--n", n, "Level")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    const RunConfig cfg = g.resolve();
    if (*table) return cmd_table(nMax.value_or(cfg.N), cfg, std::cout);
    if (*delta) return cmd_delta(n, cfg, std::cout);
    if (*verify) return cmd_verify(n, cfg, std::cout, grid);
    if (*compat) return cmd_compat(cfg, std::cout);
    if (*search) return cmd_search(cfg.N, pMin, pMax, maxResults, cfg, std::cout);
    if (*plot) {
      if (outPath.empty()) return cmd_plot(n, tMin, tMax, samples, cfg, std::cout);
      std::ofstream file(outPath);
      if (!file) throw IoError("cannot write " + outPath);
      const int code = cmd_plot(n, tMin, tMax, samples, cfg, file);
      if (!file.flush()) throw IoError("write failed for " + outPath);
      return code;
    }
    if (*exceptional) return cmd_exceptional(n, cfg, std::cout, grid);
  } catch (const CompatibilityError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIncompatible;
  } catch (const PrecisionError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInconclusive;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}
