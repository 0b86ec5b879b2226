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

#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "doctest.h"
#include "fibmahler/errors.hpp"
#include "fibmahler/report.hpp"

using namespace fibmahler;
namespace fs = std::filesystem;

namespace {

std::string run(int (*cmd)(int, const RunConfig&, std::ostream&), int arg, const RunConfig& cfg, int& code) {
  std::ostringstream out;
  code = cmd(arg, cfg, out);
  return out.str();
}

}  // namespace

TEST_CASE("run config parsing and validation") {
  RunConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  cfg.apply("N", "10");
  cfg.apply("p", "2");
  cfg.apply("q", "3");
  cfg.apply("precision", "200");
  cfg.apply("tol", "1e-10");
  cfg.apply("format", "json");
  cfg.apply("cache-dir", "/tmp/x");
  CHECK(cfg.N == 10);
  CHECK(cfg.p == 2);
  CHECK(cfg.q == 3);
  CHECK(cfg.precisionBits == 200);
  CHECK(cfg.tol == 1e-10);
  CHECK(cfg.format == OutputFormat::Json);
  CHECK(cfg.cacheDir == fs::path("/tmp/x"));
  CHECK_THROWS_AS(cfg.apply("colour", "red"), std::invalid_argument);
  CHECK_THROWS_AS(cfg.apply("N", "ten"), std::invalid_argument);
  CHECK_THROWS_AS(cfg.apply("p", "-3"), std::invalid_argument);
  CHECK_THROWS_AS(parse_output_format("xml"), std::invalid_argument);

  const auto bad = [](auto mutate) {
    RunConfig c;
    mutate(c);
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  };
  bad([](RunConfig& c) { c.N = 2; });
  bad([](RunConfig& c) { c.N = 25; });
  bad([](RunConfig& c) { c.precisionBits = 64; });
  bad([](RunConfig& c) { c.tol = 0; });
  bad([](RunConfig& c) { c.tol = 0.5; });
  bad([](RunConfig& c) { c.p = 4; });
  bad([](RunConfig& c) { c.q = 1879; });
}

TEST_CASE("run config file") {
  const auto path = fs::temp_directory_path() / "fibmahler_cfg_test.conf";
  {
    std::ofstream f(path);
    f << "# defaults for a small run\nN = 9\np=23  # inline comment\nq=157\n\nformat=csv\n";
  }
  RunConfig cfg;
  cfg.apply_file(path);
  CHECK(cfg.N == 9);
  CHECK(cfg.p == 23);
  CHECK(cfg.q == 157);
  CHECK(cfg.format == OutputFormat::Csv);
  {
    std::ofstream f(path);
    f << "N\n";
  }
  CHECK_THROWS_AS(cfg.apply_file(path), std::invalid_argument);
  fs::remove(path);
  CHECK_THROWS_AS(cfg.apply_file(path), IoError);
}

TEST_CASE("exit codes") {
  CHECK(exit_code(CertificateStatus::Certified) == kExitOk);
  CHECK(exit_code(CertificateStatus::Violated) == kExitViolated);
  CHECK(exit_code(CertificateStatus::Inconclusive) == kExitInconclusive);
}

TEST_CASE("table command in every format") {
  RunConfig cfg;
  int code = -1;
  const auto tsv = run(cmd_table, 8, cfg, code);
  CHECK(code == 0);
  CHECK(tsv.rfind("n\tV\tC\tR\tS\n", 0) == 0);
  CHECK(tsv.find("\n8\t") != std::string::npos);

  cfg.format = OutputFormat::Json;
  const auto js = nlohmann::json::parse(run(cmd_table, 8, cfg, code));
  REQUIRE(js.size() == 8);
  CHECK(js[7]["n"] == 8);
  CHECK(js[0]["V"] == 1);

  cfg.format = OutputFormat::Csv;
  CHECK(run(cmd_table, 3, cfg, code).rfind("n,V,C,R,S\n", 0) == 0);
  // Deterministic output.
  CHECK(run(cmd_table, 6, cfg, code) == run(cmd_table, 6, cfg, code));
  CHECK_THROWS(run(cmd_table, 14, cfg, code));
}

TEST_CASE("delta command") {
  RunConfig cfg;
  int code = -1;
  CHECK(run(cmd_delta, 1, cfg, code) == "None\n");
  CHECK(code == 0);
  cfg.format = OutputFormat::Json;
  const auto js = nlohmann::json::parse(run(cmd_delta, 7, cfg, code));
  CHECK(js["n"] == 7);
  for (const auto& v : js["vectors"]) CHECK(v.is_array());
  cfg.format = OutputFormat::Csv;
  const auto csv = run(cmd_delta, 7, cfg, code);
  if (csv != "None\n") CHECK(csv.front() == '"');
}

TEST_CASE("verify and exceptional commands") {
  RunConfig cfg;
  int code = -1;
  const auto out = run([](int n, const RunConfig& c, std::ostream& o) { return cmd_verify(n, c, o); }, 5, cfg, code);
  CHECK(code == kExitOk);
  CHECK(out.find("certified") != std::string::npos);

  cfg.format = OutputFormat::Json;
  const auto js = nlohmann::json::parse(
      run([](int n, const RunConfig& c, std::ostream& o) { return cmd_verify(n, c, o); }, 6, cfg, code));
  CHECK(js["status"] == "certified");
  CHECK(js["levels"].size() == 6);

  cfg.format = OutputFormat::Tsv;
  const auto ex =
      run([](int n, const RunConfig& c, std::ostream& o) { return cmd_exceptional(n, c, o); }, 7, cfg, code);
  CHECK(code == kExitOk);
  CHECK(ex.rfind("count\t5\n", 0) == 0);

  RunConfig swapped;
  swapped.p = 198301;
  swapped.q = 1879;
  CHECK(run([](int n, const RunConfig& c, std::ostream& o) { return cmd_verify(n, c, o); }, 5, swapped, code)
            .find("incompatible pair") != std::string::npos);
  CHECK(code == kExitIncompatible);
  run([](int n, const RunConfig& c, std::ostream& o) { return cmd_exceptional(n, c, o); }, 5, swapped, code);
  CHECK(code == kExitIncompatible);
}

TEST_CASE("compat and search commands") {
  RunConfig cfg;
  std::ostringstream out;
  CHECK(cmd_compat(cfg, out) == kExitOk);
  CHECK(out.str().find("compatible\ttrue") != std::string::npos);

  cfg.format = OutputFormat::Json;
  std::ostringstream js;
  cmd_compat(cfg, js);
  const auto parsed = nlohmann::json::parse(js.str());
  CHECK(parsed["compatible"] == true);
  CHECK(parsed["breakpoints"].size() == 12);

  RunConfig swapped;
  swapped.p = 198301;
  swapped.q = 1879;
  std::ostringstream bad;
  CHECK(cmd_compat(swapped, bad) == kExitIncompatible);

  std::ostringstream search;
  CHECK(cmd_search(13, 1875, 1880, 5, cfg, search) == kExitOk);
  const auto rows = nlohmann::json::parse(search.str());
  REQUIRE_FALSE(rows["pairs"].empty());
  CHECK(rows["pairs"][0]["p"] == 1879);
  CHECK(rows["pairs"][0]["q"] == 198301);
}

TEST_CASE("plot command") {
  RunConfig cfg;
  std::ostringstream out;
  CHECK(cmd_plot(7, 0.5, 3.0, 50, cfg, out) == kExitOk);
  std::istringstream in(out.str());
  std::string line;
  int rows = 0;
  std::getline(in, line);
  // t, six generators, R_7 \ S_7 (one vector), envelope, marker
  CHECK(line.find("(1,0,0,4)") != std::string::npos);
  while (std::getline(in, line)) ++rows;
  CHECK(rows == 50);
}
