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

#include "fibmahler/config.hpp"

#include <fstream>
#include <stdexcept>

#include "fibmahler/arithmetic.hpp"
#include "fibmahler/errors.hpp"
#include "fibmahler/lattice.hpp"

namespace fibmahler {

const char* to_string(OutputFormat f) {
  switch (f) {
    case OutputFormat::Tsv: return "tsv";
    case OutputFormat::Csv: return "csv";
    case OutputFormat::Json: return "json";
  }
  return "?";
}

OutputFormat parse_output_format(const std::string& text) {
  if (text == "tsv") return OutputFormat::Tsv;
  if (text == "csv") return OutputFormat::Csv;
  if (text == "json") return OutputFormat::Json;
  throw std::invalid_argument("unknown output format '" + text + "' (expected csv, json or tsv)");
}

void RunConfig::validate() const {
  if (N < 3 || N > kMaxLatticeDimension) {
    throw std::invalid_argument("N must lie in [3, " + std::to_string(kMaxLatticeDimension) + "]");
  }
  if (precisionBits < 96 || precisionBits > 4096) throw std::invalid_argument("precision must lie in [96, 4096] bits");
  if (!(tol > 0) || !(tol < 1e-3)) throw std::invalid_argument("tol must lie in (0, 1e-3)");
  if (p < 2 || !is_prime(p)) throw std::invalid_argument("p=" + std::to_string(p) + " is not prime");
  if (q < 2 || !is_prime(q)) throw std::invalid_argument("q=" + std::to_string(q) + " is not prime");
  if (p == q) throw std::invalid_argument("p and q must differ");
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <typename T>
T parse_whole(const std::string& key, const std::string& value) {
  std::size_t used = 0;
  unsigned long long v = 0;
  try {
    if (!value.empty() && value.front() == '-') throw std::invalid_argument("negative");
    v = std::stoull(value, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("bad integer for " + key + ": '" + value + "'");
  }
  if (used != value.size()) throw std::invalid_argument("bad integer for " + key + ": '" + value + "'");
  return static_cast<T>(v);
}

}  // namespace

void RunConfig::apply(const std::string& key, const std::string& value) {
  if (key == "N") {
    N = parse_whole<int>(key, value);
  } else if (key == "p") {
    p = parse_whole<std::uint64_t>(key, value);
  } else if (key == "q") {
    q = parse_whole<std::uint64_t>(key, value);
  } else if (key == "precision") {
    precisionBits = parse_whole<long>(key, value);
  } else if (key == "tol") {
    std::size_t used = 0;
    try {
      tol = std::stod(value, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != value.size()) throw std::invalid_argument("bad number for tol: '" + value + "'");
  } else if (key == "cache-dir") {
    cacheDir = value;
  } else if (key == "format") {
    format = parse_output_format(value);
  } else {
    throw std::invalid_argument("unknown config key '" + key + "'");
  }
}

void RunConfig::apply_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config file " + path.string());
  std::string line;
  int lineNo = 0;
  while (std::getline(in, line)) {
    ++lineNo;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument(path.string() + ":" + std::to_string(lineNo) + ": expected key=value");
    }
    apply(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
}

}  // namespace fibmahler
