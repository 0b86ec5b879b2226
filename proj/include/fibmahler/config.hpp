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
#include <filesystem>
#include <string>

#include "fibmahler/intersection.hpp"
#include "fibmahler/real.hpp"

namespace fibmahler {

enum class OutputFormat { Tsv, Csv, Json };

const char* to_string(OutputFormat f);
/// "tsv", "csv" or "json"; throws std::invalid_argument otherwise.
OutputFormat parse_output_format(const std::string& text);

struct RunConfig {
  int N = 13;
  std::uint64_t p = 1879;
  std::uint64_t q = 198301;
  long precisionBits = Real::kDefaultPrecisionBits;
  double tol = kDefaultTolerance;
  /// Empty: enumerate in memory, no disk cache.
  std::filesystem::path cacheDir;
  OutputFormat format = OutputFormat::Tsv;

  /// Throws std::invalid_argument on out-of-range values.
  void validate() const;

  /// Applies key=value lines (keys N, p, q, precision, tol, cache-dir,
  /// format; '#' starts a comment). Throws IoError for unreadable files
  /// and std::invalid_argument for unknown keys or bad values.
  void apply_file(const std::filesystem::path& path);
  void apply(const std::string& key, const std::string& value);
};

}  // namespace fibmahler
