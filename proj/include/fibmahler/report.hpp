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
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"

#include "fibmahler/config.hpp"
#include "fibmahler/intersection.hpp"
#include "fibmahler/lattice.hpp"
#include "fibmahler/verifier.hpp"

namespace fibmahler {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitViolated = 2;
inline constexpr int kExitInconclusive = 3;
inline constexpr int kExitIncompatible = 4;

int exit_code(CertificateStatus status);

/// Zero-trimmed entries as a JSON integer array.
nlohmann::ordered_json to_json(const ExponentVector& x);
nlohmann::ordered_json to_json(const Breakpoint& b);
nlohmann::ordered_json to_json(const VerificationCertificate& c);
nlohmann::ordered_json to_json(const ConjectureSummary& s);

/// Lattice levels 1..nMax for the configured N, through the V cache when a
/// cache directory is configured (held under CacheLock for the duration).
std::vector<LatticeLevel> load_levels(int nMax, const RunConfig& config);

int cmd_table(int nMax, const RunConfig& config, std::ostream& out);
int cmd_delta(int n, const RunConfig& config, std::ostream& out);
int cmd_verify(int n, const RunConfig& config, std::ostream& out, const GridConfig& grid = {});
int cmd_compat(const RunConfig& config, std::ostream& out, int cap = 30);
int cmd_search(int N, std::uint64_t pMin, std::uint64_t pMax, std::size_t maxResults, const RunConfig& config,
               std::ostream& out);
int cmd_plot(int n, double tMin, double tMax, int samples, const RunConfig& config, std::ostream& out);
int cmd_exceptional(int n, const RunConfig& config, std::ostream& out, const GridConfig& grid = {});

}  // namespace fibmahler
