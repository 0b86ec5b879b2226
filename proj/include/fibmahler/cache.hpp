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
#include <optional>
#include <string>

#include "fibmahler/lattice.hpp"

namespace fibmahler {

/// Parsed first line of a cache file:
///   #n=<n>,N=<N>,count=<k>,alg=dfs-v1,checksum=<16 hex digits>
/// The checksum (FNV-1a 64 over every data line including its newline) is
/// optional on read; files written here always carry it.
struct CacheManifest {
  int n = 0;
  int N = 0;
  std::uint64_t count = 0;
  std::string alg;
  std::optional<std::uint64_t> checksum;

  std::string str() const;
  /// Throws IoError on a malformed line.
  static CacheManifest parse(const std::string& line);
};

inline constexpr const char* kCacheAlgorithm = "dfs-v1";

/// Directory of enumerated V_n files, one per (n, N), named V_n<n>_N<N>.csv.
class VCache {
 public:
  explicit VCache(std::filesystem::path dir);

  const std::filesystem::path& dir() const { return dir_; }
  std::filesystem::path file_for(int n, int N) const;

  /// Manifest of a present, well-formed file for (n, N).
  std::optional<CacheManifest> manifest(int n, int N) const;
  bool has(int n, int N) const { return manifest(n, N).has_value(); }

  /// Writes a V family atomically (temporary file, then rename).
  void write(const SetFamily& V) const;

  /// Reads and validates a cached family: manifest keys, count, checksum
  /// and membership of every row. Throws IoError on any mismatch.
  SetFamily read(int n, int N) const;

  /// Streams rows from the file; returns the manifest count.
  std::uint64_t stream(int n, int N, const RowVisitor& visit) const;

  /// Cache hit reads, cache miss enumerates and writes.
  SetFamily load_or_enumerate(int n, int N) const;

  /// V_n rows for build_levels, backed by this cache.
  VSource source() const;

 private:
  std::filesystem::path dir_;
};

/// Exclusive lock on a cache directory, held for the object's lifetime.
/// Throws IoError when another holder exists.
class CacheLock {
 public:
  explicit CacheLock(const std::filesystem::path& dir);
  ~CacheLock();
  CacheLock(const CacheLock&) = delete;
  CacheLock& operator=(const CacheLock&) = delete;

 private:
  std::filesystem::path path_;
};

std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t seed = 0xcbf29ce484222325ULL);

}  // namespace fibmahler
