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

#include "fibmahler/cache.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <stdexcept>
#include <sstream>
#include <system_error>
#include <vector>

#include "fibmahler/errors.hpp"

namespace fibmahler {

namespace fs = std::filesystem;

std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t seed) {
  std::uint64_t h = seed;
  for (const unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string CacheManifest::str() const {
  std::ostringstream out;
  out << "#n=" << n << ",N=" << N << ",count=" << count << ",alg=" << alg;
  if (checksum) {
    char hex[17];
    std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(*checksum));
    out << ",checksum=" << hex;
  }
  return out.str();
}

namespace {

std::uint64_t parse_number(const std::string& text, int base, const std::string& key) {
  std::uint64_t value = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value, base);
  if (ec != std::errc() || ptr != end || text.empty()) {
    throw IoError("cache manifest: bad value for " + key + ": '" + text + "'");
  }
  return value;
}

}  // namespace

CacheManifest CacheManifest::parse(const std::string& line) {
  if (line.empty() || line.front() != '#') throw IoError("cache manifest: missing '#' header line");
  std::map<std::string, std::string> fields;
  std::stringstream in(line.substr(1));
  std::string item;
  while (std::getline(in, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw IoError("cache manifest: malformed field '" + item + "'");
    fields[item.substr(0, eq)] = item.substr(eq + 1);
  }
  for (const char* key : {"n", "N", "count", "alg"}) {
    if (!fields.contains(key)) throw IoError(std::string("cache manifest: missing key ") + key);
  }
  CacheManifest m;
  m.n = static_cast<int>(parse_number(fields["n"], 10, "n"));
  m.N = static_cast<int>(parse_number(fields["N"], 10, "N"));
  m.count = parse_number(fields["count"], 10, "count");
  m.alg = fields["alg"];
  if (fields.contains("checksum")) m.checksum = parse_number(fields["checksum"], 16, "checksum");
  return m;
}

VCache::VCache(fs::path dir) : dir_(std::move(dir)) {}

fs::path VCache::file_for(int n, int N) const {
  return dir_ / ("V_n" + std::to_string(n) + "_N" + std::to_string(N) + ".csv");
}

std::optional<CacheManifest> VCache::manifest(int n, int N) const {
  std::ifstream in(file_for(n, N));
  if (!in) return std::nullopt;
  std::string line;
  if (!std::getline(in, line)) return std::nullopt;
  try {
    auto m = CacheManifest::parse(line);
    if (m.n != n || m.N != N || m.alg != kCacheAlgorithm) return std::nullopt;
    return m;
  } catch (const IoError&) {
    return std::nullopt;
  }
}

void VCache::write(const SetFamily& V) const {
  if (V.kind() != SetKind::V) throw std::invalid_argument("VCache::write: family is not a V family");
  std::error_code ec;
  fs::create_directories(dir_, ec);
  if (ec) throw IoError("cannot create cache directory " + dir_.string() + ": " + ec.message());

  std::string body;
  body.reserve(V.size() * static_cast<std::size_t>(V.dimension()) * 3);
  for (std::size_t k = 0; k < V.size(); ++k) {
    const auto r = V.row(k);
    for (std::size_t j = 0; j < r.size(); ++j) {
      if (j > 0) body += ',';
      body += std::to_string(r[j]);
    }
    body += '\n';
  }
  CacheManifest m{V.n(), V.dimension(), V.size(), kCacheAlgorithm, fnv1a64(body)};

  const fs::path target = file_for(V.n(), V.dimension());
  const fs::path tmp = target.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write cache file " + tmp.string());
    out << m.str() << '\n' << body;
    if (!out.flush()) throw IoError("write failed for " + tmp.string());
  }
  fs::rename(tmp, target, ec);
  if (ec) throw IoError("cannot move cache file into place: " + ec.message());
}

std::uint64_t VCache::stream(int n, int N, const RowVisitor& visit) const {
  const fs::path path = file_for(n, N);
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cache file missing: " + path.string());
  std::string line;
  if (!std::getline(in, line)) throw IoError("cache file empty: " + path.string());
  const auto m = CacheManifest::parse(line);
  if (m.n != n || m.N != N) throw IoError("cache manifest keys do not match " + path.string());
  if (m.alg != kCacheAlgorithm) throw IoError("cache file written by unknown algorithm " + m.alg);

  std::vector<std::uint16_t> row(static_cast<std::size_t>(N));
  std::uint64_t rows = 0;
  std::uint64_t checksum = 0xcbf29ce484222325ULL;
  while (std::getline(in, line)) {
    checksum = fnv1a64(line, checksum);
    checksum = fnv1a64("\n", checksum);
    const char* p = line.data();
    const char* end = p + line.size();
    for (int j = 0; j < N; ++j) {
      unsigned value = 0;
      const auto [next, ec] = std::from_chars(p, end, value);
      if (ec != std::errc() || value > 0xFFFF) {
        throw IoError("cache file " + path.string() + ": bad entry on row " + std::to_string(rows + 1));
      }
      row[static_cast<std::size_t>(j)] = static_cast<std::uint16_t>(value);
      p = next;
      if (j + 1 < N) {
        if (p == end || *p != ',') throw IoError("cache file " + path.string() + ": short row");
        ++p;
      }
    }
    if (p != end) throw IoError("cache file " + path.string() + ": long row");
    visit(row);
    ++rows;
  }
  if (rows != m.count) {
    throw IoError("cache file " + path.string() + ": manifest count " + std::to_string(m.count) +
                  " but " + std::to_string(rows) + " rows");
  }
  if (m.checksum && *m.checksum != checksum) {
    throw IoError("cache file " + path.string() + ": checksum mismatch");
  }
  return m.count;
}

SetFamily VCache::read(int n, int N) const {
  std::vector<std::uint16_t> rows;
  bool valid = true;
  stream(n, N, [&](std::span<const std::uint16_t> r) {
    try {
      valid = valid && satisfies_system(ExponentVector(std::vector<std::uint32_t>(r.begin(), r.end()), n));
    } catch (const std::domain_error&) {
      valid = false;
    }
    rows.insert(rows.end(), r.begin(), r.end());
  });
  if (!valid) throw IoError("cache file " + file_for(n, N).string() + " holds a non-solution");
  const std::size_t raw = rows.size() / static_cast<std::size_t>(N);
  auto family = SetFamily::from_rows(n, N, SetKind::V, std::move(rows));
  if (family.size() != raw) throw IoError("cache file " + file_for(n, N).string() + " holds duplicates");
  return family;
}

SetFamily VCache::load_or_enumerate(int n, int N) const {
  if (has(n, N)) return read(n, N);
  auto family = enumerate_V(n, N);
  write(family);
  return family;
}

VSource VCache::source() const {
  return VSource{[this](int n, int N, const RowVisitor& visit) -> std::uint64_t {
    if (!has(n, N)) write(enumerate_V(n, N));
    return stream(n, N, visit);
  }};
}

CacheLock::CacheLock(const fs::path& dir) : path_(dir / ".lock") {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create cache directory " + dir.string() + ": " + ec.message());
  const int fd = ::open(path_.c_str(), O_CREAT | O_EXCL | O_WRONLY, 0644);
  if (fd < 0) {
    throw IoError("cache directory " + dir.string() + " is locked (" + path_.string() +
                  " exists; remove it if no other run is active)");
  }
  const std::string pid = std::to_string(::getpid()) + "\n";
  [[maybe_unused]] const auto written = ::write(fd, pid.data(), pid.size());
  ::close(fd);
}

CacheLock::~CacheLock() {
  std::error_code ec;
  fs::remove(path_, ec);
}

}  // namespace fibmahler
