/*
 * Copyright 2026 The qdl-lab Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "qdl/cache.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>

#include "qdl/errors.hpp"

namespace qdl {
namespace {

std::vector<std::string_view> split_csv(std::string_view line) {
  std::vector<std::string_view> fields;
  for (;;) {
    const auto comma = line.find(',');
    fields.push_back(line.substr(0, comma));
    if (comma == std::string_view::npos) break;
    line.remove_prefix(comma + 1);
  }
  return fields;
}

template <typename T>
T parse_number(std::string_view s, const char* what) {
  T value{};
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw DomainError(std::string("cache: bad ") + what + " '" + std::string(s) + "'");
  }
  return value;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.back() == '\r' || s.back() == ' ')) s.remove_suffix(1);
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  return s;
}

bool preferred(const CacheRecord& candidate, const CacheRecord& current) {
  if (candidate.exact() != current.exact()) return candidate.exact();
  return candidate.samples >= current.samples;
}

}  // namespace

std::string_view to_string(MomentKind kind) {
  switch (kind) {
    case MomentKind::c: return "c";
    case MomentKind::two_gamma: return "two_gamma";
    case MomentKind::raw_c: return "raw_c";
  }
  return "?";
}

MomentKind parse_moment_kind(std::string_view text) {
  if (text == "c") return MomentKind::c;
  if (text == "two_gamma") return MomentKind::two_gamma;
  if (text == "raw_c") return MomentKind::raw_c;
  throw DomainError("unknown moment kind '" + std::string(text) + "' (expected c, two_gamma, raw_c)");
}

std::string format_cache_row(const CacheRecord& r) {
  char value[64];
  char err[64];
  std::snprintf(value, sizeof value, "%.17g", r.value);
  std::snprintf(err, sizeof err, "%.17g", r.stderr);
  return std::to_string(r.m) + ',' + std::to_string(r.n) + ',' + r.q.to_string() + ',' +
         std::string(to_string(r.kind)) + ',' + value + ',' + err + ',' + std::to_string(r.samples) +
         ',' + std::to_string(r.seed);
}

CacheRecord parse_cache_row(std::string_view line) {
  const auto f = split_csv(trim(line));
  if (f.size() != 8) throw DomainError("cache: expected 8 fields in '" + std::string(line) + "'");
  CacheRecord r;
  r.m = parse_number<int>(f[0], "m");
  r.n = parse_number<int>(f[1], "n");
  r.q = PhotonPattern::parse(f[2]);
  r.kind = parse_moment_kind(f[3]);
  r.value = parse_number<double>(f[4], "value");
  r.stderr = parse_number<double>(f[5], "stderr");
  r.samples = parse_number<std::uint64_t>(f[6], "samples");
  r.seed = parse_number<std::uint64_t>(f[7], "seed");
  return r;
}

MomentCache::MomentCache(std::filesystem::path path) : path_(std::move(path)) {
  std::ifstream in(path_);
  if (!in) return;
  std::string line;
  while (std::getline(in, line)) {
    const auto t = trim(line);
    if (t.empty() || t.front() == '#' || t == kCacheHeader) continue;
    records_.push_back(parse_cache_row(t));
  }
}

void MomentCache::append(const CacheRecord& record) {
  records_.push_back(record);
  if (path_.empty()) return;
  const bool fresh = !std::filesystem::exists(path_) || std::filesystem::file_size(path_) == 0;
  std::ofstream out(path_, std::ios::app);
  if (!out) throw std::runtime_error("cannot open cache file " + path_.string());
  if (fresh) out << kCacheHeader << '\n';
  out << format_cache_row(record) << '\n';
}

std::optional<CacheRecord> MomentCache::best(int m, int n, const PhotonPattern& q,
                                             MomentKind kind) const {
  std::optional<CacheRecord> out;
  for (const auto& r : records_) {
    if (r.m != m || r.n != n || r.kind != kind || r.q != q) continue;
    if (!out || preferred(r, *out)) out = r;
  }
  return out;
}

std::vector<GammaRecord> MomentCache::gamma_records(int m, int n) const {
  std::vector<PhotonPattern> patterns;
  for (const auto& r : records_) {
    if (r.m == m && r.n == n && r.kind == MomentKind::two_gamma &&
        std::find(patterns.begin(), patterns.end(), r.q) == patterns.end()) {
      patterns.push_back(r.q);
    }
  }
  std::vector<GammaRecord> out;
  for (const auto& q : patterns) {
    const auto r = *best(m, n, q, MomentKind::two_gamma);
    out.push_back(GammaRecord{r.m, r.n, r.q, r.value, r.stderr, r.samples, r.seed});
  }
  return out;
}

}  // namespace qdl
