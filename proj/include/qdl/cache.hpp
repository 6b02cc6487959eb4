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

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qdl/fock.hpp"
#include "qdl/mc.hpp"

namespace qdl {

enum class MomentKind { c, two_gamma, raw_c };

std::string_view to_string(MomentKind kind);
MomentKind parse_moment_kind(std::string_view text);

/// One cache row. samples == 0 marks a closed-form (exact) value.
struct CacheRecord {
  int m = 0;
  int n = 0;
  PhotonPattern q;
  MomentKind kind = MomentKind::two_gamma;
  double value = 0.0;
  double stderr = 0.0;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;

  bool exact() const { return samples == 0; }
};

inline constexpr std::string_view kCacheHeader = "m,n,q,kind,value,stderr,samples,seed";

std::string format_cache_row(const CacheRecord& r);
CacheRecord parse_cache_row(std::string_view line);

/// Append-only CSV store of moment estimates.
class MomentCache {
 public:
  MomentCache() = default;
  /// Loads `path` if it exists; a missing file is an empty cache.
  explicit MomentCache(std::filesystem::path path);

  const std::vector<CacheRecord>& records() const { return records_; }
  const std::filesystem::path& path() const { return path_; }

  /// Adds the record in memory and appends it to the file (header written
  /// when the file is new).
  void append(const CacheRecord& record);

  /// Preferred record: exact values first, then the most samples; later rows
  /// win ties.
  std::optional<CacheRecord> best(int m, int n, const PhotonPattern& q, MomentKind kind) const;

  /// Every two_gamma record for (m, n), one (preferred) per pattern.
  std::vector<GammaRecord> gamma_records(int m, int n) const;

 private:
  std::filesystem::path path_;
  std::vector<CacheRecord> records_;
};

}  // namespace qdl
