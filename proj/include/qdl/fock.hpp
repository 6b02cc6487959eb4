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

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qdl/rng.hpp"

namespace qdl {

inline constexpr std::uint64_t kDefaultBasisCap = 10'000'000;

/// A Fock basis element: photon count per optical mode.
class ModeConfig {
 public:
  ModeConfig() = default;
  explicit ModeConfig(std::vector<int> occupations);

  int modes() const { return static_cast<int>(occupations_.size()); }
  int photons() const { return photons_; }
  std::span<const int> occupations() const { return occupations_; }
  int operator[](std::size_t mode) const { return occupations_[mode]; }
  int max_occupation() const;

  /// Dash-joined occupations, e.g. "1-0-2".
  std::string to_string() const;

  auto operator<=>(const ModeConfig&) const = default;

 private:
  std::vector<int> occupations_;
  int photons_ = 0;
};

/// Non-increasing positive parts; labels the symmetry subspace H_q. The
/// implicit zero padding up to m modes is not stored.
class PhotonPattern {
 public:
  PhotonPattern() = default;
  explicit PhotonPattern(std::vector<int> parts);

  /// Parses the dash-joined form ("2-1"). Throws DomainError.
  static PhotonPattern parse(std::string_view text);
  static PhotonPattern bunched(int n) { return PhotonPattern({n}); }
  static PhotonPattern no_collision(int n) { return PhotonPattern(std::vector<int>(n, 1)); }

  std::span<const int> parts() const { return parts_; }
  std::size_t size() const { return parts_.size(); }
  int photons() const;
  /// Product of part factorials, the normalization of a bunched Fock state.
  double factorial_product() const;
  bool fits(int modes) const { return static_cast<int>(parts_.size()) <= modes; }

  std::string to_string() const;

  auto operator<=>(const PhotonPattern&) const = default;

 private:
  std::vector<int> parts_;
};

struct PatternInfo {
  PhotonPattern pattern;
  std::uint64_t subspace_dim = 0;  ///< number of ModeConfigs carrying the pattern
};

/// Ordered, duplicate-free set of single-occupancy code words.
struct CodeBook {
  int m = 0;
  int n = 0;
  std::vector<ModeConfig> codewords;

  std::size_t size() const { return codewords.size(); }
  const ModeConfig& operator[](std::size_t i) const { return codewords[i]; }
};

/// d = C(n+m-1, n). Throws DomainError for m < 1 or n < 0 and ResourceError
/// when d does not fit in 64 bits (use log2_dim_hilbert there).
std::uint64_t dim_hilbert(int m, int n);
double log2_dim_hilbert(int m, int n);

/// C = C(m, n), the number of single-occupancy states. n > m is a DomainError.
std::uint64_t num_codewords(int m, int n);
double log2_num_codewords(int m, int n);

/// Every n-photon configuration of m modes in descending lexicographic order;
/// the position is the canonical index.
std::vector<ModeConfig> enumerate_basis(int m, int n, std::uint64_t cap = kDefaultBasisCap);

std::uint64_t rank(const ModeConfig& config);
ModeConfig unrank(int m, int n, std::uint64_t index);

PhotonPattern pattern_of(const ModeConfig& config);

/// Partitions of n into at most m parts, ascending lexicographic order, each
/// with its subspace dimension m! / prod_v (#modes with occupancy v)!.
std::vector<PatternInfo> enumerate_patterns(int m, int n);
std::uint64_t pattern_subspace_dim(int m, const PhotonPattern& pattern);

/// Pattern placed on the leading modes: (2,1) at m = 4 gives |2,1,0,0>.
ModeConfig leading_placement(int m, const PhotonPattern& pattern);

/// |1,...,1,0,...,0> with n photons.
ModeConfig first_codeword(int m, int n);

/// Rank of a single-occupancy configuration among the C code words, and its
/// inverse. Order agrees with enumerate_basis restricted to code words.
std::uint64_t codeword_rank(const ModeConfig& codeword);
ModeConfig codeword_unrank(int m, int n, std::uint64_t index);

/// M = max(1, round(xi * C)).
std::uint64_t codebook_size(int m, int n, double xi);

/// M code words drawn uniformly without replacement, sorted by canonical
/// order. Deterministic for a given generator state.
CodeBook sample_codebook(int m, int n, double xi, Rng& rng);

}  // namespace qdl
