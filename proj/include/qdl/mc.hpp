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
#include <span>
#include <vector>

#include "qdl/fock.hpp"

namespace qdl {

inline constexpr std::uint64_t kChunkSize = 4096;
inline constexpr std::uint64_t kMinSamples = 1000;
inline constexpr std::uint64_t kDefaultCSamples = 200'000;
inline constexpr std::uint64_t kDefaultGammaSamples = 1'000'000;
inline constexpr int kBootstrapResamples = 200;
/// Sample skewness of X above which the ratio error is bootstrapped.
inline constexpr double kBootstrapSkewness = 10.0;

/// Monte Carlo moments of X = |<phi|U|psi>|^2 over Haar U.
struct MomentEstimate {
  int m = 0;
  int n = 0;
  PhotonPattern q;
  double mean = 0.0;           ///< E[X]
  double second_moment = 0.0;  ///< E[X^2]
  double stderr_mean = 0.0;
  double stderr_ratio = 0.0;   ///< standard error of E[X^2] / E[X]^2
  bool bootstrapped = false;   ///< stderr_ratio from the bootstrap fallback
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;

  double ratio() const { return second_moment / (mean * mean); }
};

/// Table convention: two_gamma = 2 E[X^2] / E[X]^2.
struct GammaRecord {
  int m = 0;
  int n = 0;
  PhotonPattern q;
  double two_gamma = 0.0;
  double stderr = 0.0;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
};

struct GammaBound {
  double two_gamma = 0.0;
  PhotonPattern argmax;
  /// Records covered every pattern of (m, n); otherwise the value rests on
  /// the bunched-pattern conjecture.
  bool exhaustive = false;
};

/// Moments of |<out|U|in>|^2 for arbitrary placements. Only the columns up
/// to the last occupied output mode are drawn (they are distributed exactly
/// as those of a full Haar unitary). Chunks of kChunkSize samples use
/// independent streams and are reduced in index order, so the result is
/// identical for any worker count.
MomentEstimate estimate_transition_moments(const ModeConfig& in, const ModeConfig& out,
                                           std::uint64_t samples, std::uint64_t seed,
                                           unsigned workers = 1);

/// Code word |1..1,0..0> against pattern q placed on the leading modes.
MomentEstimate estimate_moments(int m, int n, const PhotonPattern& q, std::uint64_t samples,
                                std::uint64_t seed, unsigned workers = 1);

/// c_q = E[|<phi_q|U|psi>|^2].
double estimate_c_q(int m, int n, const PhotonPattern& q, std::uint64_t samples, std::uint64_t seed,
                    unsigned workers = 1);

/// prod_j q_j! * c_q, the second moment of the bare permanent.
double estimate_raw_c_q(int m, int n, const PhotonPattern& q, std::uint64_t samples,
                        std::uint64_t seed, unsigned workers = 1);

GammaRecord estimate_gamma_q(int m, int n, const PhotonPattern& q, std::uint64_t samples,
                             std::uint64_t seed, unsigned workers = 1);

GammaRecord to_gamma_record(const MomentEstimate& e);

/// max over the supplied two_gamma values. Throws DomainError on an empty set
/// or records belonging to another (m, n).
GammaBound gamma_bound(int m, int n, std::span<const GammaRecord> records);

/// 1/d, the value every c_q takes (and c_min in particular).
double conjectured_c_min(int m, int n);
double log2_conjectured_c_min(int m, int n);

struct NoCollisionValues {
  double c_min = 0.0;       ///< n!/m^n
  double log2_c_min = 0.0;
  double two_gamma = 0.0;   ///< 2(n+1)
};
NoCollisionValues no_collision_values(int m, int n);

/// Closed form of two_gamma for q = (n): the first Haar column is uniform on
/// the sphere, so X = n! prod_{i<=n} |U_i1|^2 has Dirichlet moments and
/// two_gamma = 2^{n+1} ((m+n-1)!)^2 / ((m+2n-1)! (m-1)!).
double bunched_two_gamma_exact(int m, int n);

}  // namespace qdl
