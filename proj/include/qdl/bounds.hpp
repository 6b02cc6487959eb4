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

#include <span>
#include <string_view>
#include <vector>

#include "qdl/cache.hpp"

namespace qdl {

/// Protocol-level security and channel parameters.
struct SecurityParams {
  double epsilon = 0.1;  ///< in (0, 1)
  double xi = 1.0;       ///< code-book fraction, in (0, 1]
  double beta = 1.0;     ///< error-correction efficiency, in (0, 1]
  double eta = 1.0;      ///< transmissivity, in [0, 1]

  void validate() const;
};

enum class KeyBranch { chernoff, maurer };
std::string_view to_string(KeyBranch branch);

/// Minimum key-pool size K_eps. The Maurer branch is
/// gamma [256/eps^3 (d/M) ln(20/(eps c_min)) + 32/eps^2 ln M] and the
/// Chernoff branch 32/eps^2 (ln 2d)^2 / (M c_min); K_eps is their maximum.
/// All quantities are carried as logarithms.
struct KeySizeReport {
  int m = 0;
  int n = 0;
  int nu = 1;
  double epsilon = 0.0;
  double gamma_used = 0.0;
  double log2_c_min = 0.0;
  double log2_d = 0.0;
  double log2_M = 0.0;
  double log2_maurer = 0.0;
  double log2_chernoff = 0.0;
  double log2_K_epsilon = 0.0;
  KeyBranch active_branch = KeyBranch::maurer;

  double margin() const { return log2_M - log2_K_epsilon; }
};

/// log2 M for M = max(1, round(xi C)); falls back to log2 xi + log2 C when C
/// exceeds 64 bits (the rounding is then immaterial).
double log2_codebook_size(int m, int n, double xi);

KeySizeReport k_epsilon_single(int m, int n, double log2_M, double epsilon, double gamma,
                               double log2_c_min);

/// nu-fold variant with M = xi C^nu and gamma^nu, c_min^nu, d^nu; the Maurer
/// constants are 512 and 64.
KeySizeReport k_epsilon_multi(int m, int n, int nu, double xi, double epsilon, double gamma,
                              double log2_c_min);

/// The two sufficient conditions on K, written as
/// K > 32/eps^2 (ln 2d)^2/(M c_min) and
/// K > 128 gamma [2/eps^3 (d/M) ln(20/(eps c_min)) + 1/(4 eps^2) ln M],
/// as natural logarithms of their right-hand sides.
struct KConditions {
  double ln_chernoff = 0.0;
  double ln_maurer = 0.0;
};
KConditions k_conditions(int m, int n, double log2_M, double epsilon, double gamma, double log2_c_min);

struct ConsumptionBranches {
  double gamma_branch = 0.0;  ///< log2 gamma + log2(d/C)
  double c_min_branch = 0.0;  ///< log2(1/(C c_min))
  double rate() const { return gamma_branch > c_min_branch ? gamma_branch : c_min_branch; }
};
ConsumptionBranches key_consumption_branches(double gamma, int m, int n, double log2_c_min);

/// Asymptotic key consumption k in bits per channel use.
double key_consumption_rate(double gamma, int m, int n, double log2_c_min);

/// I(X;Y|K) in bits for a pure-loss channel of transmissivity eta with
/// photodetection.
double mutual_info_lossy(int m, int n, double eta);

/// beta * I(X;Y|K) - k in bits per channel use; may be negative.
double net_rate(int m, int n, double eta, double beta, double gamma, double log2_c_min);

struct RatePoint {
  double eta = 0.0;
  int best_n = 0;
  double rate = 0.0;           ///< bits per channel use
  double rate_per_mode = 0.0;  ///< rate / m
};

/// For each eta, maximizes net_rate over n in [1, m] with c_min = 1/d and
/// gamma taken from the cache's two_gamma record for the bunched pattern (n).
/// Throws CacheMiss naming every missing (m, n).
std::vector<RatePoint> rate_loss_curve(int m, std::span<const double> eta_grid, double beta,
                                       const MomentCache& cache);

/// Natural-log upper bounds on the two failure probabilities; positive values
/// are vacuous.
struct FailureBounds {
  double ln_p1 = 0.0;
  double ln_p2 = 0.0;
  double total() const;
};
FailureBounds failure_prob_bounds(double K, double M, double d, double epsilon, double c_min,
                                  double gamma);

}  // namespace qdl
