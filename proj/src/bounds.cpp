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

#include "qdl/bounds.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "qdl/errors.hpp"
#include "qdl/fock.hpp"
#include "qdl/mc.hpp"
#include "qdl/numeric.hpp"

namespace qdl {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void check_epsilon(double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw DomainError("epsilon must lie in (0, 1), got " + std::to_string(epsilon));
  }
}

void check_gamma_cmin(double gamma, double log2_c_min) {
  if (!(gamma >= 1.0)) throw DomainError("gamma must be >= 1, got " + std::to_string(gamma));
  if (!(log2_c_min <= 0.0)) throw DomainError("c_min must lie in (0, 1]");
}

double safe_log(double x) { return x > 0.0 ? std::log(x) : kNegInf; }

KeySizeReport finish(KeySizeReport r, double ln_maurer, double ln_chernoff) {
  r.log2_maurer = ln_maurer / kLn2;
  r.log2_chernoff = ln_chernoff / kLn2;
  if (r.log2_maurer >= r.log2_chernoff) {
    r.log2_K_epsilon = r.log2_maurer;
    r.active_branch = KeyBranch::maurer;
  } else {
    r.log2_K_epsilon = r.log2_chernoff;
    r.active_branch = KeyBranch::chernoff;
  }
  return r;
}

}  // namespace

void SecurityParams::validate() const {
  check_epsilon(epsilon);
  if (!(xi > 0.0 && xi <= 1.0)) throw DomainError("xi must lie in (0, 1]");
  if (!(beta > 0.0 && beta <= 1.0)) throw DomainError("beta must lie in (0, 1]");
  if (!(eta >= 0.0 && eta <= 1.0)) throw DomainError("eta must lie in [0, 1]");
}

std::string_view to_string(KeyBranch branch) {
  return branch == KeyBranch::maurer ? "maurer" : "chernoff";
}

double log2_codebook_size(int m, int n, double xi) {
  if (!(xi > 0.0 && xi <= 1.0)) throw DomainError("xi must lie in (0, 1]");
  if (binomial_exact(m, n)) return std::log2(static_cast<double>(codebook_size(m, n, xi)));
  return std::max(0.0, std::log2(xi) + log2_num_codewords(m, n));
}

KeySizeReport k_epsilon_single(int m, int n, double log2_M, double epsilon, double gamma,
                               double log2_c_min) {
  check_epsilon(epsilon);
  check_gamma_cmin(gamma, log2_c_min);
  if (!(log2_M >= 0.0)) throw DomainError("M must be >= 1");
  KeySizeReport r;
  r.m = m;
  r.n = n;
  r.epsilon = epsilon;
  r.gamma_used = gamma;
  r.log2_c_min = log2_c_min;
  r.log2_d = log2_dim_hilbert(m, n);
  r.log2_M = log2_M;

  const double ln_eps = std::log(epsilon);
  const double ln_d = r.log2_d * kLn2;
  const double ln_M = log2_M * kLn2;
  const double ln_c = log2_c_min * kLn2;
  const double ln_L = std::log(std::log(20.0) - ln_eps - ln_c);

  const double maurer_a = std::log(256.0) - 3.0 * ln_eps + ln_d - ln_M + ln_L;
  const double maurer_b = std::log(32.0) - 2.0 * ln_eps + safe_log(ln_M);
  const double ln_maurer = std::log(gamma) + log_add_exp(maurer_a, maurer_b);
  const double ln_chernoff =
      std::log(32.0) - 2.0 * ln_eps + 2.0 * std::log(kLn2 + ln_d) - ln_M - ln_c;
  return finish(r, ln_maurer, ln_chernoff);
}

KeySizeReport k_epsilon_multi(int m, int n, int nu, double xi, double epsilon, double gamma,
                              double log2_c_min) {
  check_epsilon(epsilon);
  check_gamma_cmin(gamma, log2_c_min);
  if (nu < 1) throw DomainError("nu must be >= 1");
  if (!(xi > 0.0 && xi <= 1.0)) throw DomainError("xi must lie in (0, 1]");
  KeySizeReport r;
  r.m = m;
  r.n = n;
  r.nu = nu;
  r.epsilon = epsilon;
  r.gamma_used = gamma;
  r.log2_c_min = log2_c_min;
  r.log2_d = log2_dim_hilbert(m, n);

  const double ln_eps = std::log(epsilon);
  const double ln_d_nu = nu * r.log2_d * kLn2;
  const double ln_c_nu = nu * log2_c_min * kLn2;
  const double ln_M = std::log(xi) + nu * log2_num_codewords(m, n) * kLn2;
  if (!(ln_M >= 0.0)) throw DomainError("xi C^nu must be >= 1");
  r.log2_M = ln_M / kLn2;
  const double ln_L = std::log(std::log(20.0) - ln_eps - ln_c_nu);

  const double maurer_a = std::log(512.0) - 3.0 * ln_eps + ln_d_nu - ln_M + ln_L;
  const double maurer_b = std::log(64.0) - 2.0 * ln_eps + safe_log(ln_M);
  const double ln_maurer = nu * std::log(gamma) + log_add_exp(maurer_a, maurer_b);
  const double ln_chernoff =
      std::log(32.0) - 2.0 * ln_eps + 2.0 * std::log(kLn2 + ln_d_nu) - ln_M - ln_c_nu;
  return finish(r, ln_maurer, ln_chernoff);
}

KConditions k_conditions(int m, int n, double log2_M, double epsilon, double gamma,
                         double log2_c_min) {
  check_epsilon(epsilon);
  check_gamma_cmin(gamma, log2_c_min);
  const double ln_eps = std::log(epsilon);
  const double ln_d = log2_dim_hilbert(m, n) * kLn2;
  const double ln_M = log2_M * kLn2;
  const double ln_c = log2_c_min * kLn2;
  KConditions k;
  k.ln_chernoff = std::log(32.0) - 2.0 * ln_eps - ln_M - ln_c + 2.0 * std::log(kLn2 + ln_d);
  const double a = std::log(2.0) - 3.0 * ln_eps + ln_d - ln_M +
                   std::log(std::log(20.0) - ln_eps - ln_c);
  const double b = -std::log(4.0) - 2.0 * ln_eps + safe_log(ln_M);
  k.ln_maurer = std::log(128.0) + std::log(gamma) + log_add_exp(a, b);
  return k;
}

ConsumptionBranches key_consumption_branches(double gamma, int m, int n, double log2_c_min) {
  if (!(gamma > 0.0)) throw DomainError("gamma must be positive");
  const double log2_C = log2_num_codewords(m, n);
  ConsumptionBranches b;
  b.gamma_branch = std::log2(gamma) + log2_dim_hilbert(m, n) - log2_C;
  b.c_min_branch = -log2_C - log2_c_min;
  return b;
}

double key_consumption_rate(double gamma, int m, int n, double log2_c_min) {
  return key_consumption_branches(gamma, m, n, log2_c_min).rate();
}

double mutual_info_lossy(int m, int n, double eta) {
  if (!(eta >= 0.0 && eta <= 1.0)) throw DomainError("eta must lie in [0, 1]");
  const double log2_C = log2_num_codewords(m, n);
  double residual = 0.0;
  for (int k = 0; k <= n; ++k) {
    double ln_p;
    if (eta == 0.0) {
      ln_p = k == 0 ? 0.0 : kNegInf;
    } else if (eta == 1.0) {
      ln_p = k == n ? 0.0 : kNegInf;
    } else {
      ln_p = log_binomial(n, k) + k * std::log(eta) + (n - k) * std::log1p(-eta);
    }
    if (ln_p == kNegInf) continue;
    residual += std::exp(ln_p) * log2_binomial(m - k, n - k);
  }
  return log2_C - residual;
}

double net_rate(int m, int n, double eta, double beta, double gamma, double log2_c_min) {
  if (!(beta >= 0.0 && beta <= 1.0)) throw DomainError("beta must lie in [0, 1]");
  return beta * mutual_info_lossy(m, n, eta) - key_consumption_rate(gamma, m, n, log2_c_min);
}

std::vector<RatePoint> rate_loss_curve(int m, std::span<const double> eta_grid, double beta,
                                       const MomentCache& cache) {
  if (m < 1) throw DomainError("m must be >= 1");
  std::vector<double> gammas(m + 1, 0.0);
  std::string missing;
  for (int n = 1; n <= m; ++n) {
    const auto rec = cache.best(m, n, PhotonPattern::bunched(n), MomentKind::two_gamma);
    if (!rec) {
      missing += (missing.empty() ? "" : " ") + std::string("(") + std::to_string(m) + "," +
                 std::to_string(n) + ")";
      continue;
    }
    gammas[n] = rec->value;
  }
  if (!missing.empty()) {
    throw CacheMiss("missing two_gamma records for the bunched pattern at (m,n): " + missing);
  }
  std::vector<RatePoint> out;
  out.reserve(eta_grid.size());
  for (double eta : eta_grid) {
    RatePoint p;
    p.eta = eta;
    p.rate = -std::numeric_limits<double>::infinity();
    for (int n = 1; n <= m; ++n) {
      const double r = net_rate(m, n, eta, beta, gammas[n], log2_conjectured_c_min(m, n));
      if (r > p.rate) {
        p.rate = r;
        p.best_n = n;
      }
    }
    p.rate_per_mode = p.rate / m;
    out.push_back(p);
  }
  return out;
}

double FailureBounds::total() const { return std::exp(ln_p1) + std::exp(ln_p2); }

FailureBounds failure_prob_bounds(double K, double M, double d, double epsilon, double c_min,
                                  double gamma) {
  check_epsilon(epsilon);
  if (!(K > 0.0 && M >= 1.0 && d >= 1.0 && c_min > 0.0 && c_min <= 1.0 && gamma > 0.0)) {
    throw DomainError("failure_prob_bounds: parameters out of range");
  }
  FailureBounds f;
  f.ln_p1 = std::log(2.0 * d) - (epsilon / 4.0) * std::sqrt(M * K * c_min / 2.0);
  f.ln_p2 = 2.0 * d * std::log(20.0 / (epsilon * c_min)) + (epsilon * M / 4.0) * std::log(M) -
            K * M * epsilon * epsilon * epsilon / (128.0 * gamma);
  return f;
}

}  // namespace qdl
