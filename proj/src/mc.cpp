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

#include "qdl/mc.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qdl/errors.hpp"
#include "qdl/linop.hpp"
#include "qdl/numeric.hpp"
#include "qdl/parallel.hpp"
#include "qdl/rng.hpp"

namespace qdl {
namespace {

constexpr std::uint64_t kBootstrapStream = 0xb0075742ULL;

struct ChunkResult {
  double s1 = 0.0, s2 = 0.0, s3 = 0.0, s4 = 0.0;
  std::vector<double> values;
};

// Bootstrap standard error of mean(X^2)/mean(X)^2.
double bootstrap_ratio_stderr(const std::vector<ChunkResult>& chunks, std::uint64_t total,
                              std::uint64_t seed) {
  std::vector<double> flat;
  flat.reserve(total);
  for (const auto& c : chunks) flat.insert(flat.end(), c.values.begin(), c.values.end());
  Rng rng = stream_rng(seed, kBootstrapStream);
  std::uniform_int_distribution<std::size_t> pick(0, flat.size() - 1);
  std::vector<double> ratios;
  ratios.reserve(kBootstrapResamples);
  for (int b = 0; b < kBootstrapResamples; ++b) {
    double s1 = 0.0, s2 = 0.0;
    for (std::size_t i = 0; i < flat.size(); ++i) {
      const double x = flat[pick(rng)];
      s1 += x;
      s2 += x * x;
    }
    const double mu1 = s1 / flat.size();
    ratios.push_back((s2 / flat.size()) / (mu1 * mu1));
  }
  double mean = 0.0;
  for (double r : ratios) mean += r;
  mean /= ratios.size();
  double var = 0.0;
  for (double r : ratios) var += (r - mean) * (r - mean);
  return std::sqrt(var / (ratios.size() - 1));
}

void check_pattern(int m, int n, const PhotonPattern& q) {
  if (q.photons() != n) {
    throw DomainError("pattern " + q.to_string() + " does not hold n = " + std::to_string(n) + " photons");
  }
  if (!q.fits(m)) {
    throw DomainError("pattern " + q.to_string() + " needs more than m = " + std::to_string(m) + " modes");
  }
}

}  // namespace

MomentEstimate estimate_transition_moments(const ModeConfig& in, const ModeConfig& out,
                                           std::uint64_t samples, std::uint64_t seed,
                                           unsigned workers) {
  if (in.modes() != out.modes()) throw DomainError("configurations differ in mode count");
  if (in.photons() != out.photons()) throw DomainError("photon-number mismatch");
  if (samples < kMinSamples) {
    throw DomainError("at least " + std::to_string(kMinSamples) + " samples required");
  }
  const int m = in.modes();
  const int n = in.photons();

  std::vector<int> rows;
  for (int i = 0; i < m; ++i) rows.insert(rows.end(), in[i], i);
  std::vector<int> cols;
  std::vector<int> mult;
  for (int j = 0; j < m; ++j) {
    if (out[j] > 0) {
      cols.push_back(j);
      mult.push_back(out[j]);
    }
  }
  const int width = cols.empty() ? 1 : cols.back() + 1;
  double log_norm = 0.0;
  for (int v : in.occupations()) log_norm += log_factorial(v);
  for (int v : out.occupations()) log_norm += log_factorial(v);
  const double norm = std::exp(-log_norm);

  const std::uint64_t chunks = (samples + kChunkSize - 1) / kChunkSize;
  std::vector<ChunkResult> results(chunks);
  parallel_for(chunks, workers, [&](std::size_t c) {
    Rng rng = stream_rng(seed, c);
    const std::uint64_t count = std::min<std::uint64_t>(kChunkSize, samples - c * kChunkSize);
    ChunkResult& r = results[c];
    r.values.reserve(count);
    CompensatedSum<double> s1, s2, s3, s4;
    ComplexMatrix sub(n, static_cast<Eigen::Index>(cols.size()));
    for (std::uint64_t s = 0; s < count; ++s) {
      const ComplexMatrix u = haar_isometry(m, width, rng);
      for (int a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < cols.size(); ++b) sub(a, b) = u(rows[a], cols[b]);
      }
      const double x = std::norm(permanent_repeated_columns(sub, mult, 62)) * norm;
      const double x2 = x * x;
      s1.add(x);
      s2.add(x2);
      s3.add(x2 * x);
      s4.add(x2 * x2);
      r.values.push_back(x);
    }
    r.s1 = s1.value();
    r.s2 = s2.value();
    r.s3 = s3.value();
    r.s4 = s4.value();
  });

  CompensatedSum<double> t1, t2, t3, t4;
  for (const auto& r : results) {
    t1.add(r.s1);
    t2.add(r.s2);
    t3.add(r.s3);
    t4.add(r.s4);
  }
  const double N = static_cast<double>(samples);
  const double mu1 = t1.value() / N;
  const double mu2 = t2.value() / N;
  const double mu3 = t3.value() / N;
  const double mu4 = t4.value() / N;

  MomentEstimate e;
  e.m = m;
  e.n = n;
  e.q = pattern_of(out);
  e.mean = mu1;
  e.second_moment = mu2;
  e.samples = samples;
  e.seed = seed;
  const double var1 = std::max(0.0, (t2.value() - N * mu1 * mu1) / (N - 1.0));
  e.stderr_mean = std::sqrt(var1 / N);

  // Delta method on R = mu2 / mu1^2 with the sample covariance of (X, X^2).
  const double var2 = std::max(0.0, mu4 - mu2 * mu2);
  const double cov12 = mu3 - mu1 * mu2;
  const double g1 = -2.0 * mu2 / (mu1 * mu1 * mu1);
  const double g2 = 1.0 / (mu1 * mu1);
  const double var_ratio = (g1 * g1 * var1 + 2.0 * g1 * g2 * cov12 + g2 * g2 * var2) / N;
  e.stderr_ratio = std::sqrt(std::max(0.0, var_ratio));

  const double sd = std::sqrt(var1);
  const double skew = sd > 0.0 ? (mu3 - 3.0 * mu1 * mu2 + 2.0 * mu1 * mu1 * mu1) / (sd * sd * sd) : 0.0;
  if (skew > kBootstrapSkewness) {
    e.stderr_ratio = bootstrap_ratio_stderr(results, samples, seed);
    e.bootstrapped = true;
  }
  return e;
}

MomentEstimate estimate_moments(int m, int n, const PhotonPattern& q, std::uint64_t samples,
                                std::uint64_t seed, unsigned workers) {
  check_pattern(m, n, q);
  return estimate_transition_moments(first_codeword(m, n), leading_placement(m, q), samples, seed,
                                     workers);
}

double estimate_c_q(int m, int n, const PhotonPattern& q, std::uint64_t samples, std::uint64_t seed,
                    unsigned workers) {
  return estimate_moments(m, n, q, samples, seed, workers).mean;
}

double estimate_raw_c_q(int m, int n, const PhotonPattern& q, std::uint64_t samples,
                        std::uint64_t seed, unsigned workers) {
  return q.factorial_product() * estimate_c_q(m, n, q, samples, seed, workers);
}

GammaRecord to_gamma_record(const MomentEstimate& e) {
  return GammaRecord{e.m, e.n, e.q, 2.0 * e.ratio(), 2.0 * e.stderr_ratio, e.samples, e.seed};
}

GammaRecord estimate_gamma_q(int m, int n, const PhotonPattern& q, std::uint64_t samples,
                             std::uint64_t seed, unsigned workers) {
  return to_gamma_record(estimate_moments(m, n, q, samples, seed, workers));
}

GammaBound gamma_bound(int m, int n, std::span<const GammaRecord> records) {
  if (records.empty()) throw DomainError("gamma_bound needs at least one record");
  GammaBound out;
  out.two_gamma = -std::numeric_limits<double>::infinity();
  std::vector<PhotonPattern> seen;
  for (const auto& r : records) {
    if (r.m != m || r.n != n) {
      throw DomainError("record for (" + std::to_string(r.m) + "," + std::to_string(r.n) +
                        ") passed to gamma_bound(" + std::to_string(m) + "," + std::to_string(n) + ")");
    }
    if (r.two_gamma > out.two_gamma) {
      out.two_gamma = r.two_gamma;
      out.argmax = r.q;
    }
    seen.push_back(r.q);
  }
  out.exhaustive = std::ranges::all_of(enumerate_patterns(m, n), [&](const PatternInfo& p) {
    return std::ranges::find(seen, p.pattern) != seen.end();
  });
  return out;
}

double conjectured_c_min(int m, int n) { return std::exp2(log2_conjectured_c_min(m, n)); }

double log2_conjectured_c_min(int m, int n) { return -log2_dim_hilbert(m, n); }

NoCollisionValues no_collision_values(int m, int n) {
  if (m < 1 || n < 0) throw DomainError("invalid (m, n)");
  NoCollisionValues v;
  v.log2_c_min = (log_factorial(n) - n * std::log(static_cast<double>(m))) / kLn2;
  v.c_min = std::exp2(v.log2_c_min);
  v.two_gamma = 2.0 * (n + 1);
  return v;
}

double bunched_two_gamma_exact(int m, int n) {
  if (m < 1 || n < 1) throw DomainError("bunched_two_gamma_exact needs m, n >= 1");
  const double log_value = (n + 1) * kLn2 + 2.0 * std::lgamma(m + n) - std::lgamma(m + 2.0 * n) -
                           std::lgamma(static_cast<double>(m));
  return std::exp(log_value);
}

}  // namespace qdl
