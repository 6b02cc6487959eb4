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

#include "qdl/numeric.hpp"

#include <algorithm>
#include <chrono>
#include <random>

#include "qdl/rng.hpp"

namespace qdl {

double log_factorial(std::int64_t n) { return std::lgamma(static_cast<double>(n) + 1.0); }

std::optional<std::uint64_t> binomial_exact(std::int64_t n, std::int64_t k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 r = 1;
  for (std::int64_t i = 1; i <= k; ++i) {
    r = r * static_cast<unsigned __int128>(n - k + i) / static_cast<unsigned __int128>(i);
    if (r > std::numeric_limits<std::uint64_t>::max()) return std::nullopt;
  }
  return static_cast<std::uint64_t>(r);
}

double log_binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || n < 0 || k > n) return -std::numeric_limits<double>::infinity();
  // Exact integers below 2^53 give a correctly rounded logarithm.
  if (auto exact = binomial_exact(n, k); exact && *exact < (std::uint64_t{1} << 53)) {
    return std::log(static_cast<double>(*exact));
  }
  return log_factorial(n) - log_factorial(k) - log_factorial(n - k);
}

double log_add_exp(double a, double b) {
  if (a == -std::numeric_limits<double>::infinity()) return b;
  if (b == -std::numeric_limits<double>::infinity()) return a;
  const double hi = std::max(a, b);
  return hi + std::log1p(std::exp(std::min(a, b) - hi));
}

double log_sum_exp(std::span<const double> xs) {
  double hi = -std::numeric_limits<double>::infinity();
  for (double x : xs) hi = std::max(hi, x);
  if (hi == -std::numeric_limits<double>::infinity()) return hi;
  double acc = 0.0;
  for (double x : xs) acc += std::exp(x - hi);
  return hi + std::log(acc);
}

std::uint64_t generate_seed() {
  std::random_device rd;
  const auto now = static_cast<std::uint64_t>(
      std::chrono::high_resolution_clock::now().time_since_epoch().count());
  return splitmix64((static_cast<std::uint64_t>(rd()) << 32) ^ rd() ^ now);
}

}  // namespace qdl
