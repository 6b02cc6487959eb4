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

#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>

namespace qdl {

inline constexpr double kLn2 = 0.693147180559945309417232121458176568;

/// ln(n!) via lgamma.
double log_factorial(std::int64_t n);

/// ln C(n, k); -inf when k is outside [0, n].
double log_binomial(std::int64_t n, std::int64_t k);

inline double log2_binomial(std::int64_t n, std::int64_t k) { return log_binomial(n, k) / kLn2; }

/// Exact C(n, k) when it fits in 64 bits, nullopt otherwise (or when k is
/// outside [0, n], in which case the value is 0).
std::optional<std::uint64_t> binomial_exact(std::int64_t n, std::int64_t k);

/// Stable ln(exp(a) + exp(b)); either argument may be -inf.
double log_add_exp(double a, double b);

/// Stable ln(sum_i exp(x_i)).
double log_sum_exp(std::span<const double> xs);

/// Neumaier compensated accumulator.
template <typename T>
class CompensatedSum {
 public:
  void add(T x) {
    T t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  T value() const { return sum_ + comp_; }

 private:
  T sum_{};
  T comp_{};
};

/// Componentwise compensation for complex accumulation.
template <typename T>
class CompensatedComplexSum {
 public:
  void add(std::complex<T> x) {
    re_.add(x.real());
    im_.add(x.imag());
  }
  std::complex<T> value() const { return {re_.value(), im_.value()}; }

 private:
  CompensatedSum<T> re_;
  CompensatedSum<T> im_;
};

}  // namespace qdl
