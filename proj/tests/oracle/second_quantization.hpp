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

// Reference amplitudes by expanding prod_i (sum_j U_ij a_j^dagger)^{in_i}
// acting on the vacuum as a polynomial in commuting creation operators. No
// permanents are involved.
#pragma once

#include <cmath>
#include <complex>
#include <map>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using Monomial = std::vector<int>;
using Polynomial = std::map<Monomial, std::complex<double>>;

inline double factorial(int k) {
  double f = 1.0;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

inline Polynomial apply_creation_operators(const Eigen::MatrixXcd& u, const std::vector<int>& in) {
  const int m = static_cast<int>(u.rows());
  Polynomial poly{{Monomial(m, 0), {1.0, 0.0}}};
  for (int i = 0; i < m; ++i) {
    for (int rep = 0; rep < in[i]; ++rep) {
      Polynomial next;
      for (const auto& [mono, coeff] : poly) {
        for (int j = 0; j < m; ++j) {
          Monomial grown = mono;
          ++grown[j];
          next[grown] += coeff * u(i, j);
        }
      }
      poly = std::move(next);
    }
  }
  return poly;
}

/// <out| U |in> with |k> = (a^dagger)^k / sqrt(k!) |0>.
inline std::complex<double> amplitude(const Eigen::MatrixXcd& u, const std::vector<int>& in,
                                      const std::vector<int>& out) {
  const Polynomial poly = apply_creation_operators(u, in);
  const auto it = poly.find(out);
  if (it == poly.end()) return {0.0, 0.0};
  double in_norm = 1.0;
  double out_norm = 1.0;
  for (int k : in) in_norm *= factorial(k);
  for (int k : out) out_norm *= factorial(k);
  return it->second * std::sqrt(out_norm) / std::sqrt(in_norm);
}

}  // namespace oracle
