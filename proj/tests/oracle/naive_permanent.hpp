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

// Permanent as the literal sum over all k! permutations.
#pragma once

#include <algorithm>
#include <complex>
#include <numeric>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

inline std::complex<double> naive_permanent(const Eigen::MatrixXcd& a) {
  const int k = static_cast<int>(a.rows());
  std::vector<int> sigma(k);
  std::iota(sigma.begin(), sigma.end(), 0);
  std::complex<double> total = 0.0;
  do {
    std::complex<double> term = 1.0;
    for (int i = 0; i < k; ++i) term *= a(i, sigma[i]);
    total += term;
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return total;
}

}  // namespace oracle
