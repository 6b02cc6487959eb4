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

// Brute-force mutual information of the photon-loss channel: enumerate every
// code word and every surviving subset, group identical detections and
// evaluate H(X) - H(X|Y) directly.
#pragma once

#include <cmath>
#include <map>
#include <vector>

namespace oracle {

inline double lossy_mutual_info(int m, int n, double eta) {
  std::vector<std::vector<int>> codewords;
  for (unsigned mask = 0; mask < (1u << m); ++mask) {
    if (__builtin_popcount(mask) == n) {
      std::vector<int> word;
      for (int i = 0; i < m; ++i) {
        if (mask & (1u << i)) word.push_back(i);
      }
      codewords.push_back(word);
    }
  }
  const double px = 1.0 / static_cast<double>(codewords.size());
  std::map<unsigned, double> py;
  std::map<std::pair<std::size_t, unsigned>, double> pxy;
  for (std::size_t x = 0; x < codewords.size(); ++x) {
    for (unsigned keep = 0; keep < (1u << n); ++keep) {
      const int k = __builtin_popcount(keep);
      const double p = std::pow(eta, k) * std::pow(1.0 - eta, n - k);
      if (p == 0.0) continue;
      unsigned detected = 0;
      for (int j = 0; j < n; ++j) {
        if (keep & (1u << j)) detected |= 1u << codewords[x][j];
      }
      py[detected] += px * p;
      pxy[{x, detected}] += px * p;
    }
  }
  double info = 0.0;
  for (const auto& [key, p] : pxy) info += p * std::log2(p / (px * py[key.second]));
  return info;
}

}  // namespace oracle
