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

#include "qdl/linop.hpp"

#include <bit>
#include <cmath>
#include <string>

#include "qdl/errors.hpp"
#include "qdl/numeric.hpp"

namespace qdl {

double unitarity_defect(const ComplexMatrix& a) {
  if (a.rows() != a.cols()) return std::numeric_limits<double>::infinity();
  const ComplexMatrix gram = a.adjoint() * a - ComplexMatrix::Identity(a.rows(), a.cols());
  return gram.cwiseAbs().maxCoeff();
}

UnitaryMatrix UnitaryMatrix::from_matrix(ComplexMatrix entries, double tolerance) {
  if (entries.rows() == 0 || entries.rows() != entries.cols()) {
    throw DomainError("unitary must be a non-empty square matrix");
  }
  const double defect = unitarity_defect(entries);
  if (!(defect <= tolerance)) {
    throw DomainError("matrix is not unitary: defect " + std::to_string(defect));
  }
  return UnitaryMatrix(std::move(entries));
}

UnitaryMatrix UnitaryMatrix::identity(int m) {
  if (m < 1) throw DomainError("mode count must be >= 1");
  return UnitaryMatrix(ComplexMatrix::Identity(m, m));
}

UnitaryMatrix UnitaryMatrix::operator*(const UnitaryMatrix& rhs) const {
  if (modes() != rhs.modes()) throw DomainError("mode count mismatch in unitary product");
  return from_matrix(entries_ * rhs.entries_);
}

UnitaryMatrix dagger(const UnitaryMatrix& u) { return UnitaryMatrix(u.entries_.adjoint()); }

ComplexMatrix haar_isometry(int m, int k, Rng& rng) {
  if (m < 1 || k < 1 || k > m) throw DomainError("haar_isometry needs 1 <= k <= m");
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  ComplexMatrix z(m, k);
  for (int j = 0; j < k; ++j) {
    for (int i = 0; i < m; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      z(i, j) = Complex(re, im);
    }
  }
  Eigen::HouseholderQR<ComplexMatrix> qr(z);
  ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(m, k);
  const ComplexMatrix& packed = qr.matrixQR();
  for (int j = 0; j < k; ++j) {
    const Complex r = packed(j, j);
    const double mag = std::abs(r);
    if (mag > 0.0) q.col(j) *= r / mag;
  }
  return q;
}

UnitaryMatrix haar_unitary(int m, Rng& rng) { return UnitaryMatrix(haar_isometry(m, m, rng)); }

Complex permanent(const ComplexMatrix& a, int cap) {
  if (a.rows() != a.cols()) throw DomainError("permanent of a non-square matrix");
  const int n = static_cast<int>(a.rows());
  if (n > cap) {
    throw DomainError("permanent order " + std::to_string(n) + " exceeds cap " + std::to_string(cap));
  }
  if (n == 0) return 1.0;
  std::vector<Complex> row_sums(n, Complex{});
  CompensatedComplexSum<double> total;
  const std::uint64_t subsets = std::uint64_t{1} << n;
  std::uint64_t gray = 0;
  for (std::uint64_t step = 1; step < subsets; ++step) {
    const int col = std::countr_zero(step);
    const std::uint64_t bit = std::uint64_t{1} << col;
    gray ^= bit;
    if (gray & bit) {
      for (int i = 0; i < n; ++i) row_sums[i] += a(i, col);
    } else {
      for (int i = 0; i < n; ++i) row_sums[i] -= a(i, col);
    }
    Complex prod = row_sums[0];
    for (int i = 1; i < n; ++i) prod *= row_sums[i];
    total.add((std::popcount(gray) & 1) ? -prod : prod);
  }
  const Complex result = total.value();
  return (n & 1) ? -result : result;
}

Complex permanent_repeated_columns(const ComplexMatrix& a, std::span<const int> multiplicity, int cap) {
  const int n = static_cast<int>(a.rows());
  const int k = static_cast<int>(a.cols());
  if (static_cast<int>(multiplicity.size()) != k) {
    throw DomainError("one multiplicity per column required");
  }
  int total_mult = 0;
  double states = 1.0;
  for (int v : multiplicity) {
    if (v < 0) throw DomainError("negative column multiplicity");
    total_mult += v;
    states *= v + 1.0;
  }
  if (total_mult != n) throw DomainError("column multiplicities must sum to the row count");
  if (states > std::ldexp(1.0, cap)) throw DomainError("repeated-column permanent exceeds work cap");
  if (n == 0) return 1.0;

  // Binomial weights C(mult_j, s_j).
  std::vector<std::vector<double>> weight(k);
  for (int j = 0; j < k; ++j) {
    weight[j].resize(multiplicity[j] + 1);
    for (int s = 0; s <= multiplicity[j]; ++s) {
      weight[j][s] = std::round(std::exp(log_binomial(multiplicity[j], s)));
    }
  }

  // Reflected mixed-radix Gray code over s in prod_j [0, mult_j]; each step
  // moves one digit by +-1, so row sums update with a single column.
  std::vector<int> s(k, 0);
  std::vector<int> dir(k, 1);
  std::vector<Complex> row_sums(n, Complex{});
  CompensatedComplexSum<double> total;
  int parity = 0;
  for (;;) {
    int j = 0;
    while (j < k) {
      const int next = s[j] + dir[j];
      if (next >= 0 && next <= multiplicity[j]) break;
      dir[j] = -dir[j];
      ++j;
    }
    if (j == k) break;
    s[j] += dir[j];
    parity ^= 1;
    for (int i = 0; i < n; ++i) row_sums[i] += static_cast<double>(dir[j]) * a(i, j);
    double w = 1.0;
    for (int t = 0; t < k; ++t) w *= weight[t][s[t]];
    Complex prod = row_sums[0];
    for (int i = 1; i < n; ++i) prod *= row_sums[i];
    prod *= w;
    total.add(parity ? -prod : prod);
  }
  const Complex result = total.value();
  return (n & 1) ? -result : result;
}

ComplexMatrix expanded_submatrix(const UnitaryMatrix& u, const ModeConfig& in, const ModeConfig& out) {
  if (in.modes() != u.modes() || out.modes() != u.modes()) {
    throw DomainError("configuration mode count does not match the unitary");
  }
  if (in.photons() != out.photons()) {
    throw DomainError("photon-number mismatch: " + std::to_string(in.photons()) + " in, " +
                      std::to_string(out.photons()) + " out");
  }
  std::vector<int> rows;
  std::vector<int> cols;
  for (int i = 0; i < in.modes(); ++i) rows.insert(rows.end(), in[i], i);
  for (int j = 0; j < out.modes(); ++j) cols.insert(cols.end(), out[j], j);
  const int n = in.photons();
  ComplexMatrix sub(n, n);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) sub(r, c) = u(rows[r], cols[c]);
  }
  return sub;
}

Complex transition_amplitude(const UnitaryMatrix& u, const ModeConfig& in, const ModeConfig& out,
                             int cap) {
  const ComplexMatrix sub = expanded_submatrix(u, in, out);
  double log_norm = 0.0;
  for (int v : in.occupations()) log_norm += log_factorial(v);
  for (int v : out.occupations()) log_norm += log_factorial(v);
  return permanent(sub, cap) * std::exp(-0.5 * log_norm);
}

std::vector<double> output_distribution(const UnitaryMatrix& u, const ModeConfig& in,
                                        std::uint64_t cap) {
  if (in.modes() != u.modes()) throw DomainError("configuration mode count does not match the unitary");
  const auto basis = enumerate_basis(in.modes(), in.photons(), cap);
  std::vector<double> probs;
  probs.reserve(basis.size());
  for (const auto& out : basis) probs.push_back(std::norm(transition_amplitude(u, in, out)));
  return probs;
}

}  // namespace qdl
