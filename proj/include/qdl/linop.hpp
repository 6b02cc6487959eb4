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

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "qdl/fock.hpp"
#include "qdl/rng.hpp"

namespace qdl {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;

inline constexpr int kDefaultPermanentCap = 25;
inline constexpr double kUnitarityTolerance = 1e-12;

/// max_ij |(A^dagger A - I)_ij|.
double unitarity_defect(const ComplexMatrix& a);

/// An m x m interferometer acting on mode creation operators as
/// U a_i^dagger U^dagger = sum_j U_ij a_j^dagger.
class UnitaryMatrix {
 public:
  /// Validates unitarity to `tolerance`; throws DomainError otherwise.
  static UnitaryMatrix from_matrix(ComplexMatrix entries, double tolerance = kUnitarityTolerance);
  static UnitaryMatrix identity(int m);

  int modes() const { return static_cast<int>(entries_.rows()); }
  const ComplexMatrix& matrix() const { return entries_; }
  Complex operator()(int row, int col) const { return entries_(row, col); }

  /// Matrix product; the induced Fock-space maps compose the same way.
  UnitaryMatrix operator*(const UnitaryMatrix& rhs) const;

  bool operator==(const UnitaryMatrix& rhs) const {
    return entries_.rows() == rhs.entries_.rows() && entries_ == rhs.entries_;
  }

 private:
  explicit UnitaryMatrix(ComplexMatrix entries) : entries_(std::move(entries)) {}
  friend UnitaryMatrix dagger(const UnitaryMatrix& u);
  friend UnitaryMatrix haar_unitary(int m, Rng& rng);

  ComplexMatrix entries_;
};

/// Conjugate transpose.
UnitaryMatrix dagger(const UnitaryMatrix& u);

/// The first k columns of a Haar-random m x m unitary: QR of an i.i.d.
/// complex Gaussian m x k matrix with the R diagonal rotated to positive
/// reals. k = m yields a full Haar unitary.
ComplexMatrix haar_isometry(int m, int k, Rng& rng);

/// Haar-distributed U(m) element; deterministic for a given generator state.
UnitaryMatrix haar_unitary(int m, Rng& rng);

/// Exact permanent of a square matrix by Ryser's formula with Gray-code
/// subset updates, O(2^k k). Throws DomainError if non-square or k > cap.
Complex permanent(const ComplexMatrix& a, int cap = kDefaultPermanentCap);

/// Permanent of the n x n matrix obtained by repeating column j of the n x k
/// matrix `a` multiplicity[j] times, without materializing it. Cost is
/// prod_j (multiplicity[j] + 1) * n * k. Throws DomainError when the
/// multiplicities do not sum to n or the work exceeds 2^cap terms.
Complex permanent_repeated_columns(const ComplexMatrix& a, std::span<const int> multiplicity,
                                   int cap = kDefaultPermanentCap);

/// U[1^{in_1} 2^{in_2} ... | 1^{out_1} 2^{out_2} ...]: rows follow input
/// modes, columns output modes, each repeated by its occupation.
ComplexMatrix expanded_submatrix(const UnitaryMatrix& u, const ModeConfig& in, const ModeConfig& out);

/// <out| U |in> = perm(expanded_submatrix) / sqrt(prod in! * prod out!).
Complex transition_amplitude(const UnitaryMatrix& u, const ModeConfig& in, const ModeConfig& out,
                             int cap = kDefaultPermanentCap);

/// |<y|U|in>|^2 for every y in canonical basis order.
std::vector<double> output_distribution(const UnitaryMatrix& u, const ModeConfig& in,
                                        std::uint64_t cap = kDefaultBasisCap);

}  // namespace qdl
