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

#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <map>
#include <set>

#include "qdl/errors.hpp"
#include "qdl/fock.hpp"
#include "qdl/numeric.hpp"

using namespace qdl;

namespace {

ModeConfig cfg(std::vector<int> v) { return ModeConfig(std::move(v)); }

double factorial(int k) { return std::tgamma(k + 1.0); }

// m! / prod over occupation values v of (#modes holding v)!.
std::uint64_t multinomial_oracle(int m, const std::vector<int>& parts) {
  std::map<int, int> counts;
  for (int p : parts) ++counts[p];
  counts[0] = m - static_cast<int>(parts.size());
  double value = factorial(m);
  for (auto [v, c] : counts) value /= factorial(c);
  return static_cast<std::uint64_t>(std::llround(value));
}

}  // namespace

TEST_CASE("dimensions of small Fock spaces") {
  CHECK(dim_hilbert(4, 2) == 10);
  CHECK(num_codewords(4, 2) == 6);
  CHECK(dim_hilbert(6, 2) == 21);
  CHECK(dim_hilbert(30, 10) == 635745396ULL);
  CHECK(num_codewords(30, 10) == 30045015ULL);
  CHECK(log2_num_codewords(30, 10) == doctest::Approx(24.8406).epsilon(1e-5));
}

TEST_CASE("dimensions beyond 64 bits raise but log2 variants work") {
  CHECK_THROWS_AS(dim_hilbert(8000, 20), ResourceError);
  CHECK(log2_dim_hilbert(8000, 20) > 190.0);
  CHECK(log2_num_codewords(8000, 20) == doctest::Approx(log2_binomial(8000, 20)));
}

TEST_CASE("canonical basis is descending lexicographic") {
  const auto basis = enumerate_basis(3, 2);
  const std::vector<std::vector<int>> expected{{2, 0, 0}, {1, 1, 0}, {1, 0, 1},
                                               {0, 2, 0}, {0, 1, 1}, {0, 0, 2}};
  REQUIRE(basis.size() == expected.size());
  for (std::size_t i = 0; i < basis.size(); ++i) CHECK(basis[i] == cfg(expected[i]));
}

TEST_CASE("rank and unrank invert each other") {
  for (int m = 1; m <= 6; ++m) {
    for (int n = 0; n <= 4; ++n) {
      const auto basis = enumerate_basis(m, n);
      REQUIRE(basis.size() == dim_hilbert(m, n));
      for (std::size_t i = 0; i < basis.size(); ++i) {
        CHECK(rank(basis[i]) == i);
        CHECK(unrank(m, n, i) == basis[i]);
      }
    }
  }
}

TEST_CASE("rank round trip on random indices of a large space") {
  Rng rng(5);
  const std::uint64_t d = dim_hilbert(30, 10);
  std::uniform_int_distribution<std::uint64_t> pick(0, d - 1);
  for (int t = 0; t < 2000; ++t) {
    const auto i = pick(rng);
    const ModeConfig c = unrank(30, 10, i);
    CHECK(c.photons() == 10);
    CHECK(rank(c) == i);
  }
  CHECK_THROWS_AS(unrank(30, 10, d), DomainError);
}

TEST_CASE("basis enumeration refuses oversized spaces") {
  CHECK_THROWS(enumerate_basis(30, 10, 1000));
}

TEST_CASE("photon patterns") {
  CHECK(PhotonPattern::parse("1-2").to_string() == "2-1");
  CHECK(PhotonPattern::parse("3").photons() == 3);
  CHECK(PhotonPattern::parse("2-2-1").factorial_product() == 4.0);
  CHECK_THROWS_AS(PhotonPattern::parse("2-x"), DomainError);
  CHECK_THROWS_AS(PhotonPattern::parse(""), DomainError);
  CHECK_THROWS_AS(PhotonPattern::parse("2-"), DomainError);
  CHECK(pattern_of(cfg({0, 1, 0, 3})).to_string() == "3-1");
  CHECK(leading_placement(5, PhotonPattern::parse("1-2")) == cfg({2, 1, 0, 0, 0}));
  CHECK(PhotonPattern::bunched(4).to_string() == "4");
  CHECK(PhotonPattern::no_collision(3).to_string() == "1-1-1");
  CHECK_FALSE(PhotonPattern::no_collision(3).fits(2));
}

TEST_CASE("patterns are listed in ascending lexicographic order") {
  const auto ps = enumerate_patterns(6, 3);
  REQUIRE(ps.size() == 3);
  CHECK(ps[0].pattern.to_string() == "1-1-1");
  CHECK(ps[1].pattern.to_string() == "2-1");
  CHECK(ps[2].pattern.to_string() == "3");
  CHECK(enumerate_patterns(2, 3).size() == 2);  // (1,1,1) needs three modes
}

TEST_CASE("pattern subspaces partition the Fock space") {
  for (int m = 1; m <= 9; ++m) {
    for (int n = 1; n <= 6; ++n) {
      std::uint64_t total = 0;
      for (const auto& info : enumerate_patterns(m, n)) {
        const std::vector<int> parts(info.pattern.parts().begin(), info.pattern.parts().end());
        CHECK(info.subspace_dim == multinomial_oracle(m, parts));
        total += info.subspace_dim;
      }
      CHECK(total == dim_hilbert(m, n));
    }
  }
  CHECK(pattern_subspace_dim(6, PhotonPattern::parse("1-1")) == 15);
  CHECK(pattern_subspace_dim(6, PhotonPattern::parse("2")) == 6);
}

TEST_CASE("pattern subspace sizes by direct counting") {
  const auto basis = enumerate_basis(5, 4);
  std::map<std::string, std::uint64_t> counted;
  for (const auto& c : basis) ++counted[pattern_of(c).to_string()];
  for (const auto& info : enumerate_patterns(5, 4)) {
    CHECK(counted[info.pattern.to_string()] == info.subspace_dim);
  }
}

TEST_CASE("code words enumerate single-occupancy states in canonical order") {
  const int m = 6;
  const int n = 3;
  std::vector<ModeConfig> words;
  for (const auto& c : enumerate_basis(m, n)) {
    if (c.max_occupation() <= 1) words.push_back(c);
  }
  REQUIRE(words.size() == num_codewords(m, n));
  for (std::size_t i = 0; i < words.size(); ++i) {
    CHECK(codeword_unrank(m, n, i) == words[i]);
    CHECK(codeword_rank(words[i]) == i);
  }
  CHECK(first_codeword(m, n) == cfg({1, 1, 1, 0, 0, 0}));
  CHECK_THROWS_AS(codeword_rank(cfg({2, 1, 0})), DomainError);
}

TEST_CASE("code book size and sampling") {
  CHECK(codebook_size(4, 2, 0.5) == 3);
  CHECK(codebook_size(4, 2, 1.0) == 6);
  CHECK(codebook_size(4, 2, 1e-9) == 1);
  CHECK_THROWS_AS(codebook_size(4, 2, 0.0), DomainError);

  Rng a(9);
  Rng b(9);
  const CodeBook book = sample_codebook(10, 3, 0.25, a);
  const CodeBook again = sample_codebook(10, 3, 0.25, b);
  CHECK(book.size() == codebook_size(10, 3, 0.25));
  CHECK(book.codewords == again.codewords);
  std::set<std::uint64_t> ranks;
  for (const auto& w : book.codewords) {
    CHECK(w.max_occupation() == 1);
    CHECK(w.photons() == 3);
    ranks.insert(rank(w));
  }
  CHECK(ranks.size() == book.size());
  CHECK(std::is_sorted(book.codewords.begin(), book.codewords.end(), std::greater<>()));

  Rng c(1);
  const CodeBook full = sample_codebook(5, 2, 1.0, c);
  CHECK(full.size() == 10);
}
