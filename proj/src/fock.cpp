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

#include "qdl/fock.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <numeric>
#include <unordered_set>

#include "qdl/errors.hpp"
#include "qdl/numeric.hpp"

namespace qdl {
namespace {

void check_modes_photons(int m, int n) {
  if (m < 1) throw DomainError("mode count must be >= 1, got " + std::to_string(m));
  if (n < 0) throw DomainError("photon number must be >= 0, got " + std::to_string(n));
}

void check_single_occupancy(int m, int n) {
  check_modes_photons(m, n);
  if (n > m) {
    throw DomainError("no single-occupancy states: n = " + std::to_string(n) + " > m = " +
                      std::to_string(m));
  }
}

std::uint64_t checked(std::optional<std::uint64_t> v, const char* what) {
  if (!v) throw ResourceError(std::string(what) + " exceeds 64-bit range; use the log2 variant");
  return *v;
}

// Number of configurations of r photons over k modes.
std::uint64_t configs(int k, int r) {
  if (k == 0) return r == 0 ? 1 : 0;
  return checked(binomial_exact(r + k - 1, r), "configuration count");
}

std::string dash_join(std::span<const int> xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += '-';
    out += std::to_string(xs[i]);
  }
  return out;
}

}  // namespace

ModeConfig::ModeConfig(std::vector<int> occupations) : occupations_(std::move(occupations)) {
  if (occupations_.empty()) throw DomainError("ModeConfig needs at least one mode");
  for (int v : occupations_) {
    if (v < 0) throw DomainError("negative occupation in ModeConfig");
    photons_ += v;
  }
}

int ModeConfig::max_occupation() const {
  return occupations_.empty() ? 0 : *std::max_element(occupations_.begin(), occupations_.end());
}

std::string ModeConfig::to_string() const { return dash_join(occupations_); }

PhotonPattern::PhotonPattern(std::vector<int> parts) : parts_(std::move(parts)) {
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (parts_[i] <= 0) throw DomainError("pattern parts must be positive");
    if (i > 0 && parts_[i] > parts_[i - 1]) throw DomainError("pattern parts must be non-increasing");
  }
}

PhotonPattern PhotonPattern::parse(std::string_view text) {
  std::vector<int> parts;
  while (!text.empty()) {
    const auto dash = text.find('-');
    const auto token = text.substr(0, dash);
    int value = 0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || ptr != token.data() + token.size() || token.empty()) {
      throw DomainError("malformed photon pattern '" + std::string(text) + "'");
    }
    parts.push_back(value);
    if (dash == std::string_view::npos) break;
    text.remove_prefix(dash + 1);
    if (text.empty()) throw DomainError("malformed photon pattern: trailing '-'");
  }
  if (parts.empty()) throw DomainError("empty photon pattern");
  std::sort(parts.begin(), parts.end(), std::greater<>());
  return PhotonPattern(std::move(parts));
}

int PhotonPattern::photons() const { return std::accumulate(parts_.begin(), parts_.end(), 0); }

double PhotonPattern::factorial_product() const {
  double p = 1.0;
  for (int v : parts_) p *= std::tgamma(v + 1.0);
  return p;
}

std::string PhotonPattern::to_string() const { return dash_join(parts_); }

std::uint64_t dim_hilbert(int m, int n) {
  check_modes_photons(m, n);
  return checked(binomial_exact(n + m - 1, n), "Hilbert-space dimension");
}

double log2_dim_hilbert(int m, int n) {
  check_modes_photons(m, n);
  return log2_binomial(n + m - 1, n);
}

std::uint64_t num_codewords(int m, int n) {
  check_single_occupancy(m, n);
  return checked(binomial_exact(m, n), "code-word count");
}

double log2_num_codewords(int m, int n) {
  check_single_occupancy(m, n);
  return log2_binomial(m, n);
}

std::vector<ModeConfig> enumerate_basis(int m, int n, std::uint64_t cap) {
  const std::uint64_t d = dim_hilbert(m, n);
  if (d > cap) {
    throw ResourceError("basis of dimension " + std::to_string(d) + " exceeds cap " +
                        std::to_string(cap));
  }
  std::vector<ModeConfig> out;
  out.reserve(d);
  std::vector<int> occ(m, 0);
  occ[0] = n;
  for (;;) {
    out.emplace_back(occ);
    // Predecessor in lexicographic order: move one photon from the rightmost
    // movable mode (not the last) one step right, collecting the tail there.
    int i = m - 2;
    while (i >= 0 && occ[i] == 0) --i;
    if (i < 0) break;
    const int tail = occ[m - 1];
    occ[m - 1] = 0;
    occ[i] -= 1;
    occ[i + 1] = tail + 1;
  }
  return out;
}

std::uint64_t rank(const ModeConfig& config) {
  const int m = config.modes();
  int remaining = config.photons();
  std::uint64_t index = 0;
  for (int i = 0; i + 1 < m; ++i) {
    for (int v = remaining; v > config[i]; --v) index += configs(m - i - 1, remaining - v);
    remaining -= config[i];
  }
  return index;
}

ModeConfig unrank(int m, int n, std::uint64_t index) {
  const std::uint64_t d = dim_hilbert(m, n);
  if (index >= d) {
    throw DomainError("basis index " + std::to_string(index) + " out of range [0, " +
                      std::to_string(d) + ")");
  }
  std::vector<int> occ(m, 0);
  int remaining = n;
  for (int i = 0; i + 1 < m; ++i) {
    int v = remaining;
    for (;; --v) {
      const std::uint64_t block = configs(m - i - 1, remaining - v);
      if (index < block) break;
      index -= block;
    }
    occ[i] = v;
    remaining -= v;
  }
  occ[m - 1] = remaining;
  return ModeConfig(std::move(occ));
}

PhotonPattern pattern_of(const ModeConfig& config) {
  std::vector<int> parts;
  for (int v : config.occupations()) {
    if (v > 0) parts.push_back(v);
  }
  std::sort(parts.begin(), parts.end(), std::greater<>());
  return PhotonPattern(std::move(parts));
}

std::uint64_t pattern_subspace_dim(int m, const PhotonPattern& pattern) {
  check_modes_photons(m, pattern.photons());
  if (!pattern.fits(m)) return 0;
  std::map<int, int> multiplicity;
  for (int v : pattern.parts()) ++multiplicity[v];
  multiplicity[0] = m - static_cast<int>(pattern.size());
  // Multinomial m! / prod(counts!) as a product of binomials.
  std::uint64_t result = 1;
  int left = m;
  for (const auto& [value, count] : multiplicity) {
    const std::uint64_t b = checked(binomial_exact(left, count), "subspace dimension");
    if (b != 0 && result > std::numeric_limits<std::uint64_t>::max() / b) {
      throw ResourceError("subspace dimension exceeds 64-bit range");
    }
    result *= b;
    left -= count;
  }
  return result;
}

std::vector<PatternInfo> enumerate_patterns(int m, int n) {
  check_modes_photons(m, n);
  std::vector<PatternInfo> out;
  if (n == 0) {
    out.push_back({PhotonPattern{}, 1});
    return out;
  }
  // Non-increasing partitions generated with the largest part bounded by the
  // previous one; collected then sorted for a stable ascending order.
  std::vector<std::vector<int>> all;
  std::vector<int> current;
  auto recurse = [&](auto&& self, int remaining, int max_part) -> void {
    if (remaining == 0) {
      all.push_back(current);
      return;
    }
    if (static_cast<int>(current.size()) == m) return;
    for (int p = std::min(remaining, max_part); p >= 1; --p) {
      current.push_back(p);
      self(self, remaining - p, p);
      current.pop_back();
    }
  };
  recurse(recurse, n, n);
  std::sort(all.begin(), all.end());
  out.reserve(all.size());
  for (auto& parts : all) {
    PhotonPattern q(std::move(parts));
    const auto dim = pattern_subspace_dim(m, q);
    out.push_back({std::move(q), dim});
  }
  return out;
}

ModeConfig leading_placement(int m, const PhotonPattern& pattern) {
  if (!pattern.fits(m)) throw DomainError("pattern " + pattern.to_string() + " needs more than m modes");
  std::vector<int> occ(m, 0);
  std::copy(pattern.parts().begin(), pattern.parts().end(), occ.begin());
  return ModeConfig(std::move(occ));
}

ModeConfig first_codeword(int m, int n) {
  check_single_occupancy(m, n);
  std::vector<int> occ(m, 0);
  std::fill_n(occ.begin(), n, 1);
  return ModeConfig(std::move(occ));
}

std::uint64_t codeword_rank(const ModeConfig& codeword) {
  if (codeword.max_occupation() > 1) throw DomainError("not a single-occupancy configuration");
  const int m = codeword.modes();
  int remaining = codeword.photons();
  std::uint64_t index = 0;
  for (int i = 0; i < m && remaining > 0; ++i) {
    if (codeword[i] == 1) {
      --remaining;
    } else {
      index += checked(binomial_exact(m - i - 1, remaining - 1), "code-word rank");
    }
  }
  return index;
}

ModeConfig codeword_unrank(int m, int n, std::uint64_t index) {
  const std::uint64_t c = num_codewords(m, n);
  if (index >= c) {
    throw DomainError("code-word index " + std::to_string(index) + " out of range [0, " +
                      std::to_string(c) + ")");
  }
  std::vector<int> occ(m, 0);
  int remaining = n;
  for (int i = 0; i < m && remaining > 0; ++i) {
    const std::uint64_t with_photon = *binomial_exact(m - i - 1, remaining - 1);
    if (index < with_photon) {
      occ[i] = 1;
      --remaining;
    } else {
      index -= with_photon;
    }
  }
  return ModeConfig(std::move(occ));
}

std::uint64_t codebook_size(int m, int n, double xi) {
  if (!(xi > 0.0 && xi <= 1.0)) throw DomainError("code-book fraction xi must lie in (0, 1]");
  const std::uint64_t c = num_codewords(m, n);
  const auto rounded = static_cast<std::uint64_t>(std::llround(xi * static_cast<double>(c)));
  return std::clamp<std::uint64_t>(rounded, 1, c);
}

CodeBook sample_codebook(int m, int n, double xi, Rng& rng) {
  const std::uint64_t c = num_codewords(m, n);
  const std::uint64_t size = codebook_size(m, n, xi);
  // Floyd's algorithm: `size` distinct indices from [0, c).
  std::unordered_set<std::uint64_t> chosen;
  chosen.reserve(size * 2);
  for (std::uint64_t j = c - size; j < c; ++j) {
    std::uniform_int_distribution<std::uint64_t> pick(0, j);
    const std::uint64_t t = pick(rng);
    if (!chosen.insert(t).second) chosen.insert(j);
  }
  std::vector<std::uint64_t> indices(chosen.begin(), chosen.end());
  std::sort(indices.begin(), indices.end());
  CodeBook book{m, n, {}};
  book.codewords.reserve(indices.size());
  for (auto i : indices) book.codewords.push_back(codeword_unrank(m, n, i));
  return book;
}

}  // namespace qdl
