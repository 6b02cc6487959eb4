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

#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "qdl/fock.hpp"
#include "qdl/linop.hpp"
#include "qdl/rng.hpp"

namespace qdl {

inline constexpr std::uint64_t kDefaultTrialBudget = 5'000'000'000ULL;

using UnitaryPool = std::vector<UnitaryMatrix>;

struct ProtocolConfig {
  int m = 4;
  int n = 2;
  std::size_t K = 16;
  double xi = 1.0;
  double eta = 1.0;
  std::uint64_t trials = 10'000;
  std::uint64_t seed = 0;
  unsigned workers = 1;
  bool blind = true;           ///< run the keyless photodetection diagnostic
  bool keep_records = false;   ///< retain per-trial records for transcripts
  std::uint64_t budget = kDefaultTrialBudget;  ///< cap on trials * d

  void validate() const;
};

/// K Haar unitaries; member i uses stream i of `seed`.
UnitaryPool gen_unitary_pool(int m, std::size_t K, std::uint64_t seed, unsigned workers = 1);

/// Alice's transmission U_k |psi_x>. The output distribution is computed on
/// first use and cached; the cache is not synchronized, so share a handle
/// across threads only after calling distribution() once.
class EncodedState {
 public:
  EncodedState(std::size_t x, std::size_t k, const CodeBook& book, const UnitaryPool& pool);

  std::size_t message() const { return x_; }
  std::size_t key() const { return k_; }
  const ModeConfig& codeword() const { return (*book_)[x_]; }
  const UnitaryMatrix& unitary() const { return (*pool_)[k_]; }
  const UnitaryPool& pool() const { return *pool_; }
  const CodeBook& book() const { return *book_; }

  /// |<y|U_k|psi_x>|^2 over the canonical basis.
  const std::vector<double>& distribution() const;

 private:
  std::size_t x_;
  std::size_t k_;
  const CodeBook* book_;
  const UnitaryPool* pool_;
  mutable std::optional<std::vector<double>> distribution_;
};

EncodedState encode(std::size_t x, std::size_t k, const CodeBook& book, const UnitaryPool& pool);

/// Photons that reach the detectors, on the modes where they arrive.
struct Detection {
  ModeConfig pattern;
  int clicks = 0;
};

/// Independent loss of each photon of a single-occupancy code word.
Detection lossy_channel(const ModeConfig& codeword, double eta, Rng& rng);

struct DecodeResult {
  ModeConfig detected;
  int clicks = 0;
  std::vector<std::size_t> compatible;  ///< code-book indices consistent with the clicks

  std::optional<std::size_t> message() const {
    if (compatible.size() == 1) return compatible.front();
    return std::nullopt;
  }
};

/// Bob applies U_key^dagger and photodetects. Loss acts in the code-word
/// basis (`survivors`, from lossy_channel) because uniform loss commutes
/// with every passive interferometer. With the right key U^dagger U is the
/// identity and the survivors are detected directly; with a wrong key the
/// outcome is sampled from U_key^dagger U_k |psi_x> and thinned to the same
/// click count. Throws DomainError for a key outside the pool or a state
/// encoded with another pool.
DecodeResult decode_with_key(std::size_t key, const UnitaryPool& pool, const EncodedState& sent,
                             const Detection& survivors, Rng& rng);

/// Keyless photodetection of U_k |psi_x>: a diagnostic lower bound on the
/// accessible information, not the accessible information itself.
ModeConfig eavesdrop_photodetect(const EncodedState& sent, Rng& rng);

/// Joint count table over (message, outcome) symbols.
class JointCounts {
 public:
  void add(std::uint64_t x, std::uint64_t y, std::uint64_t count = 1);
  void merge(const JointCounts& other);
  std::uint64_t total() const { return total_; }
  std::size_t x_support() const;
  std::size_t y_support() const;
  const std::map<std::pair<std::uint64_t, std::uint64_t>, std::uint64_t>& cells() const { return cells_; }

 private:
  std::map<std::pair<std::uint64_t, std::uint64_t>, std::uint64_t> cells_;
  std::uint64_t total_ = 0;
};

/// Plug-in estimate sum p(x,y) log2[p(x,y) / (p(x) p(y))]. Throws DomainError
/// on an empty table.
double empirical_mutual_info(const JointCounts& counts);

/// First-order plug-in bias (|X|-1)(|Y|-1) / (2 N ln 2) in bits.
double plugin_bias(const JointCounts& counts);

/// Outcome symbol for a detection: click count and canonical rank.
std::uint64_t outcome_symbol(const ModeConfig& detected);

struct TrialRecord {
  std::uint64_t trial = 0;
  std::size_t x = 0;
  std::size_t k = 0;
  int clicks = 0;
  ModeConfig detected;
  std::optional<std::size_t> decoded;
  std::size_t ambiguity = 0;
};

struct TrialSummary {
  std::uint64_t trials = 0;
  std::size_t M = 0;
  std::size_t K = 0;
  double log2_M = 0.0;
  double keyed_success_rate = 0.0;
  double keyed_mi = 0.0;
  double keyed_bias = 0.0;
  std::optional<double> blind_mi;  ///< lower bound on accessible information
  std::optional<double> blind_bias;
  std::vector<TrialRecord> records;
};

/// Samples (x, k) uniformly, sends U_k|psi_x> through the loss channel,
/// decodes with the key and optionally photodetects without it. Trials are
/// sharded in fixed blocks with per-shard streams, so the summary does not
/// depend on the worker count. Throws ResourceError when trials * d exceeds
/// the budget.
TrialSummary run_trials(const ProtocolConfig& config);

inline constexpr std::string_view kTranscriptHeader = "trial,x,k,clicks,detected,decoded,ambiguity";
void write_transcript(std::ostream& out, std::span<const TrialRecord> records);

}  // namespace qdl
