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

#include "qdl/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <string>

#include "qdl/errors.hpp"
#include "qdl/parallel.hpp"

namespace qdl {
namespace {

constexpr std::uint64_t kShardSize = 4096;
constexpr std::uint64_t kBookStream = 0xb00cULL;
constexpr std::uint64_t kPoolSalt = 0x9001ULL;
constexpr std::uint64_t kTrialSalt = 0x7e1a1ULL;

std::size_t sample_index(std::span<const double> probs, Rng& rng) {
  const double total = std::accumulate(probs.begin(), probs.end(), 0.0);
  std::uniform_real_distribution<double> uniform(0.0, total);
  const double u = uniform(rng);
  double acc = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    acc += probs[i];
    if (u < acc) return i;
  }
  // Rounding can leave u at the very top; take the last non-zero entry.
  for (std::size_t i = probs.size(); i-- > 0;) {
    if (probs[i] > 0.0) return i;
  }
  return probs.size() - 1;
}

// Keeps `clicks` of the photons of `config`, chosen uniformly.
ModeConfig thin_to(const ModeConfig& config, int clicks, Rng& rng) {
  std::vector<int> labels;
  for (int i = 0; i < config.modes(); ++i) labels.insert(labels.end(), config[i], i);
  for (int j = 0; j < clicks; ++j) {
    std::uniform_int_distribution<int> pick(j, static_cast<int>(labels.size()) - 1);
    std::swap(labels[j], labels[pick(rng)]);
  }
  std::vector<int> occ(config.modes(), 0);
  for (int j = 0; j < clicks; ++j) ++occ[labels[j]];
  return ModeConfig(std::move(occ));
}

std::vector<std::size_t> compatible_codewords(const CodeBook& book, const ModeConfig& detected) {
  std::vector<std::size_t> out;
  if (detected.max_occupation() > 1) return out;
  if (detected.photons() == book.n) {
    // Code book is sorted in canonical (descending lexicographic) order.
    auto it = std::lower_bound(book.codewords.begin(), book.codewords.end(), detected,
                               [](const ModeConfig& a, const ModeConfig& b) { return a > b; });
    if (it != book.codewords.end() && *it == detected) {
      out.push_back(static_cast<std::size_t>(it - book.codewords.begin()));
    }
    return out;
  }
  for (std::size_t i = 0; i < book.size(); ++i) {
    bool ok = true;
    for (int mode = 0; mode < detected.modes() && ok; ++mode) ok = detected[mode] <= book[i][mode];
    if (ok) out.push_back(i);
  }
  return out;
}

}  // namespace

void ProtocolConfig::validate() const {
  if (m < 1 || n < 1 || n > m) throw DomainError("protocol needs 1 <= n <= m");
  if (K < 1) throw DomainError("pool size K must be >= 1");
  if (trials < 1) throw DomainError("trials must be >= 1");
  if (!(xi > 0.0 && xi <= 1.0)) throw DomainError("xi must lie in (0, 1]");
  if (!(eta >= 0.0 && eta <= 1.0)) throw DomainError("eta must lie in [0, 1]");
}

UnitaryPool gen_unitary_pool(int m, std::size_t K, std::uint64_t seed, unsigned workers) {
  if (K < 1) throw DomainError("pool size K must be >= 1");
  std::vector<std::optional<UnitaryMatrix>> slots(K);
  parallel_for(K, workers, [&](std::size_t i) {
    Rng rng = stream_rng(seed, i);
    slots[i] = haar_unitary(m, rng);
  });
  UnitaryPool pool;
  pool.reserve(K);
  for (auto& s : slots) pool.push_back(std::move(*s));
  return pool;
}

EncodedState::EncodedState(std::size_t x, std::size_t k, const CodeBook& book, const UnitaryPool& pool)
    : x_(x), k_(k), book_(&book), pool_(&pool) {
  if (x >= book.size()) {
    throw DomainError("message index " + std::to_string(x) + " outside code book of size " +
                      std::to_string(book.size()));
  }
  if (k >= pool.size()) {
    throw DomainError("key index " + std::to_string(k) + " outside pool of size " +
                      std::to_string(pool.size()));
  }
  if (pool[k].modes() != book.m) throw DomainError("pool and code book disagree on m");
}

const std::vector<double>& EncodedState::distribution() const {
  if (!distribution_) distribution_ = output_distribution(unitary(), codeword());
  return *distribution_;
}

EncodedState encode(std::size_t x, std::size_t k, const CodeBook& book, const UnitaryPool& pool) {
  return EncodedState(x, k, book, pool);
}

Detection lossy_channel(const ModeConfig& codeword, double eta, Rng& rng) {
  if (!(eta >= 0.0 && eta <= 1.0)) throw DomainError("eta must lie in [0, 1]");
  if (codeword.max_occupation() > 1) throw DomainError("lossy_channel expects a code word");
  std::bernoulli_distribution survive(eta);
  std::vector<int> occ(codeword.modes(), 0);
  int clicks = 0;
  for (int i = 0; i < codeword.modes(); ++i) {
    if (codeword[i] == 1 && survive(rng)) {
      occ[i] = 1;
      ++clicks;
    }
  }
  return Detection{ModeConfig(std::move(occ)), clicks};
}

DecodeResult decode_with_key(std::size_t key, const UnitaryPool& pool, const EncodedState& sent,
                             const Detection& survivors, Rng& rng) {
  if (&pool != &sent.pool()) throw DomainError("state was encoded with a different unitary pool");
  if (key >= pool.size()) {
    throw DomainError("key index " + std::to_string(key) + " outside pool of size " +
                      std::to_string(pool.size()));
  }
  DecodeResult r;
  r.clicks = survivors.clicks;
  if (key == sent.key()) {
    r.detected = survivors.pattern;
  } else {
    const UnitaryMatrix net = dagger(pool[key]) * sent.unitary();
    const auto probs = output_distribution(net, sent.codeword());
    const ModeConfig ideal = unrank(sent.book().m, sent.book().n, sample_index(probs, rng));
    r.detected = thin_to(ideal, survivors.clicks, rng);
  }
  r.compatible = compatible_codewords(sent.book(), r.detected);
  return r;
}

ModeConfig eavesdrop_photodetect(const EncodedState& sent, Rng& rng) {
  const auto& probs = sent.distribution();
  return unrank(sent.book().m, sent.book().n, sample_index(probs, rng));
}

void JointCounts::add(std::uint64_t x, std::uint64_t y, std::uint64_t count) {
  cells_[{x, y}] += count;
  total_ += count;
}

void JointCounts::merge(const JointCounts& other) {
  for (const auto& [key, count] : other.cells_) cells_[key] += count;
  total_ += other.total_;
}

std::size_t JointCounts::x_support() const {
  std::set<std::uint64_t> xs;
  for (const auto& [key, count] : cells_) {
    if (count) xs.insert(key.first);
  }
  return xs.size();
}

std::size_t JointCounts::y_support() const {
  std::set<std::uint64_t> ys;
  for (const auto& [key, count] : cells_) {
    if (count) ys.insert(key.second);
  }
  return ys.size();
}

double empirical_mutual_info(const JointCounts& counts) {
  if (counts.total() == 0) throw DomainError("empty joint count table");
  std::map<std::uint64_t, double> px;
  std::map<std::uint64_t, double> py;
  for (const auto& [key, count] : counts.cells()) {
    px[key.first] += count;
    py[key.second] += count;
  }
  const double total = static_cast<double>(counts.total());
  double info = 0.0;
  for (const auto& [key, count] : counts.cells()) {
    if (count == 0) continue;
    const double c = static_cast<double>(count);
    info += c / total * std::log2(c * total / (px[key.first] * py[key.second]));
  }
  return std::max(0.0, info);
}

double plugin_bias(const JointCounts& counts) {
  if (counts.total() == 0) throw DomainError("empty joint count table");
  const double xs = static_cast<double>(counts.x_support());
  const double ys = static_cast<double>(counts.y_support());
  return (xs - 1.0) * (ys - 1.0) / (2.0 * static_cast<double>(counts.total()) * std::log(2.0));
}

std::uint64_t outcome_symbol(const ModeConfig& detected) {
  return (static_cast<std::uint64_t>(detected.photons()) << 48) | rank(detected);
}

TrialSummary run_trials(const ProtocolConfig& config) {
  config.validate();
  const std::uint64_t d = dim_hilbert(config.m, config.n);
  if (static_cast<long double>(config.trials) * d > static_cast<long double>(config.budget)) {
    throw ResourceError("trials * d = " + std::to_string(static_cast<long double>(config.trials) * d) +
                        " exceeds the compute budget " + std::to_string(config.budget));
  }
  Rng book_rng = stream_rng(config.seed, kBookStream);
  const CodeBook book = sample_codebook(config.m, config.n, config.xi, book_rng);
  const UnitaryPool pool = gen_unitary_pool(config.m, config.K, splitmix64(config.seed ^ kPoolSalt),
                                            config.workers);
  const std::size_t M = book.size();

  // Blind distributions are shared when every (x, k) pair is likely to recur.
  std::vector<EncodedState> table;
  const bool shared = config.blind && static_cast<long double>(M) * config.K <= config.trials;
  if (shared) {
    table.reserve(M * config.K);
    for (std::size_t k = 0; k < config.K; ++k) {
      for (std::size_t x = 0; x < M; ++x) table.emplace_back(x, k, book, pool);
    }
    parallel_for(table.size(), config.workers, [&](std::size_t i) { table[i].distribution(); });
  }

  struct Shard {
    JointCounts keyed;
    JointCounts blind;
    std::uint64_t successes = 0;
    std::vector<TrialRecord> records;
  };
  const std::uint64_t trial_seed = splitmix64(config.seed ^ kTrialSalt);
  const std::uint64_t shards = (config.trials + kShardSize - 1) / kShardSize;
  std::vector<Shard> results(shards);
  parallel_for(shards, config.workers, [&](std::size_t s) {
    Rng rng = stream_rng(trial_seed, s);
    std::uniform_int_distribution<std::size_t> pick_x(0, M - 1);
    std::uniform_int_distribution<std::size_t> pick_k(0, config.K - 1);
    Shard& out = results[s];
    const std::uint64_t begin = s * kShardSize;
    const std::uint64_t end = std::min(config.trials, begin + kShardSize);
    for (std::uint64_t t = begin; t < end; ++t) {
      const std::size_t x = pick_x(rng);
      const std::size_t k = pick_k(rng);
      const EncodedState state(x, k, book, pool);
      const Detection survivors = lossy_channel(state.codeword(), config.eta, rng);
      const DecodeResult decoded = decode_with_key(k, pool, state, survivors, rng);
      if (decoded.message() == x) ++out.successes;
      out.keyed.add(x, outcome_symbol(decoded.detected));
      if (config.blind) {
        const EncodedState& view = shared ? table[k * M + x] : state;
        out.blind.add(x, outcome_symbol(eavesdrop_photodetect(view, rng)));
      }
      if (config.keep_records) {
        out.records.push_back(TrialRecord{t, x, k, decoded.clicks, decoded.detected,
                                          decoded.message(), decoded.compatible.size()});
      }
    }
  });

  TrialSummary summary;
  summary.trials = config.trials;
  summary.M = M;
  summary.K = config.K;
  summary.log2_M = std::log2(static_cast<double>(M));
  JointCounts keyed;
  JointCounts blind;
  std::uint64_t successes = 0;
  for (auto& shard : results) {
    keyed.merge(shard.keyed);
    blind.merge(shard.blind);
    successes += shard.successes;
    if (config.keep_records) {
      summary.records.insert(summary.records.end(), std::make_move_iterator(shard.records.begin()),
                             std::make_move_iterator(shard.records.end()));
    }
  }
  summary.keyed_success_rate = static_cast<double>(successes) / static_cast<double>(config.trials);
  summary.keyed_mi = empirical_mutual_info(keyed);
  summary.keyed_bias = plugin_bias(keyed);
  if (config.blind) {
    summary.blind_mi = empirical_mutual_info(blind);
    summary.blind_bias = plugin_bias(blind);
  }
  return summary;
}

void write_transcript(std::ostream& out, std::span<const TrialRecord> records) {
  out << kTranscriptHeader << '\n';
  for (const auto& r : records) {
    out << r.trial << ',' << r.x << ',' << r.k << ',' << r.clicks << ',' << r.detected.to_string()
        << ',' << (r.decoded ? std::to_string(*r.decoded) : std::string("-1")) << ',' << r.ambiguity
        << '\n';
  }
}

}  // namespace qdl
