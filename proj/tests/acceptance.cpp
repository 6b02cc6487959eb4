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

// Acceptance suite: one PASS/FAIL line per criterion. Pass criterion numbers
// as arguments to run a subset.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "oracle/second_quantization.hpp"
#include "qdl/bounds.hpp"
#include "qdl/cache.hpp"
#include "qdl/cli.hpp"
#include "qdl/fock.hpp"
#include "qdl/linop.hpp"
#include "qdl/mc.hpp"
#include "qdl/protocol.hpp"
#include "qdl/reference.hpp"

using namespace qdl;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    pass = pass && ok;
    if (!detail.empty()) detail += "; ";
    detail += (ok ? "" : "NOT ") + what;
  }
};

std::string fmt(double v, int precision = 6) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.*g", precision, v);
  return buf;
}

std::string shipped_cache() { return std::string(QDL_SOURCE_DIR) + "/data/gamma_cache.csv"; }

std::vector<std::string> split(const std::string& line, char sep = ',') {
  std::vector<std::string> out;
  std::stringstream ss(line);
  for (std::string field; std::getline(ss, field, sep);) out.push_back(field);
  return out;
}

std::string last_line(const std::string& text) {
  auto end = text.find_last_not_of('\n');
  auto begin = text.rfind('\n', end);
  return text.substr(begin == std::string::npos ? 0 : begin + 1, end - (begin == std::string::npos ? 0 : begin + 1) + 1);
}

Outcome criterion1() {
  Outcome o;
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run({"keysize", "8000", "20", "--xi", "0.01", "--eps", "1e-10", "--gamma", "no-collision"},
                            out, err);
  if (code != 0) {
    o.require(false, "keysize exited with " + std::to_string(code) + ": " + err.str());
    return o;
  }
  // m,n,nu,xi,epsilon,gamma,gamma_source,log2_c_min,log2_d,log2_M,...,log2_K_epsilon,branch,margin
  const auto f = split(last_line(out.str()));
  const double gamma = std::stod(f[5]);
  const double log2_M = std::stod(f[9]);
  const double log2_K = std::stod(f[12]);
  o.require(gamma == 42.0, "gamma = " + fmt(gamma));
  o.require(std::abs(log2_M - 192.0) <= 1.0, "log2 M = " + fmt(log2_M) + " within 192 +- 1");
  o.require(std::abs(log2_K - 127.0) <= 1.0, "log2 K_eps = " + fmt(log2_K) + " within 127 +- 1 (" + f[13] + ")");
  return o;
}

Outcome criterion2() {
  Outcome o;
  const int m = 30;
  const int n = 10;
  const double log2_C = log2_num_codewords(m, n);
  const double log2_dC = log2_dim_hilbert(m, n) - log2_C;
  const double log2_c = log2_conjectured_c_min(m, n);
  const double k = key_consumption_rate(111.5, m, n, log2_c);
  o.require(std::abs(log2_C - 24.84) <= 0.05, "log2 C = " + fmt(log2_C));
  o.require(std::abs(log2_dC - 4.40) <= 0.05, "log2(d/C) = " + fmt(log2_dC));
  o.require(std::abs(k - 11.2) <= 0.1, "k(gamma = 111.5) = " + fmt(k));
  o.require(log2_C - k > 0.5 * log2_C, "log2 M - k = " + fmt(log2_C - k) + " > log2 M / 2 = " + fmt(0.5 * log2_C));
  const MomentCache cache(shipped_cache());
  if (const auto rec = cache.best(m, n, PhotonPattern::bunched(n), MomentKind::two_gamma)) {
    o.detail += "; info: shipped cache two_gamma(30,10)/(10) = " + fmt(rec->value) + " gives k = " +
                fmt(key_consumption_rate(rec->value, m, n, log2_c));
  }
  return o;
}

Outcome criterion3() {
  Outcome o;
  struct Case {
    int m, n;
    const char* q;
    double published;
  };
  std::uint64_t seed = 3003;
  for (const Case& c : {Case{6, 2, "1-1", 3.770}, Case{6, 2, "2", 4.314}, Case{10, 3, "3", 6.968}}) {
    const auto q = PhotonPattern::parse(c.q);
    const GammaRecord g = estimate_gamma_q(c.m, c.n, q, 1'000'000, seed++, 0);
    const double tol = std::max(0.05 * c.published, 3.0 * g.stderr);
    std::string what = "(" + std::to_string(c.m) + "," + std::to_string(c.n) + ")/(" + c.q + ") " + fmt(g.two_gamma, 5) +
                       " +- " + fmt(g.stderr, 2) + " vs " + fmt(c.published, 5);
    if (q.size() == 1) what += " [closed form " + fmt(bunched_two_gamma_exact(c.m, c.n), 5) + "]";
    o.require(std::abs(g.two_gamma - c.published) <= tol, what);
  }
  return o;
}

Outcome criterion4() {
  Outcome o;
  int checked = 0;
  std::vector<std::string> off;
  std::uint64_t seed = 4004;
  for (int m = 1; m <= 6; ++m) {
    for (int n = 1; n <= std::min(m, 3); ++n) {
      for (const auto& info : enumerate_patterns(m, n)) {
        const MomentEstimate e = estimate_moments(m, n, info.pattern, 200'000, seed++, 0);
        const double target = conjectured_c_min(m, n);
        ++checked;
        if (std::abs(e.mean - target) > 3.0 * e.stderr_mean + 1e-15) {
          off.push_back("(" + std::to_string(m) + "," + std::to_string(n) + ")/(" + info.pattern.to_string() +
                        ") z=" + fmt((e.mean - target) / e.stderr_mean, 3));
        }
      }
    }
  }
  std::string what = "c_q = 1/d within 3 stderr for " + std::to_string(checked - off.size()) + "/" +
                     std::to_string(checked) + " patterns";
  for (const auto& s : off) what += " " + s;
  o.require(off.empty(), what);

  for (const auto& entry : published_table("I")) {
    if (entry.q.parts().front() < 2) continue;  // bunched entries only
    const MomentEstimate e = estimate_moments(entry.m, entry.n, entry.q, 200'000, seed++, 0);
    const double raw = e.mean * entry.q.factorial_product();
    const double rel = raw / entry.value - 1.0;
    o.require(std::abs(rel) <= 0.10, "raw (" + std::to_string(entry.m) + "," + std::to_string(entry.n) + ")/(" +
                                         entry.q.to_string() + ") " + fmt(raw, 4) + " vs " + fmt(entry.value, 4) +
                                         " (" + fmt(100 * rel, 3) + "%)");
  }
  return o;
}

Outcome criterion5() {
  Outcome o;
  const MomentEstimate nc = estimate_moments(40, 2, PhotonPattern::no_collision(2), 1'000'000, 5005, 0);
  const double target = 2.0 / 1600.0;
  o.require(std::abs(nc.mean - target) <= 3.0 * nc.stderr_mean,
            "E[X] = " + fmt(nc.mean, 6) + " +- " + fmt(nc.stderr_mean, 2) + " vs 2/1600 (z = " +
                fmt((nc.mean - target) / nc.stderr_mean, 3) + "; 1/d = " + fmt(conjectured_c_min(40, 2), 6) + ")");
  const GammaRecord g11 = to_gamma_record(nc);
  const GammaRecord g2 = estimate_gamma_q(40, 2, PhotonPattern::bunched(2), 1'000'000, 5006, 0);
  for (const auto& [g, published] : {std::pair{g11, 4.593}, std::pair{g2, 5.882}}) {
    const std::string name = "(40,2)/(" + g.q.to_string() + ") two_gamma " + fmt(g.two_gamma, 5);
    o.require(g.two_gamma <= 6.0, name + " <= 6");
    o.require(std::abs(g.two_gamma / published - 1.0) <= 0.05, name + " within 5% of " + fmt(published, 4));
  }
  return o;
}

Outcome criterion6() {
  Outcome o;
  const double closed = mutual_info_lossy(4, 2, 0.5);
  o.require(std::abs(closed - 1.1462) <= 5e-5, "I(4,2,0.5) = " + fmt(closed, 7));
  o.require(mutual_info_lossy(4, 2, 1.0) == std::log2(6.0), "I(4,2,1) = log2 6");
  ProtocolConfig c;
  c.m = 4;
  c.n = 2;
  c.K = 16;
  c.eta = 0.5;
  c.trials = 100'000;
  c.seed = 6006;
  c.workers = 0;
  const TrialSummary s = run_trials(c);
  o.require(std::abs(s.keyed_mi - closed) <= 0.02, "simulated keyed MI " + fmt(s.keyed_mi, 6));
  return o;
}

Outcome criterion7() {
  Outcome o;
  const MomentCache cache(shipped_cache());
  std::vector<double> grid;
  for (int i = 0; i <= 10; ++i) grid.push_back(0.5 + 0.05 * i);
  const std::vector<int> modes{10, 20, 30, 40};
  std::vector<std::vector<RatePoint>> curves;
  for (int m : modes) curves.push_back(rate_loss_curve(m, grid, 1.0, cache));
  const RatePoint top30 = curves[2].back();
  o.require(top30.best_n >= 8 && top30.best_n <= 12, "m=30 best n at eta=1 is " + std::to_string(top30.best_n));
  o.require(curves[3].back().rate_per_mode > curves[0].back().rate_per_mode,
            "per-mode rate m=40 " + fmt(curves[3].back().rate_per_mode, 4) + " > m=10 " +
                fmt(curves[0].back().rate_per_mode, 4));
  bool monotone = true;
  std::string best;
  for (std::size_t i = 0; i < curves.size(); ++i) {
    best += (i ? " m=" : "m=") + std::to_string(modes[i]) + ":";
    for (std::size_t j = 0; j < grid.size(); ++j) {
      best += std::to_string(curves[i][j].best_n) + (j + 1 < grid.size() ? "," : "");
      if (j > 0 && curves[i][j].best_n < curves[i][j - 1].best_n) monotone = false;
    }
  }
  o.require(monotone, "optimal n non-increasing as eta decreases [" + best + "]");
  return o;
}

Outcome criterion8() {
  Outcome o;
  for (auto [m, n, K] : {std::tuple{4, 2, std::size_t{32}}, std::tuple{5, 3, std::size_t{16}}}) {
    Rng book_rng(0);
    const CodeBook book = sample_codebook(m, n, 1.0, book_rng);
    const UnitaryPool pool = gen_unitary_pool(m, K, 8008, 0);
    Rng rng(1);
    std::size_t ok = 0;
    std::size_t total = 0;
    for (std::size_t k = 0; k < K; ++k) {
      for (std::size_t x = 0; x < book.size(); ++x) {
        const EncodedState s = encode(x, k, book, pool);
        const DecodeResult r = decode_with_key(k, pool, s, lossy_channel(s.codeword(), 1.0, rng), rng);
        ok += r.message() == x;
        ++total;
      }
    }
    o.require(ok == total, "(" + std::to_string(m) + "," + std::to_string(n) + ",K=" + std::to_string(K) + ") " +
                               std::to_string(ok) + "/" + std::to_string(total));
  }
  return o;
}

Outcome criterion9() {
  Outcome o;
  Rng rng(9009);
  for (auto [m, n] : {std::pair{2, 2}, std::pair{3, 2}, std::pair{4, 2}, std::pair{3, 3}}) {
    const auto basis = enumerate_basis(m, n);
    double worst = 0.0;
    for (int t = 0; t < 50; ++t) {
      const UnitaryMatrix u = haar_unitary(m, rng);
      for (const auto& in : basis) {
        const auto probs = output_distribution(u, in);
        const std::vector<int> occ_in(in.occupations().begin(), in.occupations().end());
        for (std::size_t y = 0; y < basis.size(); ++y) {
          const std::vector<int> occ_out(basis[y].occupations().begin(), basis[y].occupations().end());
          worst = std::max(worst, std::abs(probs[y] - std::norm(oracle::amplitude(u.matrix(), occ_in, occ_out))));
        }
      }
    }
    o.require(worst <= 1e-9, "(" + std::to_string(m) + "," + std::to_string(n) + ") max deviation " + fmt(worst, 3));
  }
  return o;
}

Outcome criterion10() {
  Outcome o;
  std::vector<std::string> outputs;
  for (const char* w : {"1", "2", "8"}) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = cli::run({"estimate", "gamma", "10", "3", "--samples", "100000", "--seed", "7", "--workers", w},
                              out, err);
    if (code != 0) o.require(false, std::string("workers ") + w + " exited with " + std::to_string(code));
    outputs.push_back(out.str());
  }
  o.require(outputs[0] == outputs[1] && outputs[0] == outputs[2],
            "byte-identical CSV at 1, 2 and 8 workers (" + std::to_string(outputs[0].size()) + " bytes)");
  return o;
}

Outcome criterion11() {
  Outcome o;
  const int m = 6;
  const int n = 2;
  const double M = 10.0;
  const double eps = 0.1;
  const double gamma = 4.314;  // largest two_gamma printed for (6, 2)
  const double d = static_cast<double>(dim_hilbert(m, n));
  const double c_min = conjectured_c_min(m, n);
  const KeySizeReport r = k_epsilon_single(m, n, std::log2(M), eps, gamma, std::log2(c_min));
  const double K = std::exp2(r.log2_K_epsilon);
  const FailureBounds f = failure_prob_bounds(K, M, d, eps, c_min, gamma);
  const double total = std::exp(f.ln_p1) + std::exp(f.ln_p2);
  o.require(total < 1.0, "at K = K_eps = " + fmt(K, 6) + " (" + std::string(to_string(r.active_branch)) +
                             "): ln p1 = " + fmt(f.ln_p1, 6) + ", ln p2 = " + fmt(f.ln_p2, 6) + ", p1 + p2 = " +
                             fmt(total, 17) + " < 1");
  bool monotone = true;
  FailureBounds prev = f;
  for (int i = 1; i < 10; ++i) {
    const FailureBounds next = failure_prob_bounds(K * std::pow(2.0, i), M, d, eps, c_min, gamma);
    monotone = monotone && next.ln_p1 < prev.ln_p1 && next.ln_p2 < prev.ln_p2;
    prev = next;
  }
  o.require(monotone, "both bounds strictly decrease over K = K_eps * 2^0..9");
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::function<Outcome()>> criteria{criterion1, criterion2, criterion3, criterion4,
                                                      criterion5, criterion6, criterion7, criterion8,
                                                      criterion9, criterion10, criterion11};
  std::set<int> selected;
  for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    if (!selected.empty() && !selected.count(id)) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i]();
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
    failures += !o.pass;
    std::cout << "criterion " << id << ": " << (o.pass ? "PASS" : "FAIL") << " [" << fmt(dt.count(), 3) << " s] "
              << o.detail << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
