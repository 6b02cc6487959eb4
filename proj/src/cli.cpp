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

#include "qdl/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <memory>
#include <sstream>

#include "qdl/bounds.hpp"
#include "qdl/cache.hpp"
#include "qdl/errors.hpp"
#include "qdl/fock.hpp"
#include "qdl/mc.hpp"
#include "qdl/numeric.hpp"
#include "qdl/parallel.hpp"
#include "qdl/protocol.hpp"
#include "qdl/reference.hpp"
#include "qdl/rng.hpp"
#include "qdl/svg.hpp"

#ifndef QDL_VERSION
#define QDL_VERSION "0.0.0"
#endif

namespace qdl::cli {
namespace {

constexpr double kLongRunSeconds = 60.0;
constexpr std::uint64_t kPilotSamples = 1000;

std::string fmt(double v, int precision = 10) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.*g", precision, v);
  return buf;
}

std::string default_cache_path() {
  if (const char* env = std::getenv("QDL_CACHE"); env != nullptr && *env != '\0') return env;
  return "data/gamma_cache.csv";
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

struct Globals {
  std::uint64_t seed = 0;
  unsigned workers = 0;
  std::string out_path;
  std::string cache_path;
  std::uint64_t samples = 0;
  bool accept_long = false;
  std::string config_path;
};

class Context {
 public:
  Context(const Globals& g, bool seed_given, bool cache_given, bool samples_given, std::ostream& out,
          std::ostream& err)
      : g_(g), seed_given_(seed_given), cache_given_(cache_given), samples_given_(samples_given),
        out_(&out), err_(err) {}

  std::ostream& out() { return *out_; }
  std::ostream& err() { return err_; }

  void redirect(std::ostream& sink) { out_ = &sink; }

  /// The run seed; generated (and reported) on first use when not supplied.
  std::uint64_t seed() {
    if (!seed_) {
      seed_ = seed_given_ ? g_.seed : generate_seed();
      if (!seed_given_) err_ << "seed: " << *seed_ << '\n';
    }
    return *seed_;
  }
  std::optional<std::uint64_t> seed_if_given() const {
    return seed_given_ ? std::optional<std::uint64_t>(g_.seed) : std::nullopt;
  }

  unsigned workers() const { return resolve_workers(g_.workers); }
  bool cache_given() const { return cache_given_; }
  std::string cache_path() const { return cache_given_ ? g_.cache_path : default_cache_path(); }
  std::uint64_t samples_or(std::uint64_t fallback) const { return samples_given_ ? g_.samples : fallback; }
  bool accept_long() const { return g_.accept_long; }

 private:
  const Globals& g_;
  bool seed_given_;
  bool cache_given_;
  bool samples_given_;
  std::ostream* out_;
  std::ostream& err_;
  std::optional<std::uint64_t> seed_;
};

void validate_mn(int m, int n) {
  if (m < 1 || n < 1 || n > m) {
    throw DomainError("need 1 <= n <= m, got m=" + std::to_string(m) + " n=" + std::to_string(n));
  }
}

std::string pattern_list(int m, int n) {
  std::string out;
  for (const auto& info : enumerate_patterns(m, n)) {
    if (!out.empty()) out += ", ";
    out += info.pattern.to_string();
  }
  return out;
}

std::vector<PhotonPattern> select_patterns(int m, int n, const std::vector<std::string>& texts, bool all) {
  validate_mn(m, n);
  std::vector<PhotonPattern> out;
  if (all || texts.empty()) {
    for (const auto& info : enumerate_patterns(m, n)) out.push_back(info.pattern);
    return out;
  }
  for (const auto& text : texts) {
    std::optional<PhotonPattern> q;
    try {
      q = PhotonPattern::parse(text);
    } catch (const std::exception&) {
    }
    if (!q || q->photons() != n || !q->fits(m)) {
      throw DomainError("invalid pattern '" + text + "' for (m,n)=(" + std::to_string(m) + "," +
                        std::to_string(n) + "); valid patterns: " + pattern_list(m, n));
    }
    out.push_back(*q);
  }
  return out;
}

MomentKind estimate_kind(const std::string& text) {
  if (text == "gamma") return MomentKind::two_gamma;
  return parse_moment_kind(text);
}

CacheRecord to_record(const MomentEstimate& e, MomentKind kind) {
  CacheRecord r{e.m, e.n, e.q, kind, 0.0, 0.0, e.samples, e.seed};
  switch (kind) {
    case MomentKind::c:
      r.value = e.mean;
      r.stderr = e.stderr_mean;
      break;
    case MomentKind::raw_c:
      r.value = e.mean * e.q.factorial_product();
      r.stderr = e.stderr_mean * e.q.factorial_product();
      break;
    case MomentKind::two_gamma: {
      const GammaRecord g = to_gamma_record(e);
      r.value = g.two_gamma;
      r.stderr = g.stderr;
      break;
    }
  }
  return r;
}

// ---- estimate ---------------------------------------------------------------

struct EstimateArgs {
  std::string kind;
  int m = 0;
  int n = 0;
  std::vector<std::string> q;
  bool all = false;
};

void cmd_estimate(Context& ctx, const EstimateArgs& a) {
  const MomentKind kind = estimate_kind(a.kind);
  const auto patterns = select_patterns(a.m, a.n, a.q, a.all);
  const std::uint64_t samples =
      ctx.samples_or(kind == MomentKind::two_gamma ? kDefaultGammaSamples : kDefaultCSamples);
  const std::uint64_t seed = ctx.seed();
  std::optional<MomentCache> cache;
  if (ctx.cache_given()) cache.emplace(ctx.cache_path());

  ctx.out() << csv_banner("estimate", seed) << '\n' << kCacheHeader << '\n';
  for (const auto& q : patterns) {
    const MomentEstimate e = estimate_moments(a.m, a.n, q, samples, seed, ctx.workers());
    const CacheRecord r = to_record(e, kind);
    ctx.out() << format_cache_row(r) << '\n';
    if (cache) cache->append(r);
  }
}

// ---- keysize ----------------------------------------------------------------

struct KeysizeArgs {
  int m = 0;
  int n = 0;
  double xi = 1.0;
  double eps = 0.1;
  int nu = 1;
  std::string gamma_source = "cache";
  double gamma_value = 0.0;
  std::string c_min_source;
  std::string format = "csv";
  bool fig2 = false;
  double s = 0.0;
  bool s_given = false;
  int n_min = 2;
  int n_max = 40;
};

struct GammaChoice {
  double gamma = 0.0;
  double log2_c_min = 0.0;
};

GammaChoice choose_gamma(Context& ctx, const KeysizeArgs& a, int m, int n) {
  GammaChoice out;
  if (a.gamma_source == "no-collision") {
    out.gamma = no_collision_values(m, n).two_gamma;
  } else if (a.gamma_source == "literal") {
    if (!(a.gamma_value >= 1.0)) throw DomainError("--gamma literal needs --gamma-value >= 1");
    out.gamma = a.gamma_value;
  } else {
    const MomentCache cache(ctx.cache_path());
    const auto records = cache.gamma_records(m, n);
    if (records.empty()) {
      throw CacheMiss("no two_gamma records for (m,n)=(" + std::to_string(m) + "," + std::to_string(n) +
                      ") in " + ctx.cache_path() + "; run `qdl_lab estimate gamma " + std::to_string(m) +
                      " " + std::to_string(n) + " --all-patterns --cache " + ctx.cache_path() + "`");
    }
    const GammaBound bound = gamma_bound(m, n, records);
    if (!bound.exhaustive) {
      ctx.err() << "note: cache covers " << records.size() << " pattern(s) of (" << m << "," << n
                << "); gamma = max over those (pattern " << bound.argmax.to_string() << ")\n";
    }
    out.gamma = bound.two_gamma;
  }
  std::string c_source = a.c_min_source;
  if (c_source.empty()) c_source = a.gamma_source == "no-collision" ? "no-collision" : "schur";
  out.log2_c_min = c_source == "no-collision" ? no_collision_values(m, n).log2_c_min
                                              : log2_conjectured_c_min(m, n);
  return out;
}

void cmd_keysize_fig2(Context& ctx, const KeysizeArgs& a) {
  if (a.n_min < 1 || a.n_max < a.n_min) throw DomainError("need 1 <= --n-min <= --n-max");
  ctx.out() << csv_banner("keysize", ctx.seed_if_given()) << '\n'
            << "n,m,epsilon,log2_M,log2_K_epsilon,branch\n";
  for (int n = a.n_min; n <= a.n_max; ++n) {
    const long long m_big = static_cast<long long>(n) * n * n;
    if (m_big > 1'000'000'000LL) throw DomainError("--n-max too large for m = n^3");
    const int m = static_cast<int>(m_big);
    if (m < n) continue;  // n = 1 gives m = 1, still valid; guard anyway
    const double eps = a.s_given ? std::exp2(-std::pow(static_cast<double>(n), a.s)) : a.eps;
    if (!(eps > 0.0 && eps < 1.0)) throw DomainError("epsilon must lie in (0, 1)");
    const auto nc = no_collision_values(m, n);
    const double log2_M = log2_codebook_size(m, n, a.xi);
    const KeySizeReport r = k_epsilon_single(m, n, log2_M, eps, nc.two_gamma, nc.log2_c_min);
    ctx.out() << n << ',' << m << ',' << fmt(eps) << ',' << fmt(r.log2_M) << ',' << fmt(r.log2_K_epsilon)
              << ',' << to_string(r.active_branch) << '\n';
  }
}

void cmd_keysize(Context& ctx, const KeysizeArgs& a) {
  if (a.fig2) return cmd_keysize_fig2(ctx, a);
  validate_mn(a.m, a.n);
  if (a.nu < 1) throw DomainError("--nu must be >= 1");
  const GammaChoice g = choose_gamma(ctx, a, a.m, a.n);
  const KeySizeReport r =
      a.nu == 1 ? k_epsilon_single(a.m, a.n, log2_codebook_size(a.m, a.n, a.xi), a.eps, g.gamma, g.log2_c_min)
                : k_epsilon_multi(a.m, a.n, a.nu, a.xi, a.eps, g.gamma, g.log2_c_min);
  auto& out = ctx.out();
  if (a.format == "text") {
    out << "m = " << r.m << ", n = " << r.n << ", nu = " << r.nu << ", xi = " << fmt(a.xi)
        << ", epsilon = " << fmt(r.epsilon) << '\n'
        << "gamma (2 gamma_q convention) = " << fmt(r.gamma_used) << " [" << a.gamma_source << "]\n"
        << "log2 c_min     = " << fmt(r.log2_c_min, 8) << '\n'
        << "log2 d         = " << fmt(r.log2_d, 8) << '\n'
        << "log2 M         = " << fmt(r.log2_M, 8) << '\n'
        << "log2 K_eps     = " << fmt(r.log2_K_epsilon, 8) << " (" << to_string(r.active_branch)
        << " branch; maurer " << fmt(r.log2_maurer, 8) << ", chernoff " << fmt(r.log2_chernoff, 8) << ")\n"
        << "margin         = " << fmt(r.margin(), 8) << " bits"
        << (r.margin() > 0 ? " (message longer than key)" : " (key longer than message)") << '\n';
    return;
  }
  out << csv_banner("keysize", ctx.seed_if_given()) << '\n'
      << "m,n,nu,xi,epsilon,gamma,gamma_source,log2_c_min,log2_d,log2_M,log2_maurer,log2_chernoff,"
         "log2_K_epsilon,branch,margin\n"
      << r.m << ',' << r.n << ',' << r.nu << ',' << fmt(a.xi) << ',' << fmt(r.epsilon) << ','
      << fmt(r.gamma_used) << ',' << a.gamma_source << ',' << fmt(r.log2_c_min) << ',' << fmt(r.log2_d)
      << ',' << fmt(r.log2_M) << ',' << fmt(r.log2_maurer) << ',' << fmt(r.log2_chernoff) << ','
      << fmt(r.log2_K_epsilon) << ',' << to_string(r.active_branch) << ',' << fmt(r.margin()) << '\n';
}

// ---- rate -------------------------------------------------------------------

struct RateArgs {
  std::vector<int> ms{10, 20, 30, 40};
  double eta_min = 0.5;
  double eta_max = 1.0;
  int eta_steps = 11;
  double beta = 1.0;
  std::string svg_path;
};

void cmd_rate(Context& ctx, const RateArgs& a) {
  if (a.eta_steps < 1) throw DomainError("--eta-steps must be >= 1");
  if (!(a.eta_min >= 0.0 && a.eta_max <= 1.0 && a.eta_min <= a.eta_max)) {
    throw DomainError("need 0 <= --eta-min <= --eta-max <= 1");
  }
  std::vector<double> grid;
  for (int i = 0; i < a.eta_steps; ++i) {
    grid.push_back(a.eta_steps == 1 ? a.eta_max
                                    : a.eta_min + (a.eta_max - a.eta_min) * i / (a.eta_steps - 1));
  }
  const MomentCache cache(ctx.cache_path());
  std::vector<ChartSeries> series;
  std::ostringstream rows;
  std::string missing;
  for (int m : a.ms) {
    try {
      const auto curve = rate_loss_curve(m, grid, a.beta, cache);
      ChartSeries s{"m = " + std::to_string(m), {}};
      for (const auto& p : curve) {
        rows << m << ',' << fmt(p.eta) << ',' << p.best_n << ',' << fmt(p.rate) << ',' << fmt(p.rate_per_mode)
             << '\n';
        s.points.emplace_back(p.eta, p.rate_per_mode);
      }
      series.push_back(std::move(s));
    } catch (const CacheMiss& e) {
      missing += std::string(missing.empty() ? "" : "; ") + e.what();
    }
  }
  if (!missing.empty()) {
    throw CacheMiss(missing + " (cache " + ctx.cache_path() + "; fill it with `qdl_lab cache seed-exact` or "
                    "`qdl_lab estimate gamma M N --q N --cache PATH`)");
  }
  ctx.out() << csv_banner("rate", ctx.seed_if_given()) << '\n' << "m,eta,best_n,rate,rate_per_mode\n"
            << rows.str();
  if (!a.svg_path.empty()) {
    std::ofstream svg(a.svg_path);
    if (!svg) throw DomainError("cannot write " + a.svg_path);
    svg << line_chart_svg(series, {"Net key rate vs transmissivity (beta = " + fmt(a.beta, 3) + ")",
                                   "transmissivity eta", "bits per mode"});
  }
}

// ---- simulate ---------------------------------------------------------------

struct SimulateArgs {
  int m = 0;
  int n = 0;
  std::uint64_t K = 16;
  double eta = 1.0;
  std::uint64_t trials = 10'000;
  double xi = 1.0;
  std::string transcript;
  bool no_blind = false;
  std::uint64_t budget = kDefaultTrialBudget;
};

void cmd_simulate(Context& ctx, const SimulateArgs& a) {
  validate_mn(a.m, a.n);
  ProtocolConfig config;
  config.m = a.m;
  config.n = a.n;
  config.K = a.K;
  config.eta = a.eta;
  config.trials = a.trials;
  config.xi = a.xi;
  config.workers = ctx.workers();
  config.blind = !a.no_blind;
  config.keep_records = !a.transcript.empty();
  config.budget = a.budget;
  config.seed = ctx.seed();
  const TrialSummary s = run_trials(config);
  const double closed = mutual_info_lossy(a.m, a.n, a.eta);

  auto& out = ctx.out();
  out << csv_banner("simulate", config.seed) << '\n' << "metric,value\n";
  out << "m," << a.m << "\nn," << a.n << "\nK," << s.K << "\nM," << s.M << "\neta," << fmt(a.eta)
      << "\ntrials," << s.trials << "\nlog2_M," << fmt(s.log2_M) << "\nkeyed_success_rate,"
      << fmt(s.keyed_success_rate) << "\nkeyed_mi," << fmt(s.keyed_mi) << "\nkeyed_mi_plugin_bias,"
      << fmt(s.keyed_bias) << "\nclosed_form_mi," << fmt(closed) << "\nkeyed_mi_minus_closed_form,"
      << fmt(s.keyed_mi - closed) << '\n';
  if (s.blind_mi) {
    out << "blind_mi_lower_bound," << fmt(*s.blind_mi) << "\nblind_mi_plugin_bias," << fmt(*s.blind_bias)
        << '\n';
  }
  if (a.xi < 1.0) ctx.err() << "note: closed_form_mi assumes the full code book (xi = 1)\n";
  if (!a.transcript.empty()) {
    std::ofstream file(a.transcript);
    if (!file) throw DomainError("cannot write " + a.transcript);
    write_transcript(file, s.records);
  }
}

// ---- tables -----------------------------------------------------------------

struct TablesArgs {
  std::string which;
  int m = 0;
  int n = 0;
};

std::optional<double> exact_value(const PublishedEntry& e) {
  if (e.kind == MomentKind::raw_c) {
    return e.q.factorial_product() * std::exp2(-log2_dim_hilbert(e.m, e.n));
  }
  if (e.kind == MomentKind::two_gamma && e.q.size() == 1) return bunched_two_gamma_exact(e.m, e.n);
  return std::nullopt;
}

void cmd_tables(Context& ctx, const TablesArgs& a) {
  auto entries = published_table(a.which);
  std::erase_if(entries, [&](const PublishedEntry& e) {
    return (a.m != 0 && e.m != a.m) || (a.n != 0 && e.n != a.n);
  });
  if (entries.empty()) throw DomainError("no rows of table " + a.which + " match the --m/--n filter");
  const bool is_c = entries.front().kind == MomentKind::raw_c;
  const std::uint64_t samples = ctx.samples_or(is_c ? kDefaultCSamples : kDefaultGammaSamples);
  const std::uint64_t seed = ctx.seed();
  const unsigned workers = ctx.workers();

  double eta = 0.0;
  for (const auto& e : entries) {
    const auto t0 = std::chrono::steady_clock::now();
    estimate_moments(e.m, e.n, e.q, kPilotSamples, splitmix64(seed), workers);
    const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
    eta += dt.count() * static_cast<double>(samples) / static_cast<double>(kPilotSamples);
  }
  ctx.err() << "tables: " << entries.size() << " rows at " << samples << " samples, estimated "
            << fmt(eta, 3) << " s\n";
  if (eta > kLongRunSeconds && !ctx.accept_long()) {
    throw ResourceError("table " + a.which + " needs about " + fmt(eta, 3) +
                        " s; rerun with --accept-long or lower --samples");
  }

  auto& out = ctx.out();
  out << csv_banner("tables", seed) << '\n'
      << "table,m,n,q,kind,estimate,stderr,samples,seed,exact,published,rel_dev,z\n";
  for (const auto& e : entries) {
    const CacheRecord r = to_record(estimate_moments(e.m, e.n, e.q, samples, seed, workers), e.kind);
    const auto exact = exact_value(e);
    out << e.table << ',' << e.m << ',' << e.n << ',' << e.q.to_string() << ',' << to_string(e.kind) << ','
        << fmt(r.value) << ',' << fmt(r.stderr) << ',' << r.samples << ',' << r.seed << ','
        << (exact ? fmt(*exact) : "") << ',' << fmt(e.value) << ',' << fmt((r.value - e.value) / e.value, 4)
        << ',' << (r.stderr > 0 ? fmt((r.value - e.value) / r.stderr, 4) : "") << '\n';
  }
}

// ---- dim --------------------------------------------------------------------

struct DimArgs {
  int m = 0;
  int n = 0;
  bool patterns = false;
};

void cmd_dim(Context& ctx, const DimArgs& a) {
  validate_mn(a.m, a.n);
  auto& out = ctx.out();
  out << csv_banner("dim", ctx.seed_if_given()) << '\n';
  if (a.patterns) {
    out << "m,n,q,subspace_dim\n";
    for (const auto& info : enumerate_patterns(a.m, a.n)) {
      out << a.m << ',' << a.n << ',' << info.pattern.to_string() << ',' << info.subspace_dim << '\n';
    }
    return;
  }
  const auto d = binomial_exact(static_cast<std::int64_t>(a.m) + a.n - 1, a.n);
  const auto c = binomial_exact(a.m, a.n);
  out << "m,n,d,C,log2_d,log2_C\n"
      << a.m << ',' << a.n << ',' << (d ? std::to_string(*d) : "") << ',' << (c ? std::to_string(*c) : "")
      << ',' << fmt(log2_dim_hilbert(a.m, a.n)) << ',' << fmt(log2_num_codewords(a.m, a.n)) << '\n';
}

// ---- cache ------------------------------------------------------------------

struct CacheArgs {
  std::vector<int> ms{10, 20, 30, 40};
  int n_max = 0;
  int m = 0;
  int n = 0;
};

void cmd_cache_seed_exact(Context& ctx, const CacheArgs& a) {
  MomentCache cache(ctx.cache_path());
  auto& out = ctx.out();
  out << csv_banner("cache", ctx.seed_if_given()) << '\n' << kCacheHeader << '\n';
  for (int m : a.ms) {
    const int top = a.n_max > 0 ? std::min(a.n_max, m) : m;
    for (int n = 1; n <= top; ++n) {
      validate_mn(m, n);
      const PhotonPattern q = PhotonPattern::bunched(n);
      const auto have = cache.best(m, n, q, MomentKind::two_gamma);
      if (have && have->exact()) continue;
      const CacheRecord r{m, n, q, MomentKind::two_gamma, bunched_two_gamma_exact(m, n), 0.0, 0, 0};
      cache.append(r);
      out << format_cache_row(r) << '\n';
    }
  }
}

void cmd_cache_show(Context& ctx, const CacheArgs& a) {
  validate_mn(a.m, a.n);
  const MomentCache cache(ctx.cache_path());
  const auto records = cache.gamma_records(a.m, a.n);
  if (records.empty()) {
    throw CacheMiss("no two_gamma records for (m,n)=(" + std::to_string(a.m) + "," + std::to_string(a.n) +
                    ") in " + ctx.cache_path());
  }
  auto& out = ctx.out();
  out << csv_banner("cache", ctx.seed_if_given()) << '\n' << "m,n,q,two_gamma,stderr,samples,seed\n";
  for (const auto& r : records) {
    out << r.m << ',' << r.n << ',' << r.q.to_string() << ',' << fmt(r.two_gamma) << ',' << fmt(r.stderr)
        << ',' << r.samples << ',' << r.seed << '\n';
  }
  const GammaBound b = gamma_bound(a.m, a.n, records);
  ctx.err() << "gamma bound " << fmt(b.two_gamma) << " at pattern " << b.argmax.to_string()
            << (b.exhaustive ? " (all patterns)" : " (subset of patterns)") << '\n';
}

// Splices config-file tokens in right after the (deepest) subcommand name so
// that explicit flags, which come later, take precedence.
std::vector<std::string> splice_config(CLI::App& app, std::vector<std::string> args, std::ostream& err) {
  std::string path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      path = args[i + 1];
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(i), args.begin() + static_cast<std::ptrdiff_t>(i) + 2);
      break;
    }
    if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(i));
      break;
    }
  }
  if (path.empty()) return args;

  CLI::App* cur = &app;
  std::size_t pos = args.size();
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (CLI::App* sub = cur->get_subcommand_no_throw(args[i])) {
      cur = sub;
      pos = i + 1;
    }
  }
  std::vector<std::string> tokens;
  for (const auto& token : read_config(path)) {
    const std::string name = token.substr(0, token.find('='));
    bool known = false;
    for (CLI::App* scope = cur; scope != nullptr && !known; scope = scope->get_parent()) {
      known = scope->get_option_no_throw(name) != nullptr;
    }
    if (known) {
      tokens.push_back(token);
    } else {
      err << "config: ignoring '" << name.substr(2) << "' (not an option of this command)\n";
    }
  }
  args.insert(args.begin() + static_cast<std::ptrdiff_t>(std::min(pos, args.size())), tokens.begin(),
              tokens.end());
  return args;
}

}  // namespace

std::string_view version() { return QDL_VERSION; }

std::string csv_banner(std::string_view command, std::optional<std::uint64_t> seed) {
  return "# qdl-lab v" + std::string(version()) + " cmd=" + std::string(command) +
         " seed=" + (seed ? std::to_string(*seed) : std::string("none"));
}

std::vector<std::string> read_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot read config file " + path);
  std::vector<std::string> tokens;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string text = trim(line.substr(0, line.find('#')));
    if (text.empty()) continue;
    const auto eq = text.find('=');
    if (eq == std::string::npos) {
      throw DomainError(path + ":" + std::to_string(lineno) + ": expected key=value");
    }
    const std::string key = trim(std::string_view(text).substr(0, eq));
    if (key.empty()) throw DomainError(path + ":" + std::to_string(lineno) + ": empty key");
    tokens.push_back("--" + key + "=" + trim(std::string_view(text).substr(eq + 1)));
  }
  return tokens;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"qdl-lab: multiphoton quantum data locking calculator", "qdl_lab"};
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.fallthrough();
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(version()));

  Globals g;
  app.add_option("--seed", g.seed, "64-bit seed (generated and printed when absent)");
  app.add_option("--workers", g.workers, "worker threads, 0 = all cores")->capture_default_str();
  app.add_option("--out", g.out_path, "write the CSV here instead of stdout");
  app.add_option("--cache", g.cache_path, "moment cache CSV (default $QDL_CACHE or data/gamma_cache.csv)");
  app.add_option("--samples", g.samples, "Monte Carlo samples per estimate");
  app.add_flag("--accept-long", g.accept_long, "allow runs whose pilot ETA exceeds a minute");
  app.add_option("--config", g.config_path, "flat key=value file; explicit flags win");

  EstimateArgs ea;
  auto* estimate = app.add_subcommand("estimate", "Monte Carlo c_q / 2 gamma_q estimates (CSV, cache rows)");
  estimate->add_option("kind", ea.kind, "c, gamma or raw_c")
      ->required()
      ->check(CLI::IsMember({"c", "gamma", "raw_c"}));
  estimate->add_option("m", ea.m, "modes")->required();
  estimate->add_option("n", ea.n, "photons")->required();
  estimate->add_option("--q", ea.q, "pattern such as 2-1 (repeatable)")
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
  estimate->add_flag("--all-patterns", ea.all, "every photon pattern of (m, n) (the default)");

  KeysizeArgs ka;
  auto* keysize = app.add_subcommand("keysize", "minimum key-pool size K_eps versus message length");
  keysize->add_option("m", ka.m, "modes");
  keysize->add_option("n", ka.n, "photons");
  keysize->add_option("--xi", ka.xi, "code-book fraction")->capture_default_str();
  keysize->add_option("--eps", ka.eps, "security parameter epsilon")->capture_default_str();
  keysize->add_option("--nu", ka.nu, "channel uses")->capture_default_str();
  keysize->add_option("--gamma", ka.gamma_source, "gamma source")
      ->check(CLI::IsMember({"no-collision", "cache", "literal"}))
      ->capture_default_str();
  keysize->add_option("--gamma-value", ka.gamma_value, "two_gamma for --gamma literal");
  keysize->add_option("--c-min", ka.c_min_source, "c_min source: schur (1/d) or no-collision (n!/m^n)")
      ->check(CLI::IsMember({"schur", "no-collision"}));
  keysize->add_option("--format", ka.format, "csv or text")
      ->check(CLI::IsMember({"csv", "text"}))
      ->capture_default_str();
  keysize->add_flag("--fig2", ka.fig2, "sweep n with m = n^3 and no-collision parameters");
  auto* s_opt = keysize->add_option("--s", ka.s, "epsilon = 2^(-n^s) in the sweep");
  keysize->add_option("--n-min", ka.n_min, "sweep start")->capture_default_str();
  keysize->add_option("--n-max", ka.n_max, "sweep end")->capture_default_str();

  RateArgs ra;
  auto* rate = app.add_subcommand("rate", "net key rate versus transmissivity (CSV + optional SVG)");
  rate->add_option("--m", ra.ms, "mode counts")
      ->delimiter(',')
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll)
      ->capture_default_str();
  rate->add_option("--eta-min", ra.eta_min)->capture_default_str();
  rate->add_option("--eta-max", ra.eta_max)->capture_default_str();
  rate->add_option("--eta-steps", ra.eta_steps)->capture_default_str();
  rate->add_option("--beta", ra.beta, "error-correction efficiency")->capture_default_str();
  rate->add_option("--svg", ra.svg_path, "write an SVG chart of bits per mode");

  SimulateArgs sa;
  auto* simulate = app.add_subcommand("simulate", "end-to-end protocol simulation");
  simulate->add_option("m", sa.m, "modes")->required();
  simulate->add_option("n", sa.n, "photons")->required();
  simulate->add_option("--K", sa.K, "key-pool size")->capture_default_str();
  simulate->add_option("--eta", sa.eta, "transmissivity")->capture_default_str();
  simulate->add_option("--trials", sa.trials)->capture_default_str();
  simulate->add_option("--xi", sa.xi, "code-book fraction")->capture_default_str();
  simulate->add_option("--transcript", sa.transcript, "per-trial CSV");
  simulate->add_flag("--no-blind", sa.no_blind, "skip the keyless photodetection diagnostic");
  simulate->add_option("--budget", sa.budget, "cap on trials * d")->capture_default_str();

  TablesArgs ta;
  auto* tables = app.add_subcommand("tables", "re-estimate a published coefficient table");
  tables->add_option("which", ta.which, "I, II, III, IV or V")
      ->required()
      ->check(CLI::IsMember({"I", "II", "III", "IV", "V"}));
  tables->add_option("--m", ta.m, "only rows with this m");
  tables->add_option("--n", ta.n, "only rows with this n");

  DimArgs da;
  auto* dim = app.add_subcommand("dim", "Hilbert-space and code-space sizes");
  dim->add_option("m", da.m, "modes")->required();
  dim->add_option("n", da.n, "photons")->required();
  dim->add_flag("--patterns", da.patterns, "list photon patterns with subspace dimensions");

  CacheArgs ca;
  auto* cache = app.add_subcommand("cache", "inspect or seed the moment cache");
  cache->require_subcommand(1);
  auto* seed_exact = cache->add_subcommand("seed-exact", "append closed-form bunched two_gamma records");
  seed_exact->add_option("--m", ca.ms, "mode counts")
      ->delimiter(',')
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll)
      ->capture_default_str();
  seed_exact->add_option("--n-max", ca.n_max, "largest n (default m)");
  auto* show = cache->add_subcommand("show", "preferred two_gamma records of (m, n)");
  show->add_option("m", ca.m, "modes")->required();
  show->add_option("n", ca.n, "photons")->required();

  try {
    std::vector<std::string> argv = splice_config(app, args, err);
    std::reverse(argv.begin(), argv.end());
    app.parse(argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  Context ctx(g, app.get_option("--seed")->count() > 0, app.get_option("--cache")->count() > 0,
              app.get_option("--samples")->count() > 0, out, err);
  std::unique_ptr<std::ofstream> file;
  try {
    if (!g.out_path.empty()) {
      file = std::make_unique<std::ofstream>(g.out_path);
      if (!*file) throw DomainError("cannot write " + g.out_path);
      ctx.redirect(*file);
    }
    if (estimate->parsed()) {
      cmd_estimate(ctx, ea);
    } else if (keysize->parsed()) {
      ka.s_given = s_opt->count() > 0;
      if (!ka.fig2 && (keysize->get_option("m")->count() == 0 || keysize->get_option("n")->count() == 0)) {
        throw DomainError("keysize needs m and n (or --fig2)");
      }
      cmd_keysize(ctx, ka);
    } else if (rate->parsed()) {
      cmd_rate(ctx, ra);
    } else if (simulate->parsed()) {
      cmd_simulate(ctx, sa);
    } else if (tables->parsed()) {
      cmd_tables(ctx, ta);
    } else if (dim->parsed()) {
      cmd_dim(ctx, da);
    } else if (seed_exact->parsed()) {
      cmd_cache_seed_exact(ctx, ca);
    } else if (show->parsed()) {
      cmd_cache_show(ctx, ca);
    }
  } catch (const CacheMiss& e) {
    err << "cache miss: " << e.what() << '\n';
    return kExitCacheMiss;
  } catch (const ResourceError& e) {
    err << "resource limit: " << e.what() << '\n';
    return kExitResource;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitOk;
}

}  // namespace qdl::cli
