#include "dejean/pipeline.hpp"

#include <chrono>
#include <cstdarg>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <utility>

#include "dejean/cascade.hpp"
#include "dejean/corrections.hpp"
#include "dejean/counting.hpp"
#include "dejean/language_graph.hpp"
#include "dejean/spectral.hpp"

namespace dejean {
namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* pattern, ...) {
  va_list args;
  va_start(args, pattern);
  char buf[512];
  std::vsnprintf(buf, sizeof buf, pattern, args);
  va_end(args);
  return std::string(buf);
}

std::string graph_cache_path(const std::string& dir, int k, int m) {
  return dir + "/graph-k" + std::to_string(k) + "-m" + std::to_string(m) +
         ".txt";
}

std::string zeta_cache_path(const std::string& dir, int k, int m, int j) {
  return dir + "/zeta-k" + std::to_string(k) + "-m" + std::to_string(m) +
         "-j" + std::to_string(j) + ".txt";
}

// One cached file per enumerated period: a header naming the configuration
// slice, then one line per suffix class with the per-prefix-class context
// counts.
void save_zeta_period(const std::string& path, int k, int m, int j,
                      const std::vector<ZetaRow>& rows) {
  std::ostringstream os;
  os << "zeta 1 " << k << ' ' << m << ' ' << j << ' ' << rows.size() << '\n';
  for (const ZetaRow& r : rows) {
    os << r.base;
    for (const BigInt& c : r.by_prefix_class) os << ' ' << c.get_str();
    os << '\n';
  }
  std::string tmp = path + ".tmp";
  std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
  f << os.str();
  f.close();
  if (!f) throw ConfigError("cannot write cache file " + path);
  fs::rename(tmp, path);
}

bool load_zeta_period(const std::string& path, int k, int m, int j,
                      std::size_t s, std::vector<ZetaRow>& out) {
  std::ifstream f(path, std::ios::binary);
  if (!f) return false;
  std::string tag;
  int ver = 0, fk = 0, fm = 0, fj = 0;
  std::size_t fs_ = 0;
  if (!(f >> tag >> ver >> fk >> fm >> fj >> fs_) || tag != "zeta" ||
      ver != 1 || fk != k || fm != m || fj != j || fs_ != s)
    throw ConfigError("cache file " + path + " does not match the run");
  std::vector<ZetaRow> rows;
  for (std::size_t b = 0; b < s; ++b) {
    ZetaRow r;
    r.j = j;
    int base = -1;
    if (!(f >> base) || base != static_cast<int>(b))
      throw ConfigError("cache file " + path + " is corrupt");
    r.base = base;
    r.by_prefix_class.resize(s);
    for (std::size_t l = 0; l < s; ++l) {
      std::string digits;
      if (!(f >> digits)) throw ConfigError("cache file " + path + " is corrupt");
      r.by_prefix_class[l] = BigInt(digits);
      r.context_count += r.by_prefix_class[l];
    }
    rows.push_back(std::move(r));
  }
  out = std::move(rows);
  return true;
}

// Per-class forward (and, once periods overhang the window, backward) rows
// over the voltage lift, advanced incrementally: the forward power a period
// needs never decreases with the period, so one pass over p1+1..p2 advances
// every row monotonically.
template <typename RowT>
struct WeakRows {
  std::vector<RowT> fwd, bwd, scratch;
  int fpow = 0, bpow = 0;
  bool bwd_live = false;
};

std::vector<std::uint64_t> seed_row(const LiftRows& lift, int c,
                                    std::uint64_t) {
  return lift.unit_row(c);
}
std::vector<double> seed_row(const LiftRows& lift, int c, double) {
  return lift.unit_row_rounded(c);
}

RowView view_of(const std::vector<std::uint64_t>& r) {
  RowView v;
  v.exact = &r;
  return v;
}
RowView view_of(const std::vector<double>& r) {
  RowView v;
  v.rounded = &r;
  return v;
}

template <typename RowT>
std::map<int, std::vector<Rational>> weak_period_table(
    const ClassGraph& g, const LiftRows& lift,
    const std::vector<Rational>& x_hat, int p1, int p2, int threads,
    Guard& guard) {
  const std::size_t s = g.s();
  WeakRows<RowT> w;
  w.scratch.resize(s);
  for (std::size_t l = 0; l < s; ++l)
    w.fwd.push_back(seed_row(lift, static_cast<int>(l),
                             typename RowT::value_type{}));

  std::map<int, std::vector<Rational>> xi;
  for (int j = p1 + 1; j <= p2; ++j) {
    PeriodGeometry geo = period_geometry(g.k, g.m, j);
    bool in_window = geo.chi <= g.m;
    int need_f = in_window ? j : j + g.m - geo.chi;
    while (w.fpow < need_f) {
      guard.bump(lift.cells() * s);
      parallel_for_index(s, threads, [&](std::size_t l) {
        lift.step_forward(w.fwd[l], w.scratch[l]);
      });
      ++w.fpow;
    }
    std::vector<RowView> fviews;
    for (const RowT& r : w.fwd) fviews.push_back(view_of(r));
    if (in_window) {
      xi[j] = xi_weak_small(lift, j, x_hat, fviews);
      continue;
    }
    if (!w.bwd_live) {
      for (std::size_t l = 0; l < s; ++l)
        w.bwd.push_back(seed_row(lift, static_cast<int>(l),
                                 typename RowT::value_type{}));
      w.bwd_live = true;
    }
    int need_b = geo.chi - g.m;
    while (w.bpow < need_b) {
      guard.bump(lift.cells() * s);
      parallel_for_index(s, threads, [&](std::size_t l) {
        lift.step_backward(w.bwd[l], w.scratch[l]);
      });
      ++w.bpow;
    }
    std::vector<RowView> bviews;
    for (const RowT& r : w.bwd) bviews.push_back(view_of(r));
    xi[j] = xi_weak_large(lift, j, x_hat, fviews, bviews);
  }
  return xi;
}

// Everything up to and including the cascade, shared by the full run and
// the tables-only entry point.
struct Tables {
  ClassGraph g;
  PerronCertificate pc;
  int p0 = 0;
  std::vector<ZetaRow> zeta;
  std::map<int, std::vector<Rational>> xi;
  OmegaTable omega;
  CascadeResult cascade;
  int q = 0;
};

Tables build_stage_tables(const PipelineConfig& cfg, Guard& guard,
                          std::vector<std::string>& log) {
  Tables t;
  Clock::time_point t0 = Clock::now();
  t.g = cached_core_graph(cfg.k, cfg.m, cfg.cache_dir, guard);
  log.push_back(fmt("graph: %zu classes, %zu edges (%.1fs)", t.g.s(),
                    t.g.edge_count(), seconds_since(t0)));

  t0 = Clock::now();
  t.pc = certify_growth(t.g);
  log.push_back(fmt("growth: rate %.9f, weight spread %.6f (%.1fs)",
                    rational_to_double(t.pc.r_hat),
                    rational_to_double(t.pc.mu_hat), seconds_since(t0)));

  t.p0 = first_free_period(cfg.k, cfg.m);
  t0 = Clock::now();
  if (cfg.p1 >= t.p0) {
    std::size_t cached = 0;
    std::vector<int> todo;
    for (int j = t.p0; j <= cfg.p1; ++j) {
      std::vector<ZetaRow> rows;
      if (!cfg.cache_dir.empty() &&
          load_zeta_period(zeta_cache_path(cfg.cache_dir, cfg.k, cfg.m, j),
                           cfg.k, cfg.m, j, t.g.s(), rows)) {
        ++cached;
        for (ZetaRow& r : rows) t.zeta.push_back(std::move(r));
      } else {
        todo.push_back(j);
      }
    }
    if (!todo.empty()) {
      std::vector<std::vector<ZetaRow>> fresh(todo.size());
      std::size_t s = t.g.s();
      for (auto& f : fresh) f.resize(s);
      parallel_for_index(todo.size() * s, cfg.threads, [&](std::size_t i) {
        std::size_t pj = i / s;
        int base = static_cast<int>(i % s);
        fresh[pj][static_cast<std::size_t>(base)] =
            enumerate_period_contexts(t.g, todo[pj], base, guard);
      });
      for (std::size_t pj = 0; pj < todo.size(); ++pj) {
        if (!cfg.cache_dir.empty())
          save_zeta_period(
              zeta_cache_path(cfg.cache_dir, cfg.k, cfg.m, todo[pj]), cfg.k,
              cfg.m, todo[pj], fresh[pj]);
        for (ZetaRow& r : fresh[pj]) t.zeta.push_back(std::move(r));
      }
    }
    log.push_back(fmt("contexts: periods %d..%d enumerated, %zu from cache "
                      "(%.1fs)",
                      t.p0, cfg.p1, cached, seconds_since(t0)));
  } else {
    log.push_back("contexts: enumeration disabled");
  }

  std::map<int, std::vector<Rational>> eta;
  if (cfg.p1 >= t.p0) eta = eta_prime_table(t.g, cfg.p1, t.zeta, t.pc.x_hat);

  t0 = Clock::now();
  LiftRows lift(t.g);
  if (cfg.rounded_rows)
    t.xi = weak_period_table<std::vector<double>>(
        t.g, lift, t.pc.x_hat, cfg.p1, cfg.p2, cfg.threads, guard);
  else
    t.xi = weak_period_table<std::vector<std::uint64_t>>(
        t.g, lift, t.pc.x_hat, cfg.p1, cfg.p2, cfg.threads, guard);
  log.push_back(fmt("path counts: periods %d..%d tabulated with %s rows "
                    "(%.1fs)",
                    cfg.p1 + 1, cfg.p2, cfg.rounded_rows ? "rounded" : "exact",
                    seconds_since(t0)));

  t.omega = assemble_omega(cfg.k, cfg.m, t.p0, cfg.p1, cfg.p2, t.g.s(), eta,
                           t.xi);
  t.cascade = rho_cascade(t.g, t.omega, t.pc.x_hat);
  t.q = tail_exponent(cfg.k, cfg.p2);
  log.push_back(fmt("cascade: shifts [%d, %d], tail exponent q=%d",
                    t.cascade.a, t.cascade.b, t.q));
  return t;
}

// Ticks of the 1e-9 rate grid every emitted alpha lives on.
const long kGrid = 1000000000L;

BigInt ticks_of(const Rational& alpha) {
  Rational scaled = alpha * Rational(kGrid);
  scaled.canonicalize();
  if (scaled.get_den() != 1)
    throw VerifyError("rate is not on the search grid");
  return BigInt(scaled.get_num());
}

Rational from_ticks(const BigInt& t) {
  Rational r(t, kGrid);
  r.canonicalize();
  return r;
}

// Empty string: alpha passes every exact check.  Otherwise: which check
// blocked it.
std::string full_predicate(const Tables& t, const PipelineConfig& cfg,
                           bool truncated,
                           const std::vector<Rational>& weighted,
                           const Rational& alpha) {
  if (!final_inequality_holds(t.pc.r_hat, t.cascade, t.pc.mu_hat, t.q, alpha))
    return "final step inequality fails";
  CheckOutcome base = check_base_inequalities(weighted, cfg.m, cfg.n0, alpha);
  if (!base.ok) return base.what;
  if (truncated) {
    CheckOutcome gaps = check_gap_steps(
        cfg.k, cfg.m, t.p0, cfg.p1, cfg.p2, cfg.n0, weighted.back(),
        t.pc.r_hat, t.pc.mu_hat, t.q, t.cascade, t.pc.x_hat, alpha);
    if (!gaps.ok) return gaps.what;
  }
  return std::string();
}

}  // namespace

void validate_config(const PipelineConfig& cfg) {
  auto bad = [](const std::string& why) { throw ConfigError(why); };
  if (cfg.k < 5 || cfg.k > 10) bad("alphabet size must be between 5 and 10");
  if (cfg.m <= cfg.k) bad("window length must exceed the alphabet size");
  int p0 = first_free_period(cfg.k, cfg.m);
  if (cfg.p1 < p0 - 1)
    bad(fmt("largest enumerated period %d is below %d (one less than the "
            "first free period)",
            cfg.p1, p0 - 1));
  if (cfg.p2 <= cfg.p1)
    bad("largest tabulated period must exceed the enumerated range");
  if (cfg.p2 < 2 * cfg.k - 3)
    bad(fmt("largest tabulated period must be at least %d for the tail "
            "bound to hold",
            2 * cfg.k - 3));
  if (period_geometry(cfg.k, cfg.m, cfg.p1 + 1).chi < cfg.k - 1)
    bad(fmt("path-counted periods must repeat at least %d letters inside "
            "the window; raise the enumerated range to at least %d",
            cfg.k - 1, (cfg.k - 2) * (cfg.k - 1) - 1));
  if (cfg.n0 < cfg.m) bad("anchor length must be at least the window length");
  if (cfg.threads < 1) bad("thread count must be positive");
}

ClassGraph cached_core_graph(int k, int m, const std::string& cache_dir,
                             Guard& guard) {
  if (cache_dir.empty()) return build_core_class_graph(k, m, guard);
  fs::create_directories(cache_dir);
  std::string path = graph_cache_path(cache_dir, k, m);
  if (fs::exists(path)) {
    try {
      ClassGraph g = load_class_graph(path);
      if (g.k != k || g.m != m)
        throw ConfigError("cache file " + path + " does not match the run");
      validate_class_graph(g);
      return g;
    } catch (const VerifyError& e) {
      throw ConfigError("cache file " + path +
                        " failed validation: " + e.what());
    }
  }
  ClassGraph g = build_core_class_graph(k, m, guard);
  std::string tmp = path + ".tmp";
  save_class_graph(g, tmp);
  fs::rename(tmp, path);
  return g;
}

TableSummary build_tables(const PipelineConfig& raw) {
  PipelineConfig cfg = raw;
  if (cfg.n0 < cfg.m) cfg.n0 = cfg.m;
  validate_config(cfg);
  Guard guard(cfg.guard_nodes, cfg.guard_seconds);
  TableSummary out;
  Tables t = build_stage_tables(cfg, guard, out.transcript);
  out.classes = t.g.s();
  out.r_hat = t.pc.r_hat;
  out.mu_hat = t.pc.mu_hat;
  out.p0 = t.p0;
  out.band_a = t.cascade.a;
  out.band_b = t.cascade.b;
  out.q = t.q;
  out.damping_at_inverse_rate =
      damping_polynomial(t.cascade, Rational(1) / t.pc.r_hat, t.cascade.b);
  return out;
}

PipelineResult run_pipeline(const PipelineConfig& cfg) {
  validate_config(cfg);
  if (!cfg.cache_dir.empty()) fs::create_directories(cfg.cache_dir);
  Guard guard(cfg.guard_nodes, cfg.guard_seconds);
  PipelineResult res;
  res.transcript.push_back(
      fmt("config: k=%d m=%d p1=%d p2=%d n0=%d rows=%s threads=%d", cfg.k,
          cfg.m, cfg.p1, cfg.p2, cfg.n0, cfg.rounded_rows ? "rounded" : "exact",
          cfg.threads));

  Tables t = build_stage_tables(cfg, guard, res.transcript);

  bool default_ok =
      static_cast<long long>(cfg.k) * cfg.p2 / (cfg.k - 1) <= cfg.n0 &&
      cfg.m + t.cascade.b <= cfg.n0;
  res.truncated = !default_ok;
  res.transcript.push_back(
      res.truncated
          ? fmt("mode: truncated (anchor %d ends before the band at %d)",
                cfg.n0, cfg.m + t.cascade.b)
          : "mode: default (anchor covers the band)");

  AlphaSolveResult sol =
      solve_alpha(t.pc.r_hat, t.cascade, t.pc.mu_hat, t.q);
  if (!sol.feasible) {
    Rational probe = rational_from_double(sol.best_alpha);
    if (!(probe > 1)) probe = Rational(kGrid + 1, kGrid);
    double damp = rational_to_double(
        damping_polynomial(t.cascade, Rational(1) / probe, t.cascade.b));
    double tail = rational_to_double(tail_value(t.pc.mu_hat, t.q, probe));
    res.diagnostic = fmt(
        "no rate above 1 satisfies the final step: best margin %.6f at "
        "alpha=%.9f, where expansion %.9f meets damping %.6f plus tail %.6f "
        "(%s dominates)",
        sol.best_gap, sol.best_alpha, rational_to_double(t.pc.r_hat), damp,
        tail, damp > tail ? "damping" : "tail");
    res.transcript.push_back("rate search: " + res.diagnostic);
    return res;
  }
  res.transcript.push_back(fmt("rate search: final-step edge at alpha=%.9f",
                               rational_to_double(sol.alpha)));

  Clock::time_point t0 = Clock::now();
  ClassCounts counts = count_minrep_by_class(t.g, cfg.n0, guard, cfg.threads);
  std::vector<Rational> weighted;
  for (int n = cfg.m; n <= cfg.n0; ++n)
    weighted.push_back(counts.weighted(n, t.pc.x_hat));
  res.transcript.push_back(
      fmt("anchor: exact counts to length %d (%.1fs)", cfg.n0,
          seconds_since(t0)));

  // The final-step edge is an upper limit for the other checks: anchoring
  // and per-length steps only get harder as alpha grows, so walk down with
  // doubling strides until every check passes, then bisect the tick range.
  t0 = Clock::now();
  int probes = 0;
  auto pass = [&](const Rational& a) {
    ++probes;
    return full_predicate(t, cfg, res.truncated, weighted, a).empty();
  };
  Rational alpha = sol.alpha;
  if (!pass(alpha)) {
    BigInt hi = ticks_of(alpha);  // known failing
    BigInt floor_tick = BigInt(kGrid) + 1;
    BigInt stride = 1000;  // one millionth
    BigInt lo = -1;
    BigInt probe_tick = hi;
    while (true) {
      probe_tick -= stride;
      if (probe_tick < floor_tick) probe_tick = floor_tick;
      if (pass(from_ticks(probe_tick))) {
        lo = probe_tick;
        break;
      }
      hi = probe_tick;
      if (probe_tick == floor_tick) break;
      stride *= 2;
    }
    if (lo < 0) {
      std::string why = full_predicate(t, cfg, res.truncated, weighted,
                                       from_ticks(floor_tick));
      res.diagnostic =
          "every rate above 1 fails an exact check: " + why;
      res.transcript.push_back("rate search: " + res.diagnostic);
      return res;
    }
    while (hi - lo > 1) {
      BigInt mid = (hi + lo) / 2;
      if (pass(from_ticks(mid)))
        lo = mid;
      else
        hi = mid;
    }
    alpha = from_ticks(lo);
  }
  res.transcript.push_back(
      fmt("rate search: settled at alpha=%.9f after %d exact probes (%.1fs)",
          rational_to_double(alpha), probes, seconds_since(t0)));

  OmegaDump dump = make_omega_dump(t.pc.x_hat, t.zeta, t.xi, t.omega);
  res.built = build_certificate(cfg.k, cfg.m, cfg.p1, cfg.p2, cfg.n0,
                                res.truncated, t.pc.r_hat, t.pc.mu_hat,
                                t.pc.x_hat, t.cascade, t.q, alpha, weighted,
                                dump);
  res.feasible = true;
  res.transcript.push_back(
      fmt("certificate: %zu bytes plus %zu coefficient bytes, alpha=%s",
          res.built.cert_text.size(), res.built.omega_text.size(),
          rational_text(alpha).c_str()));
  return res;
}

}  // namespace dejean
