// Acceptance harness: one line per criterion, printed as the criteria run.
//
// Exit status is 0 exactly when every criterion matches its documented
// expectation: criteria 1-4 and 6-8 pass, and criterion 5 splits into the
// anchor-covering run (expected to fail: covering the geometric tail forces
// exact counts far beyond desk scale, see the line it prints) plus the
// truncated-mode substitute run (expected to pass).  Any deviation from that
// pattern - including the expected failure unexpectedly passing - exits
// nonzero.
#include <unistd.h>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "dejean/cascade.hpp"
#include "dejean/certificate.hpp"
#include "dejean/corrections.hpp"
#include "dejean/counting.hpp"
#include "dejean/language_graph.hpp"
#include "dejean/pipeline.hpp"
#include "dejean/spectral.hpp"
#include "dejean/support.hpp"
#include "dejean/verifier.hpp"
#include "dejean/words.hpp"

using namespace dejean;
namespace fs = std::filesystem;

namespace {

Guard big() { return Guard(8'000'000'000ull, 3000.0); }

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

// Collects the failures of one criterion; empty list = pass.
struct Check {
  std::vector<std::string> failures;
  void expect(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
  bool pass() const { return failures.empty(); }
  std::string detail(const std::string& on_pass) const {
    if (pass()) return on_pass;
    std::string out = failures.front();
    if (failures.size() > 1)
      out += " (+" + std::to_string(failures.size() - 1) + " more)";
    return out;
  }
};

void print_line(const std::string& label, bool pass, bool expected_pass,
                const std::string& detail) {
  std::string verdict = pass ? "PASS" : "FAIL";
  if (!pass && !expected_pass) verdict = "FAIL (expected)";
  if (pass && !expected_pass) verdict = "PASS (unexpected)";
  std::printf("%s: %s - %s\n", label.c_str(), verdict.c_str(),
              detail.c_str());
  std::fflush(stdout);
}

// ---------------------------------------------------------------- criterion 1

bool criterion1() {
  Check c;
  std::string extended;
  try {
    const std::vector<std::tuple<int, int, std::size_t>> gating = {
        {8, 18, 31}, {9, 20, 42}, {10, 22, 55}};
    for (auto [k, m, s] : gating) {
      Guard gd = big();
      std::size_t got = build_core_class_graph(k, m, gd).s();
      c.expect(got == s, "class count at (" + std::to_string(k) + "," +
                             std::to_string(m) + ") is " +
                             std::to_string(got) + ", required " +
                             std::to_string(s));
    }
    // Extended rows, optional and not gating.
    Guard gd = big();
    std::size_t s728 = build_core_class_graph(7, 28, gd).s();
    std::size_t s633 = build_core_class_graph(6, 33, gd).s();
    std::size_t s636 = build_core_class_graph(6, 36, gd).s();
    extended = "; extended: (7,28)=" + std::to_string(s728) +
               ", (6,33)=" + std::to_string(s633) +
               " [reference table prints 1926 beside window 33; this "
               "construction, which matches every other row exactly, reaches "
               "1926 at window 36: (6,36)=" +
               std::to_string(s636) + "]";
  } catch (const std::exception& e) {
    c.expect(false, std::string("exception: ") + e.what());
  }
  print_line("criterion 1", c.pass(), true,
             c.detail("core class counts 31/42/55 at (8,18)/(9,20)/(10,22)") +
                 extended);
  return c.pass();
}

// ---------------------------------------------------------------- criterion 2

bool criterion2() {
  Check c;
  try {
    for (int k = 5; k <= 10; ++k) {
      Guard g1 = big();
      Guard g2 = big();
      std::vector<BigInt> fast = count_dejean_exact(k, 10, g1, 2);
      std::vector<BigInt> slow = count_dejean_naive(k, 10, g2);
      c.expect(fast.size() == slow.size() && fast.size() == 10,
               "length mismatch at k=" + std::to_string(k));
      for (std::size_t i = 0; i < fast.size() && i < slow.size(); ++i)
        c.expect(fast[i] == slow[i],
                 "count differs at k=" + std::to_string(k) +
                     ", n=" + std::to_string(i + 1) + ": accelerated " +
                     fast[i].get_str() + " vs naive " + slow[i].get_str());
      if (k == 5) {
        const long prefix[] = {5, 20, 60, 120, 240};
        for (std::size_t i = 0; i < 5; ++i)
          c.expect(slow[i] == prefix[i],
                   "five-letter sequence does not begin 5,20,60,120,240");
      }
    }
  } catch (const std::exception& e) {
    c.expect(false, std::string("exception: ") + e.what());
  }
  print_line("criterion 2", c.pass(), true,
             c.detail("accelerated counts equal the naive filter for k=5..10 "
                      "up to length 10; five-letter counts begin "
                      "5,20,60,120,240"));
  return c.pass();
}

// ---------------------------------------------------------------- criterion 3

// Word-level path oracle: words of length m+t whose first window is start,
// every window lies in the given set, and consecutive windows merge into an
// admissible (m+1)-letter word.  Grouped by final window.
std::map<Word, std::uint64_t> walk_words(const std::set<Word>& windows,
                                         const Word& start, int k, int t) {
  std::map<Word, std::uint64_t> out;
  Word w = start;
  std::size_t m = start.size();
  std::function<void(int)> rec = [&](int left) {
    if (left == 0) {
      ++out[w.substr(w.size() - m)];
      return;
    }
    for (int ch = 0; ch < k; ++ch) {
      Word lastwin = w.substr(w.size() - m);
      Word win = lastwin.substr(1);
      win.push_back(static_cast<char>(ch));
      if (windows.count(win) &&
          extension_safe(lastwin, static_cast<Letter>(ch), k)) {
        w.push_back(static_cast<char>(ch));
        rec(left - 1);
        w.pop_back();
      }
    }
  };
  rec(t);
  return out;
}

bool criterion3() {
  Check c;
  std::size_t compared = 0;
  try {
    Guard gd = big();
    ClassGraph g = build_core_class_graph(5, 6, gd);
    Guard gw = big();
    auto words = core_window_words(5, 6, gw);
    std::set<Word> windows(words.begin(), words.end());
    LiftRows rows(g);
    for (std::size_t c0 = 0; c0 < g.s(); ++c0) {
      std::vector<std::uint64_t> row = rows.unit_row(static_cast<int>(c0));
      std::vector<std::uint64_t> scratch;
      for (int t = 1; t <= 5; ++t) {
        rows.step_forward(row, scratch);
        auto oracle = walk_words(windows, g.reps[c0], 5, t);
        std::uint64_t oracle_total = 0;
        for (auto& [w, n] : oracle) oracle_total += n;
        std::uint64_t row_total = 0;
        for (std::size_t d = 0; d < g.s(); ++d)
          for (std::uint32_t r = 0; r < rows.kfact(); ++r) {
            std::uint64_t v = row[rows.cell(static_cast<int>(d), r)];
            row_total += v;
            Word rendered = apply_perm(rows.perm_of_rank(r), g.reps[d]);
            auto it = oracle.find(rendered);
            std::uint64_t expect = it == oracle.end() ? 0 : it->second;
            if (v != expect)
              c.expect(false, "cell mismatch from class " +
                                  std::to_string(c0) + " after " +
                                  std::to_string(t) + " steps");
            ++compared;
          }
        c.expect(row_total == oracle_total,
                 "total mismatch from class " + std::to_string(c0) +
                     " after " + std::to_string(t) + " steps");
      }
    }
  } catch (const std::exception& e) {
    c.expect(false, std::string("exception: ") + e.what());
  }
  print_line(
      "criterion 3", c.pass(), true,
      c.detail("every voltage-lift path count equals the word-level oracle "
               "at (5,6) for all class/permutation cells, lengths up to 11 (" +
               std::to_string(compared) + " cells compared)"));
  return c.pass();
}

// ---------------------------------------------------------------- criterion 4

bool criterion4() {
  Check c;
  std::size_t inequalities = 0;
  try {
    Guard g1 = big();
    ClassGraph g = build_core_class_graph(5, 6, g1);
    PerronCertificate pc = certify_growth(g);
    Guard g2 = big();
    ClassCounts counts = count_minrep_by_class(g, 24, g2, 2);

    std::vector<ZetaRow> zeta;
    for (int j = 6; j <= 15; ++j)
      for (int base = 0; base < static_cast<int>(g.s()); ++base) {
        Guard gz = big();
        zeta.push_back(enumerate_period_contexts(g, j, base, gz));
      }

    std::map<int, std::map<int, std::vector<BigInt>>> violations;
    for (int n = 8; n <= 20; ++n) {
      Guard gv = big();
      violations[n] = enumerate_violations_by_period(g, n, gv);
    }
    auto exact_h = [&](int n, int j, int i) {
      auto it = violations.at(n).find(j);
      if (it == violations.at(n).end()) return BigInt(0);
      return it->second[static_cast<std::size_t>(i)];
    };
    auto weighted_exact = [&](int n, int j) {
      Rational acc(0);
      for (std::size_t i = 0; i < g.s(); ++i)
        acc += pc.x_hat[i] * Rational(exact_h(n, j, static_cast<int>(i)));
      return acc;
    };
    auto weighted_eq6 = [&](int n, int j) {
      const int d = period_geometry(5, 6, j).d_exact;
      Rational acc(0);
      for (const ZetaRow& row : zeta) {
        if (row.j != j) continue;
        for (std::size_t l = 0; l < g.s(); ++l)
          if (row.by_prefix_class[l] != 0)
            acc += pc.x_hat[static_cast<std::size_t>(row.base)] *
                   Rational(row.by_prefix_class[l]) *
                   Rational(counts.at_length(n - d)[l]);
      }
      return acc;
    };
    auto weighted_from_xi = [&](int n, int j, const std::vector<Rational>& xi) {
      const int d = period_geometry(5, 6, j).d_weak;
      Rational acc(0);
      for (std::size_t l = 0; l < g.s(); ++l)
        if (xi[l] != 0) acc += xi[l] * Rational(counts.at_length(n - d)[l]);
      return acc;
    };

    // Exact violation counts never exceed the enumerated-context bound,
    // per period and suffix class.
    bool saw_nonzero = false;
    for (int j = 6; j <= 11; ++j) {
      const PeriodGeometry geo = period_geometry(5, 6, j);
      for (int n = geo.h_len; n <= 20; ++n)
        for (const ZetaRow& row : zeta) {
          if (row.j != j) continue;
          Rational bound(0);
          for (std::size_t l = 0; l < g.s(); ++l)
            if (row.by_prefix_class[l] != 0)
              bound += Rational(row.by_prefix_class[l]) *
                       Rational(counts.at_length(n - geo.d_exact)[l]);
          BigInt exact = exact_h(n, j, row.base);
          c.expect(Rational(exact) <= bound,
                   "context bound fails at j=" + std::to_string(j) +
                       ", n=" + std::to_string(n));
          ++inequalities;
          if (exact > 0) saw_nonzero = true;
        }
    }
    c.expect(saw_nonzero, "no nonzero violation was exercised");

    // Short-overhang path-count bound dominates the enumerated-context
    // bound, which dominates the exact count.
    LiftRows lift(g);
    auto fwd_rows = [&](int power) {
      std::vector<std::vector<std::uint64_t>> rows;
      std::vector<std::uint64_t> scratch(lift.cells());
      for (std::size_t l = 0; l < g.s(); ++l) {
        rows.push_back(lift.unit_row(static_cast<int>(l)));
        for (int step = 0; step < power; ++step)
          lift.step_forward(rows.back(), scratch);
      }
      return rows;
    };
    auto bwd_rows = [&](int power) {
      std::vector<std::vector<std::uint64_t>> rows;
      std::vector<std::uint64_t> scratch(lift.cells());
      for (std::size_t l = 0; l < g.s(); ++l) {
        rows.push_back(lift.unit_row(static_cast<int>(l)));
        for (int step = 0; step < power; ++step)
          lift.step_backward(rows.back(), scratch);
      }
      return rows;
    };
    auto views = [&](const std::vector<std::vector<std::uint64_t>>& r) {
      std::vector<RowView> v(r.size());
      for (std::size_t i = 0; i < r.size(); ++i) v[i].exact = &r[i];
      return v;
    };
    for (int j = 12; j <= 15; ++j) {
      const PeriodGeometry geo = period_geometry(5, 6, j);
      auto rows = fwd_rows(j);
      auto xi = xi_weak_small(lift, j, pc.x_hat, views(rows));
      for (int n = std::max(geo.h_len, j + 5); n <= 20; ++n) {
        Rational exact = weighted_exact(n, j);
        Rational eq6 = weighted_eq6(n, j);
        Rational eq7 = weighted_from_xi(n, j, xi);
        c.expect(exact <= eq6, "exact exceeds the context bound at j=" +
                                   std::to_string(j) +
                                   ", n=" + std::to_string(n));
        c.expect(eq6 <= eq7, "context bound exceeds the path bound at j=" +
                                 std::to_string(j) +
                                 ", n=" + std::to_string(n));
        inequalities += 2;
      }
    }

    // Wide-overhang periods (first prohibited run longer than 20 letters):
    // the backward-factor path bound still dominates.
    {
      Guard gv = big();
      auto v30 = enumerate_violations_by_period(g, 30, gv);
      Guard gv1 = big();
      auto v31 = enumerate_violations_by_period(g, 31, gv1);
      auto wexact = [&](const std::map<int, std::vector<BigInt>>& viol,
                        int j) {
        Rational acc(0);
        auto it = viol.find(j);
        if (it == viol.end()) return acc;
        for (std::size_t i = 0; i < g.s(); ++i)
          acc += pc.x_hat[i] * Rational(it->second[i]);
        return acc;
      };
      const PeriodGeometry geo = period_geometry(5, 6, 24);
      auto fr = fwd_rows(24 + 6 - geo.chi);
      auto br = bwd_rows(geo.chi - 6);
      auto xi = xi_weak_large(lift, 24, pc.x_hat, views(fr), views(br));
      c.expect(wexact(v30, 24) <= weighted_from_xi(30, 24, xi),
               "wide-overhang bound fails at j=24, n=30");
      c.expect(wexact(v31, 24) <= weighted_from_xi(31, 24, xi),
               "wide-overhang bound fails at j=24, n=31");
      inequalities += 2;
    }

    // Assembled correction table and its cascade majorize the exact losses
    // at every cutoff.
    std::vector<ZetaRow> zeta_exact;
    for (const ZetaRow& row : zeta)
      if (row.j <= 11) zeta_exact.push_back(row);
    std::map<int, std::vector<Rational>> eta =
        eta_prime_table(g, 11, zeta_exact, pc.x_hat);
    std::map<int, std::vector<Rational>> xi_tbl;
    {
      auto rows = fwd_rows(12);
      xi_tbl[12] = xi_weak_small(lift, 12, pc.x_hat, views(rows));
      rows = fwd_rows(13);
      xi_tbl[13] = xi_weak_small(lift, 13, pc.x_hat, views(rows));
    }
    OmegaTable omega = assemble_omega(5, 6, 6, 11, 13, g.s(), eta, xi_tbl);
    CascadeResult cascade = rho_cascade(g, omega, pc.x_hat);
    auto shift_of = [&](int j) {
      const PeriodGeometry geo = period_geometry(5, 6, j);
      return j <= 11 ? geo.d_exact : geo.d_weak;
    };
    for (int n = 18; n <= 20; ++n) {
      const auto& viol = violations.at(n);
      auto other = viol.find(0);
      bool clean = other == viol.end();
      if (!clean) {
        clean = true;
        for (const BigInt& cnt : other->second) clean = clean && cnt == 0;
      }
      c.expect(clean, "losses outside prohibited suffixes at n=" +
                          std::to_string(n));

      Rational lhs_all(0);
      for (int j = 6; j <= 13; ++j) lhs_all += weighted_exact(n, j);
      Rational rhs_rows(0);
      for (int d = omega.a; d <= omega.b; ++d) {
        const auto& row = omega.at(d);
        const auto& cnts = counts.at_length(n - d);
        for (std::size_t l = 0; l < row.size(); ++l)
          rhs_rows += row[l] * Rational(cnts[l]);
      }
      c.expect(lhs_all <= rhs_rows,
               "assembled rows fail to majorize at n=" + std::to_string(n));
      ++inequalities;

      for (int cutoff = cascade.a; cutoff <= cascade.b; ++cutoff) {
        Rational lhs(0);
        for (int j = 6; j <= 13; ++j)
          if (shift_of(j) <= cutoff) lhs += weighted_exact(n, j);
        Rational rhs(0);
        for (int d = cascade.a; d < cutoff; ++d)
          rhs += cascade.min_at(d) * counts.weighted(n - d, pc.x_hat);
        rhs += cascade.term_at(cutoff) * counts.weighted(n - cutoff, pc.x_hat);
        c.expect(lhs <= rhs, "cascade majorization fails at n=" +
                                 std::to_string(n) +
                                 ", cutoff=" + std::to_string(cutoff));
        ++inequalities;
      }
    }
  } catch (const std::exception& e) {
    c.expect(false, std::string("exception: ") + e.what());
  }
  print_line("criterion 4", c.pass(), true,
             c.detail("exact losses <= context bound <= path bound, and the "
                      "assembled cascade majorizes exact weighted counts at "
                      "every cutoff, all at (5,6), n <= 20 plus wide-overhang "
                      "legs (" +
                      std::to_string(inequalities) + " exact inequalities)"));
  return c.pass();
}

// ------------------------------------------------------- criteria 5 through 8

struct EndToEnd {
  bool as_stated_pass = false;
  std::string as_stated_detail;
  bool substitute_pass = false;
  std::string substitute_detail;
  PipelineResult run1;  // threads=1
  PipelineResult run2;  // threads=2
  bool have_runs = false;
};

EndToEnd run_criterion5() {
  EndToEnd r;

  // As stated: the tabulated range must satisfy floor(k*p2/(k-1)) <= n0, so
  // the anchor covers every per-length step.  Making the geometric tail
  // lighter than the expansion margin needs tail exponent q >= 26, i.e.
  // p2 >= 188, i.e. exact counts to length 214 - about 10^16 canonical
  // words.  The attempt below uses the largest anchor-covering instance
  // whose counting fits the guard; it fails honestly on the tail.
  try {
    PipelineConfig cfg;
    cfg.k = 8;
    cfg.m = 18;
    cfg.p1 = 41;
    cfg.p2 = 49;  // floor(8*49/7) = 56 <= n0, and band end 18+48 = 66 <= n0
    cfg.n0 = 66;
    cfg.threads = 2;
    PipelineResult res = run_pipeline(cfg);
    if (res.feasible) {
      bool default_mode = !res.truncated;
      r.as_stated_pass = default_mode;
      r.as_stated_detail =
          "anchor-covering run unexpectedly produced a certificate at "
          "alpha=" +
          rational_text(res.built.cert.alpha);
    } else {
      r.as_stated_pass = false;
      r.as_stated_detail =
          "anchor coverage needs tail exponent q >= 26, hence p2 >= 188 and "
          "exact counts to length floor(8*p2/7) >= 214 (~10^16 canonical "
          "words); largest countable anchor-covering instance "
          "(p1=41, p2=49, n0=66) reports: " +
          res.diagnostic;
    }
  } catch (const std::exception& e) {
    r.as_stated_detail = std::string("exception: ") + e.what();
  }

  // Substitute documented by the criterion: the reduced-parameter certified
  // run in truncated mode, plus criteria 3-4 above.
  try {
    fs::path base = fs::temp_directory_path() /
                    ("dejean-acceptance-" + std::to_string(::getpid()));
    fs::remove_all(base);
    PipelineConfig cfg;
    cfg.k = 8;
    cfg.m = 18;
    cfg.p1 = 41;
    cfg.p2 = 400;
    cfg.n0 = 56;
    cfg.rounded_rows = true;
    cfg.guard_nodes = 40'000'000'000ull;
    cfg.guard_seconds = 3000.0;

    auto t0 = std::chrono::steady_clock::now();
    cfg.threads = 1;
    cfg.cache_dir = (base / "cache-t1").string();
    r.run1 = run_pipeline(cfg);
    double sec1 = seconds_since(t0);

    t0 = std::chrono::steady_clock::now();
    cfg.threads = 2;
    cfg.cache_dir = (base / "cache-t2").string();
    r.run2 = run_pipeline(cfg);
    double sec2 = seconds_since(t0);
    r.have_runs = true;
    fs::remove_all(base);

    Check c;
    c.expect(r.run1.feasible, "single-thread run infeasible: " +
                                  r.run1.diagnostic);
    c.expect(r.run2.feasible, "two-thread run infeasible: " +
                                  r.run2.diagnostic);
    if (r.run1.feasible) {
      const Rational& alpha = r.run1.built.cert.alpha;
      c.expect(alpha > 1, "alpha is not above 1");
      c.expect(alpha <= Rational(1234843, 1000000),
               "alpha exceeds the reference upper bound 1.234843");
      Guard gv = big();
      VerifyReport rep = verify_certificate(r.run1.built.cert_text,
                                            r.run1.built.omega_text, gv);
      c.expect(rep.accepted, "verifier rejected: " + rep.failure);
      c.expect(sec1 + sec2 < 3600.0, "runtime exceeded one hour");
      if (c.pass()) {
        char buf[160];
        std::snprintf(buf, sizeof buf,
                      "truncated run (p1=41, p2=400, n0=56) certified "
                      "alpha=%.9f in %.0fs; verifier accepted",
                      rational_to_double(alpha), sec1);
        r.substitute_detail = buf;
      }
    }
    r.substitute_pass = c.pass();
    if (!c.pass()) r.substitute_detail = c.detail("");
  } catch (const std::exception& e) {
    r.substitute_pass = false;
    r.substitute_detail = std::string("exception: ") + e.what();
  }
  return r;
}

bool criterion6(const EndToEnd& e) {
  Check c;
  try {
    if (!e.have_runs || !e.run1.feasible) {
      c.expect(false, "no certificate available from criterion 5");
    } else {
      Guard gd = big();
      Rational upper = upper_bound_growth(8, 18, gd);
      Rational slack(1, 1000000000);
      c.expect(e.run1.built.cert.alpha <= upper + slack,
               "single-thread alpha exceeds upper bound");
      if (e.run2.feasible)
        c.expect(e.run2.built.cert.alpha <= upper + slack,
                 "two-thread alpha exceeds upper bound");
      if (c.pass()) {
        char buf[120];
        std::snprintf(buf, sizeof buf,
                      "every emitted alpha (%.9f) is at most the transfer "
                      "upper bound %.9f + 1e-9",
                      rational_to_double(e.run1.built.cert.alpha),
                      rational_to_double(upper));
        print_line("criterion 6", true, true, buf);
        return true;
      }
    }
  } catch (const std::exception& ex) {
    c.expect(false, std::string("exception: ") + ex.what());
  }
  print_line("criterion 6", c.pass(), true, c.detail(""));
  return c.pass();
}

bool criterion7(const EndToEnd& e) {
  Check c;
  try {
    if (!e.have_runs || !e.run1.feasible) {
      c.expect(false, "no certificate available from criterion 5");
    } else {
      const std::string& dump = e.run1.built.omega_text;
      const Certificate& orig = e.run1.built.cert;
      auto rejects = [&](const Certificate& t, const std::string& label) {
        Guard gd = big();
        VerifyReport rep = verify_certificate(certificate_text(t), dump, gd);
        c.expect(!rep.accepted, label + " was not rejected");
      };
      {
        Certificate t = orig;
        t.alpha += Rational(1, 1000000);
        rejects(t, "raised rate (alpha + 1e-6)");
      }
      {
        Certificate t = orig;
        t.rho[t.rho.size() / 2] -= Rational(1, 1000000);
        rejects(t, "lowered damping coefficient");
      }
      {
        Certificate t = orig;
        t.x_hat[1] *= 2;
        rejects(t, "scaled weight entry");
      }
    }
  } catch (const std::exception& ex) {
    c.expect(false, std::string("exception: ") + ex.what());
  }
  print_line("criterion 7", c.pass(), true,
             c.detail("raised rate, lowered damping coefficient, and scaled "
                      "weight entry are each rejected"));
  return c.pass();
}

bool criterion8(const EndToEnd& e) {
  Check c;
  std::string sizes;
  try {
    if (!e.have_runs || !e.run1.feasible || !e.run2.feasible) {
      c.expect(false, "criterion 5 did not produce both runs");
    } else {
      c.expect(e.run1.built.cert_text == e.run2.built.cert_text,
               "certificates differ between 1-thread and 2-thread runs");
      c.expect(e.run1.built.omega_text == e.run2.built.omega_text,
               "coefficient dumps differ between 1-thread and 2-thread runs");
      sizes = " (" + std::to_string(e.run1.built.cert_text.size()) +
              " certificate bytes, " +
              std::to_string(e.run1.built.omega_text.size()) +
              " coefficient bytes)";
    }
  } catch (const std::exception& ex) {
    c.expect(false, std::string("exception: ") + ex.what());
  }
  print_line("criterion 8", c.pass(), true,
             c.detail("1-thread and 2-thread runs emit byte-identical "
                      "certificates and dumps") +
                 sizes);
  return c.pass();
}

}  // namespace

int main() {
  bool ok1 = criterion1();
  bool ok2 = criterion2();
  bool ok3 = criterion3();
  bool ok4 = criterion4();

  EndToEnd e = run_criterion5();
  print_line("criterion 5", e.as_stated_pass, false, e.as_stated_detail);
  print_line("criterion 5 (substitute)", e.substitute_pass, true,
             e.substitute_detail);
  bool ok6 = criterion6(e);
  bool ok7 = criterion7(e);
  bool ok8 = criterion8(e);

  bool expected = ok1 && ok2 && ok3 && ok4 && !e.as_stated_pass &&
                  e.substitute_pass && ok6 && ok7 && ok8;
  std::printf("%s\n",
              expected
                  ? "acceptance: all criteria match their documented "
                    "expectations"
                  : "acceptance: DEVIATION from the documented expectations");
  return expected ? 0 : 1;
}
