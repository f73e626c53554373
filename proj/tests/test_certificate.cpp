#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <string>
#include <vector>

#include "dejean/cascade.hpp"
#include "dejean/certificate.hpp"
#include "dejean/corrections.hpp"
#include "dejean/counting.hpp"
#include "dejean/spectral.hpp"
#include "dejean/support.hpp"
#include "dejean/verifier.hpp"

using namespace dejean;

namespace {

Guard big() { return Guard(4'000'000'000ull, 900.0); }

// Real tables at k=5, m=6 with periods 6..11 enumerated and 12..13
// path-counted; used for serialization round-trips and for a certificate
// that walks every replay stage before failing the final inequality.
struct Fix {
  ClassGraph g;
  PerronCertificate pc;
  ClassCounts counts;  // exact class counts up to length 12
  std::vector<ZetaRow> rows;
  std::map<int, std::vector<Rational>> xi;
  OmegaTable omega;
  CascadeResult cascade;
  BuiltCertificate real;  // p2 = 13, alpha = 11/10, fails only the final step
};

const Fix& fix() {
  static const Fix f = [] {
    Fix x;
    Guard g1 = big();
    x.g = build_core_class_graph(5, 6, g1);
    x.pc = certify_growth(x.g);
    Guard g2 = big();
    x.counts = count_minrep_by_class(x.g, 12, g2, 1);

    for (int j = 6; j <= 11; ++j)
      for (int base = 0; base < static_cast<int>(x.g.s()); ++base) {
        Guard gz = big();
        x.rows.push_back(enumerate_period_contexts(x.g, j, base, gz));
      }
    auto eta = eta_prime_table(x.g, 11, x.rows, x.pc.x_hat);

    LiftRows lift(x.g);
    std::vector<std::vector<std::uint64_t>> fwd, scratch;
    for (std::size_t l = 0; l < x.g.s(); ++l) {
      fwd.push_back(lift.unit_row(static_cast<int>(l)));
      scratch.push_back(std::vector<std::uint64_t>());
    }
    for (int step = 0; step < 12; ++step)
      for (std::size_t l = 0; l < x.g.s(); ++l)
        lift.step_forward(fwd[l], scratch[l]);
    std::vector<RowView> views(x.g.s());
    for (std::size_t l = 0; l < x.g.s(); ++l) views[l].exact = &fwd[l];
    x.xi[12] = xi_weak_small(lift, 12, x.pc.x_hat, views);
    for (std::size_t l = 0; l < x.g.s(); ++l) lift.step_forward(fwd[l], scratch[l]);
    x.xi[13] = xi_weak_small(lift, 13, x.pc.x_hat, views);

    x.omega = assemble_omega(5, 6, 6, 11, 13, x.g.s(), eta, x.xi);
    x.cascade = rho_cascade(x.g, x.omega, x.pc.x_hat);

    OmegaDump dump = make_omega_dump(x.pc.x_hat, x.rows, x.xi, x.omega);
    std::vector<Rational> base;
    for (int n = 6; n <= 12; ++n) base.push_back(x.counts.weighted(n, x.pc.x_hat));
    x.real = build_certificate(5, 6, 11, 13, 12, true, x.pc.r_hat, x.pc.mu_hat,
                               x.pc.x_hat, x.cascade, tail_exponent(5, 13),
                               Rational(11, 10), base, dump);
    return x;
  }();
  return f;
}

// A certificate over the real k=5 graph whose correction measurements are
// all zero: every context count and every weak-period coefficient vanishes,
// so the damping polynomial is identically zero and feasibility reduces to
// the tail.  The verifier consumes measurements as committed data, so these
// certificates exercise the full accept path deterministically.
struct Zeroed {
  std::vector<Rational> x_hat;
  Rational r_hat, mu_hat, sum_x;
  CascadeResult cascade;
  OmegaDump dump;
  int q = 0;
};

Zeroed zeroed_tables() {
  const Fix& f = fix();
  Zeroed z;
  z.x_hat = f.pc.x_hat;
  z.r_hat = f.pc.r_hat;
  z.mu_hat = f.pc.mu_hat;
  for (const Rational& x : z.x_hat) z.sum_x += x;

  std::map<int, std::vector<Rational>> eta;
  for (int j = 6; j <= 11; ++j)
    eta[period_geometry(5, 6, j).d_exact] =
        std::vector<Rational>(f.g.s(), Rational(0));
  std::map<int, std::vector<Rational>> xi;
  for (int j = 12; j <= 400; ++j)
    xi[j] = std::vector<Rational>(f.g.s(), Rational(0));
  OmegaTable omega = assemble_omega(5, 6, 6, 11, 400, f.g.s(), eta, xi);
  z.cascade = rho_cascade(f.g, omega, z.x_hat);
  z.dump = make_omega_dump(z.x_hat, {}, xi, omega);
  z.q = tail_exponent(5, 400);
  return z;
}

VerifyReport run(const std::string& cert, const std::string& dump) {
  Guard g = big();
  return verify_certificate(cert, dump, g);
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t nl = text.find('\n', start);
    out.push_back(text.substr(start, nl - start));
    start = nl + 1;
  }
  return out;
}

std::string join(const std::vector<std::string>& lines) {
  std::string out;
  for (const auto& l : lines) {
    out += l;
    out += '\n';
  }
  return out;
}

bool mentions(const std::string& text, const std::string& needle) {
  return text.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("certificate and dump serialization round-trip byte for byte") {
  const Fix& f = fix();
  Certificate parsed = parse_certificate(f.real.cert_text);
  CHECK(certificate_text(parsed) == f.real.cert_text);
  CHECK(parsed.k == 5);
  CHECK(parsed.n0 == 12);
  CHECK(parsed.truncated);
  CHECK(parsed.alpha == Rational(11, 10));
  CHECK(parsed.rho.size() == f.cascade.rho_min.size());

  OmegaDump dump = parse_omega_dump(f.real.omega_text);
  CHECK(omega_dump_text(dump) == f.real.omega_text);
  CHECK(dump.x_hat == f.pc.x_hat);

  // Rebuilding twice gives identical bytes.
  OmegaDump again = make_omega_dump(f.pc.x_hat, f.rows, f.xi, f.omega);
  CHECK(omega_dump_text(again) == f.real.omega_text);
}

TEST_CASE("dump reconstruction inverts the committed tables") {
  const Fix& f = fix();
  OmegaDump dump = parse_omega_dump(f.real.omega_text);

  std::vector<ZetaRow> rebuilt = zeta_rows_from_dump(dump, 6, 11, f.g.s());
  REQUIRE(rebuilt.size() == f.rows.size());
  for (std::size_t i = 0; i < rebuilt.size(); ++i) {
    CHECK(rebuilt[i].j == f.rows[i].j);
    CHECK(rebuilt[i].base == f.rows[i].base);
    CHECK(rebuilt[i].by_prefix_class == f.rows[i].by_prefix_class);
    CHECK(rebuilt[i].context_count == f.rows[i].context_count);
  }

  auto xi = xi_from_dump(dump, 11, 13, f.g.s());
  CHECK(xi == f.xi);

  CHECK(dump.omega_a == f.omega.a);
  REQUIRE(dump.omega.size() ==
          static_cast<std::size_t>(f.omega.b - f.omega.a + 1));
  for (int d = f.omega.a; d <= f.omega.b; ++d)
    CHECK(dump.omega[static_cast<std::size_t>(d - f.omega.a)] == f.omega.at(d));
}

TEST_CASE("certificate hash commits to the dump bytes") {
  const Fix& f = fix();
  CHECK(f.real.cert.omega_hash == Sha256::of(f.real.omega_text));
  CHECK(mentions(f.real.cert_text, "HASH omega " + f.real.cert.omega_hash));
}

TEST_CASE("malformed certificate texts are rejected") {
  const Fix& f = fix();
  const std::string& good = f.real.cert_text;

  // Parses cleanly as written.
  CHECK_NOTHROW(parse_certificate(good));

  std::string no_newline = good.substr(0, good.size() - 1);
  CHECK_THROWS_AS(parse_certificate(no_newline), VerifyError);

  auto ls = lines_of(good);
  REQUIRE(ls.size() > 6);
  {
    auto swapped = ls;
    std::swap(swapped[1], swapped[2]);  // MODE and R out of order
    CHECK_THROWS_AS(parse_certificate(join(swapped)), VerifyError);
  }
  {
    auto dup = ls;
    dup.insert(dup.begin() + 4, ls[4]);  // repeat the first weight line
    CHECK_THROWS_AS(parse_certificate(join(dup)), VerifyError);
  }
  {
    auto gap = ls;
    for (std::size_t i = 0; i < gap.size(); ++i)
      if (gap[i].rfind("RHO ", 0) == 0) {
        gap.erase(gap.begin() + static_cast<long>(i) + 1);
        break;
      }
    CHECK_THROWS_AS(parse_certificate(join(gap)), VerifyError);
  }
  {
    auto gap = ls;
    for (std::size_t i = 0; i < gap.size(); ++i)
      if (gap[i].rfind("BASE ", 0) == 0) {
        gap.erase(gap.begin() + static_cast<long>(i) + 1);
        break;
      }
    CHECK_THROWS_AS(parse_certificate(join(gap)), VerifyError);
  }
  CHECK_THROWS_AS(parse_certificate(good + "JUNK 1\n"), VerifyError);
  {
    auto zeros = ls;
    zeros[0] = "PARAM 05 6 11 13 12";  // leading zero
    CHECK_THROWS_AS(parse_certificate(join(zeros)), VerifyError);
  }
  {
    auto hex = ls;
    REQUIRE(hex.back().rfind("HASH omega ", 0) == 0);
    hex.back().back() = 'x';
    CHECK_THROWS_AS(parse_certificate(join(hex)), VerifyError);
    hex.back() = hex.back().substr(0, hex.back().size() - 2);
    CHECK_THROWS_AS(parse_certificate(join(hex)), VerifyError);
  }
  {
    auto spaced = ls;
    spaced[0] += " ";  // trailing blank field
    CHECK_THROWS_AS(parse_certificate(join(spaced)), VerifyError);
  }
}

TEST_CASE("malformed dump texts are rejected") {
  const Fix& f = fix();
  const std::string& good = f.real.omega_text;
  CHECK_NOTHROW(parse_omega_dump(good));

  auto ls = lines_of(good);
  std::size_t first_zeta = 0;
  while (first_zeta < ls.size() && ls[first_zeta].rfind("ZETA ", 0) != 0)
    ++first_zeta;
  REQUIRE(first_zeta + 1 < ls.size());
  REQUIRE(ls[first_zeta + 1].rfind("ZETA ", 0) == 0);
  {
    auto swapped = ls;
    std::swap(swapped[first_zeta], swapped[first_zeta + 1]);
    CHECK_THROWS_AS(parse_omega_dump(join(swapped)), VerifyError);
  }
  {
    // Dropping one weak-period line breaks the exact-coverage rebuild.
    auto missing = ls;
    for (std::size_t i = 0; i < missing.size(); ++i)
      if (missing[i].rfind("XI ", 0) == 0) {
        missing.erase(missing.begin() + static_cast<long>(i));
        break;
      }
    OmegaDump d = parse_omega_dump(join(missing));
    CHECK_THROWS_AS(xi_from_dump(d, 11, 13, f.g.s()), VerifyError);
  }

  CHECK_THROWS_AS(
      parse_omega_dump("XHAT 0 1/1\nXHAT 1 1/1\nZETA 8 0 0 0\n"), VerifyError);
  CHECK_THROWS_AS(
      parse_omega_dump("XHAT 0 1/1\nXHAT 1 1/1\nXI 12 0 -1/2\nXI 12 1 1/2\n"),
      VerifyError);
  // A completed shift row cannot take an extra entry.
  CHECK_THROWS_AS(parse_omega_dump("XHAT 0 1/1\nXHAT 1 1/1\nOMEGA 2 0 1/2\n"
                                   "OMEGA 2 1 1/2\nOMEGA 2 0 1/2\n"),
                  VerifyError);

  OmegaDump small = parse_omega_dump(
      "XHAT 0 1/1\nXHAT 1 1/1\nOMEGA 2 0 1/2\nOMEGA 2 1 1/3\n"
      "OMEGA 3 0 0/1\nOMEGA 3 1 2/1\n");
  CHECK(small.omega_a == 2);
  REQUIRE(small.omega.size() == 2);
  CHECK(small.omega[0] == std::vector<Rational>{Rational(1, 2), Rational(1, 3)});
  CHECK(small.omega[1] == std::vector<Rational>{Rational(0), Rational(2)});
}

TEST_CASE("verifier walks the full replay and rejects an infeasible rate") {
  const Fix& f = fix();
  VerifyReport rep = run(f.real.cert_text, f.real.omega_text);
  CHECK_FALSE(rep.accepted);
  CHECK(mentions(rep.failure, "final step inequality"));
  // Every stage before the final inequality replayed cleanly.
  bool saw_cascade = false, saw_corrections = false;
  for (const auto& line : rep.transcript) {
    saw_cascade = saw_cascade || mentions(line, "cascade: replay matches");
    saw_corrections =
        saw_corrections || mentions(line, "corrections: reassembled band");
  }
  CHECK(saw_cascade);
  CHECK(saw_corrections);
  CHECK(mentions(rep.transcript.back(), "REJECTED"));
}

TEST_CASE("verifier accepts a certificate anchored on exact counts") {
  const Fix& f = fix();
  Zeroed z = zeroed_tables();

  std::vector<Rational> base;
  for (int n = 6; n <= 12; ++n) base.push_back(f.counts.weighted(n, f.pc.x_hat));
  BuiltCertificate bc = build_certificate(
      5, 6, 11, 400, 12, true, z.r_hat, z.mu_hat, z.x_hat, z.cascade, z.q,
      Rational(227, 200), base, z.dump);

  VerifyReport rep = run(bc.cert_text, bc.omega_text);
  INFO(rep.failure);
  REQUIRE(rep.accepted);
  CHECK(rep.transcript.back() == "accepted");
  bool saw_gaps = false;
  for (const auto& line : rep.transcript)
    saw_gaps = saw_gaps || mentions(line, "mode truncated:");
  CHECK(saw_gaps);
}

TEST_CASE("verifier accepts at the feasibility edge and rejects every tamper") {
  const Fix& f = fix();
  Zeroed z = zeroed_tables();

  AlphaSolveResult sol = solve_alpha(z.r_hat, z.cascade, z.mu_hat, z.q);
  REQUIRE(sol.feasible);
  CHECK(sol.alpha > 1);
  CHECK(sol.alpha < z.r_hat);

  Rational s6 = Rational(BigInt(factorial(5))) * z.sum_x;
  std::vector<Rational> base;
  Rational cur = s6;
  for (int n = 6; n <= 28; ++n) {
    base.push_back(cur);
    cur *= 2;
  }
  BuiltCertificate bc =
      build_certificate(5, 6, 11, 400, 28, true, z.r_hat, z.mu_hat, z.x_hat,
                        z.cascade, z.q, sol.alpha, base, z.dump);

  VerifyReport ok = run(bc.cert_text, bc.omega_text);
  INFO(ok.failure);
  REQUIRE(ok.accepted);

  Certificate c = bc.cert;

  {
    Certificate t = c;
    t.alpha += Rational(1, 1000000);
    VerifyReport rep = run(certificate_text(t), bc.omega_text);
    CHECK_FALSE(rep.accepted);
    CHECK(mentions(rep.failure, "final step inequality"));
  }
  {
    Certificate t = c;
    t.rho[5] -= Rational(1, 1000);
    VerifyReport rep = run(certificate_text(t), bc.omega_text);
    CHECK_FALSE(rep.accepted);
    CHECK(mentions(rep.failure, "damping coefficient differs"));
  }
  {
    Certificate t = c;
    t.x_hat[1] *= 2;
    VerifyReport rep = run(certificate_text(t), bc.omega_text);
    CHECK_FALSE(rep.accepted);
    CHECK(mentions(rep.failure, "weight vector"));
  }
  {
    Certificate t = c;
    t.mu_hat = Rational(1);
    VerifyReport rep = run(certificate_text(t), bc.omega_text);
    CHECK_FALSE(rep.accepted);
    CHECK(mentions(rep.failure, "tail ratio"));
  }
  {
    Certificate t = c;
    t.q = z.q - 1;
    VerifyReport rep = run(certificate_text(t), bc.omega_text);
    CHECK_FALSE(rep.accepted);
    CHECK(mentions(rep.failure, "tail exponent"));
  }
  {
    Certificate t = c;
    for (Rational& b : t.base) b *= 2;
    VerifyReport rep = run(certificate_text(t), bc.omega_text);
    CHECK_FALSE(rep.accepted);
    CHECK(mentions(rep.failure, "off scale"));
  }
  {
    Certificate t = c;
    t.truncated = false;
    VerifyReport rep = run(certificate_text(t), bc.omega_text);
    CHECK_FALSE(rep.accepted);
    CHECK(mentions(rep.failure, "anchor length is below"));
  }
  {
    // One flipped digit inside the dump breaks the hash binding.
    std::string dump = bc.omega_text;
    std::size_t pos = dump.find("XI 12 0 0/1");
    REQUIRE(pos != std::string::npos);
    dump[pos + 8] = '1';
    VerifyReport rep = run(bc.cert_text, dump);
    CHECK_FALSE(rep.accepted);
    CHECK(mentions(rep.failure, "hash"));
  }
}

TEST_CASE("verifier accepts a window-covering anchor certificate") {
  const Fix& f = fix();
  Zeroed z = zeroed_tables();

  AlphaSolveResult sol = solve_alpha(z.r_hat, z.cascade, z.mu_hat, z.q);
  REQUIRE(sol.feasible);

  // Anchor long enough to cover both the declared period range
  // (floor(5*400/4) = 500) and the end of the correction band (6 + 494), so
  // the certificate needs no per-length gap steps at all.
  const int n0 = 500;
  Rational s6 = Rational(BigInt(factorial(5))) * z.sum_x;
  std::vector<Rational> base;
  Rational cur = s6;
  for (int n = 6; n <= n0; ++n) {
    base.push_back(cur);
    cur *= 2;
  }
  BuiltCertificate bc =
      build_certificate(5, 6, 11, 400, n0, false, z.r_hat, z.mu_hat, z.x_hat,
                        z.cascade, z.q, sol.alpha, base, z.dump);

  VerifyReport ok = run(bc.cert_text, bc.omega_text);
  INFO(ok.failure);
  REQUIRE(ok.accepted);
  CHECK(ok.transcript.back() == "accepted");
  bool saw_default = false;
  for (const auto& line : ok.transcript)
    saw_default =
        saw_default || mentions(line, "mode default: band covered by anchor");
  CHECK(saw_default);

  // Shrinking the anchor by one length reopens the band and flips the mode
  // requirement.
  std::vector<Rational> short_base(base.begin(), base.end() - 1);
  BuiltCertificate shorter = build_certificate(
      5, 6, 11, 400, n0 - 1, false, z.r_hat, z.mu_hat, z.x_hat, z.cascade,
      z.q, sol.alpha, short_base, z.dump);
  VerifyReport rep = run(shorter.cert_text, shorter.omega_text);
  CHECK_FALSE(rep.accepted);
  CHECK(mentions(rep.failure, "anchor length is below"));
}
