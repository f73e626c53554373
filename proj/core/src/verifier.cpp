#include "dejean/verifier.hpp"

#include <algorithm>
#include <sstream>

#include "dejean/cascade.hpp"
#include "dejean/certificate.hpp"
#include "dejean/corrections.hpp"
#include "dejean/counting.hpp"
#include "dejean/language_graph.hpp"

namespace dejean {

namespace {

struct Reject {
  std::string why;
};

void need(bool cond, const std::string& why) {
  if (!cond) throw Reject{why};
}

}  // namespace

VerifyReport verify_certificate(const std::string& cert_bytes,
                                const std::string& omega_bytes, Guard& guard) {
  VerifyReport rep;
  auto note = [&rep](const std::string& line) { rep.transcript.push_back(line); };

  try {
    const Certificate c = parse_certificate(cert_bytes);
    {
      std::ostringstream os;
      os << "parameters: k=" << c.k << " m=" << c.m << " p1=" << c.p1
         << " p2=" << c.p2 << " n0=" << c.n0
         << " mode=" << (c.truncated ? "truncated" : "default");
      note(os.str());
    }

    need(c.k >= 5 && c.k <= 10, "alphabet size outside 5..10");
    need(c.m > c.k, "window length must exceed the alphabet size");
    const int p0 = first_free_period(c.k, c.m);
    need(c.p1 >= p0 - 1, "largest exact period below the first free period");
    need(c.p1 < c.p2, "exact range must end before the weak range");
    need(c.p2 >= 2 * c.k - 3, "largest tabulated period is too small");
    need(c.n0 >= c.m, "anchor length shorter than the window");
    need(c.alpha > 1, "claimed rate is not above 1");

    need(Sha256::of(omega_bytes) == c.omega_hash,
         "coefficient dump does not match the committed hash");
    note("hash: coefficient dump bound to certificate");

    const OmegaDump dump = parse_omega_dump(omega_bytes);
    need(dump.x_hat == c.x_hat,
         "dump weight vector differs from the certificate weight vector");
    note("weights: dump matches certificate");

    ClassGraph g = build_core_class_graph(c.k, c.m, guard);
    const std::size_t s = g.s();
    need(c.x_hat.size() == s,
         "weight vector length differs from the rebuilt class count");
    for (std::size_t l = 0; l < s; ++l)
      need(c.x_hat[l] > 0, "weight vector must be strictly positive");
    need(c.r_hat > 1, "expansion rate must exceed 1");
    for (std::size_t l = 0; l < s; ++l) {
      Rational outsum(0);
      for (const QuotientEdge& e : g.out[l]) outsum += c.x_hat[e.to];
      need(outsum >= c.r_hat * c.x_hat[l],
           "expansion inequality fails at class " + std::to_string(l));
    }
    {
      Rational lo = c.x_hat[0], hi = c.x_hat[0];
      for (const Rational& x : c.x_hat) {
        lo = std::min(lo, x);
        hi = std::max(hi, x);
      }
      need(c.mu_hat >= hi / lo,
           "tail ratio is below the weight spread of the rebuilt graph");
    }
    {
      std::ostringstream os;
      os << "growth data: expansion and tail ratios verified on rebuilt graph (s="
         << s << ")";
      note(os.str());
    }

    need(c.q == tail_exponent(c.k, c.p2),
         "tail exponent does not match the declared period range");
    note("tail exponent: q=" + std::to_string(c.q));

    const std::vector<ZetaRow> zeta = zeta_rows_from_dump(dump, p0, c.p1, s);
    const std::map<int, std::vector<Rational>> xi =
        xi_from_dump(dump, c.p1, c.p2, s);
    std::map<int, std::vector<Rational>> eta =
        eta_prime_table(g, c.p1, zeta, c.x_hat);
    OmegaTable omega =
        assemble_omega(c.k, c.m, p0, c.p1, c.p2, s, eta, xi);
    need(omega.a == dump.omega_a &&
             omega.b - omega.a + 1 == static_cast<int>(dump.omega.size()),
         "assembled shift band differs from the dump band");
    for (int d = omega.a; d <= omega.b; ++d)
      need(omega.at(d) == dump.omega[static_cast<std::size_t>(d - omega.a)],
           "assembled correction row differs from the dump at shift " +
               std::to_string(d));
    {
      std::ostringstream os;
      os << "corrections: reassembled band [" << omega.a << ", " << omega.b
         << "] matches dump";
      note(os.str());
    }

    const CascadeResult cascade = rho_cascade(g, omega, c.x_hat);
    need(c.rho_a == cascade.a &&
             static_cast<int>(c.rho.size()) == cascade.b - cascade.a + 1,
         "damping band differs from the recomputed cascade");
    for (int d = cascade.a; d <= cascade.b; ++d) {
      const Rational& expect =
          d < cascade.b ? cascade.min_at(d) : cascade.term_at(d);
      need(c.rho[static_cast<std::size_t>(d - c.rho_a)] == expect,
           "damping coefficient differs from the recomputed cascade at shift " +
               std::to_string(d));
    }
    note("cascade: replay matches " + std::to_string(c.rho.size()) +
         " coefficients");

    need(final_inequality_holds(c.r_hat, cascade, c.mu_hat, c.q, c.alpha),
         "final step inequality fails at the claimed rate");
    note("final inequality: holds at alpha=" + rational_text(c.alpha));

    need(c.base.size() == static_cast<std::size_t>(c.n0 - c.m + 1),
         "anchor table does not cover lengths m..n0");
    {
      Rational sum(0);
      for (const Rational& x : c.x_hat) sum += x;
      need(c.base.front() == sum * Rational(BigInt(factorial(c.k))),
           "anchor total at the window length is off scale");
    }
    {
      CheckOutcome bc = check_base_inequalities(c.base, c.m, c.n0, c.alpha);
      need(bc.ok, bc.what);
    }
    note("anchor: " + std::to_string(c.n0 - c.m) +
         " growth steps verified, scale pinned");

    if (c.truncated) {
      CheckOutcome gc = check_gap_steps(
          c.k, c.m, p0, c.p1, c.p2, c.n0, c.base.back(), c.r_hat, c.mu_hat,
          c.q, cascade, c.x_hat, c.alpha);
      need(gc.ok, gc.what);
      int gaps = std::max(0, c.m + cascade.b - c.n0);
      note("mode truncated: " + std::to_string(gaps) +
           " per-length steps verified");
    } else {
      need(static_cast<long long>(c.k) * c.p2 / (c.k - 1) <= c.n0,
           "anchor length is below the declared period range");
      need(c.m + cascade.b <= c.n0,
           "anchor does not cover the correction band in default mode");
      note("mode default: band covered by anchor");
    }

    rep.accepted = true;
    note("accepted");
    return rep;
  } catch (const Reject& r) {
    rep.failure = r.why;
  } catch (const GuardError&) {
    throw;
  } catch (const VerifyError& e) {
    rep.failure = e.what();
  } catch (const ConfigError& e) {
    rep.failure = e.what();
  }
  rep.accepted = false;
  rep.transcript.push_back("REJECTED: " + rep.failure);
  return rep;
}

}  // namespace dejean
