#include "dejean/cascade.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>

namespace dejean {

namespace {

void require(bool cond, const char* msg) {
  if (!cond) throw ConfigError(msg);
}

void check_x_hat(const std::vector<Rational>& x_hat, std::size_t s) {
  require(x_hat.size() == s, "weight vector size does not match class count");
  for (const Rational& x : x_hat)
    require(x > 0, "weight vector must be strictly positive");
}

}  // namespace

const Rational& CascadeResult::min_at(int d) const {
  if (d < a || d > b) throw ConfigError("shift outside the cascade band");
  return rho_min[static_cast<std::size_t>(d - a)];
}

const Rational& CascadeResult::term_at(int d) const {
  if (d < a || d > b) throw ConfigError("shift outside the cascade band");
  return rho_term[static_cast<std::size_t>(d - a)];
}

CascadeResult rho_cascade(const ClassGraph& g, const OmegaTable& omega,
                          const std::vector<Rational>& x_hat) {
  const std::size_t s = g.s();
  check_x_hat(x_hat, s);
  require(omega.a <= omega.b, "correction table has an empty shift band");

  CascadeResult out;
  out.a = omega.a;
  out.b = omega.b;
  out.rho_min.reserve(static_cast<std::size_t>(omega.b - omega.a) + 1);
  out.rho_term.reserve(static_cast<std::size_t>(omega.b - omega.a) + 1);

  std::vector<Rational> cur = omega.at(omega.a);
  require(cur.size() == s, "correction row size does not match class count");

  for (int d = omega.a; d <= omega.b; ++d) {
    Rational lo = cur[0] / x_hat[0];
    Rational hi = lo;
    for (std::size_t l = 1; l < s; ++l) {
      Rational ratio = cur[l] / x_hat[l];
      if (ratio < lo) lo = ratio;
      if (ratio > hi) hi = ratio;
    }
    out.rho_min.push_back(lo);
    out.rho_term.push_back(hi);

    if (d == omega.b) break;

    // Residual after peeling rho_min * x_hat, pushed one shift down: a
    // weighted count at length x is at most the sum of its in-edge source
    // counts at length x-1, so class l inherits the residuals of its
    // out-neighbours, parallel edges counted separately.
    std::vector<Rational> resid(s);
    for (std::size_t l = 0; l < s; ++l) {
      resid[l] = cur[l] - lo * x_hat[l];
      if (resid[l] < 0)
        throw VerifyError("cascade residual went negative; minimum rule broken");
    }
    const std::vector<Rational>& next_row = omega.at(d + 1);
    require(next_row.size() == s, "correction row size does not match class count");
    cur = next_row;
    for (std::size_t l = 0; l < s; ++l)
      for (const QuotientEdge& e : g.out[l]) cur[l] += resid[e.to];
  }
  return out;
}

int tail_exponent(int k, int p2) {
  require(k >= 2, "alphabet size must be at least 2");
  require(p2 >= 2 * k - 3, "largest tabulated period is too small");
  return (p2 + 1) / (k - 1) - 1;
}

Rational tail_value(const Rational& mu_hat, int q, const Rational& alpha) {
  require(q >= 0, "tail exponent must be non-negative");
  require(mu_hat >= 0, "tail mass must be non-negative");
  require(alpha > 1, "tail is only defined for alpha > 1");
  return mu_hat / (rational_pow(alpha, static_cast<unsigned long>(q)) *
                   (alpha - 1));
}

Rational damping_polynomial(const CascadeResult& c, const Rational& inv_alpha,
                            int cutoff) {
  if (cutoff < c.a) return Rational(0);
  const int top = std::min(cutoff, c.b);
  Rational acc(0);
  Rational xp = rational_pow(inv_alpha, static_cast<unsigned long>(c.a));
  for (int d = c.a; d < top; ++d) {
    acc += c.min_at(d) * xp;
    xp *= inv_alpha;
  }
  acc += c.term_at(top) * xp;
  return acc;
}

bool final_inequality_holds(const Rational& r_hat, const CascadeResult& c,
                            const Rational& mu_hat, int q,
                            const Rational& alpha) {
  if (!(alpha > 1)) return false;
  Rational inv = 1 / alpha;
  Rational lhs = r_hat - alpha - damping_polynomial(c, inv, c.b) -
                 tail_value(mu_hat, q, alpha);
  return lhs >= 0;
}

AlphaSolveResult solve_alpha(const Rational& r_hat, const CascadeResult& c,
                             const Rational& mu_hat, int q) {
  require(r_hat > 1, "expansion rate must exceed 1");
  require(mu_hat >= 0, "tail mass must be non-negative");
  require(q >= 0, "tail exponent must be non-negative");

  bool any_coeff = mu_hat != 0;
  for (const Rational& v : c.rho_min)
    if (v != 0) any_coeff = true;
  for (const Rational& v : c.rho_term)
    if (v != 0) any_coeff = true;

  AlphaSolveResult out;
  if (!any_coeff) {
    // No correction mass and no tail: the step inequality degenerates to
    // alpha <= r_hat, attained exactly.
    out.feasible = true;
    out.alpha = r_hat;
    out.best_alpha = rational_to_double(r_hat);
    out.best_gap = 0.0;
    return out;
  }

  // Double-precision model of the margin r_hat - alpha - P(1/alpha) - tail.
  const double rd = rational_to_double(r_hat);
  const double mud = rational_to_double(mu_hat);
  std::vector<double> coeff(static_cast<std::size_t>(c.b - c.a) + 1);
  for (int d = c.a; d < c.b; ++d)
    coeff[static_cast<std::size_t>(d - c.a)] = rational_to_double(c.min_at(d));
  coeff.back() = rational_to_double(c.term_at(c.b));
  auto margin = [&](double al) -> double {
    double inv = 1.0 / al;
    double p = 0.0;
    double xp = std::pow(inv, c.a);
    for (std::size_t i = 0; i < coeff.size(); ++i) {
      p += coeff[i] * xp;
      xp *= inv;
    }
    double tail = mud / (std::pow(al, q) * (al - 1.0));
    return rd - al - p - tail;
  };

  // The margin is concave on (1, inf): golden-section for its maximum.
  double lo = 1.0 + 1e-9, hi = rd;
  constexpr double kGolden = 0.6180339887498949;
  double x1 = hi - kGolden * (hi - lo), x2 = lo + kGolden * (hi - lo);
  double f1 = margin(x1), f2 = margin(x2);
  for (int it = 0; it < 300 && hi - lo > 1e-15; ++it) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + kGolden * (hi - lo);
      f2 = margin(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - kGolden * (hi - lo);
      f1 = margin(x1);
    }
  }
  double amax = 0.5 * (lo + hi);
  double fmax = margin(amax);
  if (!(fmax > 0)) {
    out.feasible = false;
    out.best_gap = fmax;
    out.best_alpha = amax;
    return out;
  }

  // Right feasibility edge: the margin decreases to the right of the maximum.
  double rl = amax, rh = rd;
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (rl + rh);
    if (margin(mid) >= 0)
      rl = mid;
    else
      rh = mid;
  }
  out.best_alpha = amax;
  out.best_gap = fmax;

  // Snap down to the 1e-9 grid a hair below the float edge, then walk down
  // until the exact inequality accepts.  The exact edge lies within the
  // float-model error (~1e-12) of rl, so the accepted value stays within
  // 1e-7 of it and alpha + 1e-6 lands strictly beyond.
  const BigInt grid = 1000000000;
  BigInt ticks(std::floor((rl - 2e-8) * 1e9));
  const Rational step(1, 20000000);  // 5e-8
  Rational cand(ticks, grid);
  cand.canonicalize();
  int tries = 0;
  while (!(cand > 1) || !final_inequality_holds(r_hat, c, mu_hat, q, cand)) {
    cand -= step;
    if (++tries > 200 || !(cand > 1)) {
      out.feasible = false;
      out.best_gap = fmax;
      out.best_alpha = amax;
      return out;
    }
  }
  out.feasible = true;
  out.alpha = cand;
  return out;
}

CheckOutcome check_base_inequalities(const std::vector<Rational>& weighted,
                                     int m, int n0, const Rational& alpha) {
  CheckOutcome out;
  require(n0 >= m, "anchor length must be at least the window length");
  require(weighted.size() == static_cast<std::size_t>(n0 - m + 1),
          "anchor table must cover every length from m to n0");
  for (int n = m; n <= n0; ++n)
    if (!(weighted[static_cast<std::size_t>(n - m)] > 0)) {
      out.ok = false;
      out.n = n;
      out.what = "weighted count at length " + std::to_string(n) +
                 " is not positive";
      return out;
    }
  for (int n = m; n < n0; ++n) {
    const Rational& s_n = weighted[static_cast<std::size_t>(n - m)];
    const Rational& s_n1 = weighted[static_cast<std::size_t>(n + 1 - m)];
    if (s_n1 < alpha * s_n) {
      out.ok = false;
      out.n = n;
      out.what = "anchor growth fails at length " + std::to_string(n) +
                 ": weighted(" + std::to_string(n + 1) + ") < alpha*weighted(" +
                 std::to_string(n) + ")";
      return out;
    }
  }
  return out;
}

std::vector<int> surcharge_periods(int k, int m, int p0, int p1, int p2,
                                   int n) {
  std::vector<int> out;
  for (int j = p0; j <= p2; ++j) {
    PeriodGeometry geo = period_geometry(k, m, j);
    if (geo.chi > m) continue;
    int shift = j <= p1 ? geo.d_exact : geo.d_weak;
    if (shift <= n - m) continue;           // retained by the step, no surcharge
    if (geo.h_len > n + 1) continue;        // window does not fit
    if (static_cast<long long>(n) * (k - 1) > static_cast<long long>(j) * k)
      continue;  // a fully periodic word of length n would itself be prohibited
    out.push_back(j);
  }
  return out;
}

Rational surcharge_value(int k, const std::vector<Rational>& x_hat,
                         std::size_t dropped_count) {
  Rational sum(0);
  for (const Rational& x : x_hat) sum += x;
  return sum * Rational(BigInt(factorial(k))) *
         Rational(static_cast<unsigned long>(dropped_count));
}

CheckOutcome check_gap_steps(int k, int m, int p0, int p1, int p2, int n0,
                             const Rational& s_n0, const Rational& r_hat,
                             const Rational& mu_hat, int q,
                             const CascadeResult& c,
                             const std::vector<Rational>& x_hat,
                             const Rational& alpha) {
  CheckOutcome out;
  require(alpha > 1, "gap steps need alpha > 1");
  require(s_n0 > 0, "anchor total must be positive");

  const Rational inv = 1 / alpha;
  const Rational tail = tail_value(mu_hat, q, alpha);
  const Rational per_period = surcharge_value(k, x_hat, 1);

  // Running pieces: low = sum of min-rule terms for shifts < cutoff,
  // xp = (1/alpha)^cutoff, chain = alpha^(n-n0).
  Rational low(0);
  Rational xp = rational_pow(inv, static_cast<unsigned long>(c.a));
  int cutoff = c.a;
  Rational chain(1);

  for (int n = n0; n < m + c.b; ++n) {
    int want = n - m;
    if (want >= c.b) break;  // full polynomial from here on
    while (cutoff < want && cutoff < c.b) {
      low += c.min_at(cutoff) * xp;
      xp *= inv;
      ++cutoff;
    }
    Rational poly;
    if (want < c.a)
      poly = 0;
    else
      poly = low + c.term_at(cutoff) * xp;
    Rational margin = r_hat - alpha - poly - tail;
    std::size_t dropped = surcharge_periods(k, m, p0, p1, p2, n).size();
    Rational lhs = margin * chain * s_n0;
    Rational rhs = per_period * Rational(static_cast<unsigned long>(dropped));
    if (lhs < rhs) {
      out.ok = false;
      out.n = n;
      out.what = "truncated step fails at length " + std::to_string(n) +
                 ": margin*alpha^(n-n0)*S(n0) = " +
                 rational_text(margin * chain * s_n0) + " < surcharge " +
                 rational_text(rhs) + " (" + std::to_string(dropped) +
                 " dropped periods)";
      return out;
    }
    chain *= alpha;
  }
  return out;
}

}  // namespace dejean
