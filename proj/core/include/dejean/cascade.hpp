#pragma once

#include <string>
#include <vector>

#include "dejean/corrections.hpp"
#include "dejean/language_graph.hpp"
#include "dejean/support.hpp"

namespace dejean {

// Damping coefficients distilled from a correction table by pushing residual
// mass toward shorter lengths.  One exact left-to-right pass over the shift
// band [a, b] produces, for every shift d, the coefficient used when the
// cascade continues past d (rho_min, the minimum of omega'_l(d)/x_l) and the
// coefficient used when the cascade is cut off at d (rho_term, the maximum of
// the same ratios).  The running vector omega' is the table row at d plus the
// residual carried from d-1; residuals step one shift down because a weighted
// class count at length x is at most the sum of its in-edge sources at x-1.
//
// The bound certified, for any alpha with S(x+1) >= alpha*S(x) on the needed
// range and any cutoff D:
//
//   sum over shifts d in [a, min(D,b)] of (coefficient_d * S(n-d))
//     >= sum over classes/shifts of omega_l(d) * C_l(n-d)   restricted to d <= D,
//
// with coefficient_d = rho_min[d] for d < min(D,b) and rho_term at the cutoff.
struct CascadeResult {
  int a = 0;
  int b = 0;
  std::vector<Rational> rho_min;   // indexed d - a
  std::vector<Rational> rho_term;  // indexed d - a

  const Rational& min_at(int d) const;
  const Rational& term_at(int d) const;
};

// Runs the cascade.  x_hat must be strictly positive with one entry per
// class; residuals are asserted non-negative (a negative residual means the
// minimum rule was violated and is reported as a VerifyError).
CascadeResult rho_cascade(const ClassGraph& g, const OmegaTable& omega,
                          const std::vector<Rational>& x_hat);

// Exponent of the closed-form bound on the mass of all periods beyond p2:
// floor((p2+1)/(k-1)) - 1.  Always >= 1 for p2 >= 2k-3.
int tail_exponent(int k, int p2);

// mu / (alpha^q * (alpha - 1)), exact; requires alpha > 1.
Rational tail_value(const Rational& mu_hat, int q, const Rational& alpha);

// P(1/alpha) truncated at a cutoff: min-rule coefficients for shifts strictly
// below min(cutoff, b), the terminal max-rule coefficient at min(cutoff, b).
// cutoff >= b gives the full polynomial, cutoff < a gives zero.
Rational damping_polynomial(const CascadeResult& c, const Rational& inv_alpha,
                            int cutoff);

// Exact test of the full induction step inequality
//   r_hat - alpha - P(1/alpha) - tail >= 0.
bool final_inequality_holds(const Rational& r_hat, const CascadeResult& c,
                            const Rational& mu_hat, int q,
                            const Rational& alpha);

// Largest alpha satisfying the full induction step inequality, located in
// floating point (the objective is concave on (1, infinity)) and then rounded
// down to a rational on the 1e-9 grid that passes the exact test.  The
// emitted alpha sits within 1e-7 of the exact feasibility edge, so alpha +
// 1e-6 always fails the exact test.  When no alpha > 1 is feasible, 'feasible'
// is false and best_gap/best_alpha describe the least-negative margin found.
struct AlphaSolveResult {
  bool feasible = false;
  Rational alpha;
  double best_gap = 0.0;
  double best_alpha = 0.0;
};
AlphaSolveResult solve_alpha(const Rational& r_hat, const CascadeResult& c,
                             const Rational& mu_hat, int q);

// Outcome of an anchoring or gap-step check; when ok is false, n is the
// witnessing length and what describes the failed inequality.
struct CheckOutcome {
  bool ok = true;
  int n = 0;
  std::string what;
};

// weighted[i] must hold the exact weighted class-count total at length m+i,
// for i = 0..n0-m.  Checks positivity and weighted(n+1) >= alpha*weighted(n)
// for every n in [m, n0).
CheckOutcome check_base_inequalities(const std::vector<Rational>& weighted,
                                     int m, int n0, const Rational& alpha);

// Periods whose correction term is dropped by the length-n induction step in
// truncated mode and still requires a surcharge: j in [p0, p2] with
// chi(j) <= m, shift(j) > n-m, minimal prohibited window <= n+1, and
// n*(k-1) <= j*k.  shift(j) is the exact-drop for j <= p1, the weak-drop
// beyond.  Each such period contributes at most k! words per class.
std::vector<int> surcharge_periods(int k, int m, int p0, int p1, int p2,
                                   int n);

// k! * sum(x_hat) * dropped_count: the weighted surcharge E(n).
Rational surcharge_value(int k, const std::vector<Rational>& x_hat,
                         std::size_t dropped_count);

// Exact replay of every truncated-mode induction step between the anchor and
// the first length covered by the full polynomial: for n in [n0, m+b),
//   (r_hat - alpha - P_{n-m}(1/alpha) - tail) * alpha^(n-n0) * S(n0) >= E(n).
// s_n0 is the exact weighted total at length n0.
CheckOutcome check_gap_steps(int k, int m, int p0, int p1, int p2, int n0,
                             const Rational& s_n0, const Rational& r_hat,
                             const Rational& mu_hat, int q,
                             const CascadeResult& c,
                             const std::vector<Rational>& x_hat,
                             const Rational& alpha);

}  // namespace dejean
