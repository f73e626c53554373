#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "dejean/language_graph.hpp"
#include "dejean/spectral.hpp"
#include "dejean/support.hpp"

namespace dejean {

// Integer facts about one candidate minimal period j over k letters. A
// repetition of period j becomes prohibited once it reaches h_len letters;
// chi is the overhang of that window beyond j. The two shift values place
// the period's correction term relative to the current word length: the
// enumerated path subtracts at shift d_exact, the path-count path at d_weak.
struct PeriodGeometry {
  int j = 0;
  int chi = 0;     // floor(j/(k-1)) + 1
  int h_len = 0;   // floor(k*j/(k-1)) + 1, length of the shortest prohibited run
  int t = 0;       // j + chi + 1 == h_len + 1, length of the context words
  int d_exact = 0;         // h_len - m
  int d_weak = 0;          // j - 1 when chi <= m, else h_len - 1 - m
  int n_prime_offset = 0;  // floor(j/(k-1))
  int n_dblprime_offset = 0;  // floor(k*j/(k-1))
};
PeriodGeometry period_geometry(int k, int m, int j);

// Smallest period whose prohibited window no longer fits inside m+1 letters;
// shorter periods are already excluded by the window graph itself.
// Equals (m+1) - floor((m+1)/k). Requires m > k.
int first_free_period(int k, int m);

// Context words for period j and a fixed suffix class: words v of length
// t(j) over the window language of g such that v[2..t] carries period j
// (equivalently v[p] = v[p+j] for p = 2..chi+1), v[1..t-1] and v[3..t] both
// stay admissible, and the last m letters are the class representative.
// by_prefix_class[l] counts those v whose first m letters trim to class l;
// context_count is their total. Every enumerated word is checked to not
// extend its period one letter further left.
struct ZetaRow {
  int j = 0;
  int base = 0;  // suffix class index
  std::vector<BigInt> by_prefix_class;
  BigInt context_count = 0;
};
ZetaRow enumerate_period_contexts(const ClassGraph& g, int j, int base,
                                  Guard& guard);

// Weighted context profiles for the enumerated periods j in [p0, p1], keyed
// by shift: eta[d_exact(j)][l] = sum_base x_hat[base] * zeta_{j,base}[l].
// Shifts are strictly increasing in j; a collision is an internal fault.
// Requires one ZetaRow per (j, base) pair, any order.
std::map<int, std::vector<Rational>> eta_prime_table(
    const ClassGraph& g, int p1, const std::vector<ZetaRow>& rows,
    const std::vector<Rational>& x_hat);

// A dense row over the lift cells, either exact 64-bit counts or doubles
// rounded upward at every step. Exactly one pointer is set.
struct RowView {
  const std::vector<std::uint64_t>* exact = nullptr;
  const std::vector<double>* rounded = nullptr;
};

// Path-count correction coefficients for one period j with chi(j) in
// [k-1, m]: xi[l] = sum over classes i whose representative shares the last
// chi(j) letters with rep_l of x_hat[i] * fwd_at_j[l][(i, id)], where
// fwd_at_j[l] is the forward row of class l advanced j steps. All row values
// are converted exactly; rounded rows therefore keep xi an upper bound.
std::vector<Rational> xi_weak_small(const LiftRows& lift, int j,
                                    const std::vector<Rational>& x_hat,
                                    const std::vector<RowView>& fwd_at_j);

// Same coefficients for one period j with chi(j) > m, assembled from
// backward rows at power chi-m and forward rows at power j+m-chi, both
// seeded at class i: xi[l] = sum_i x_hat[i] * sum_g bwd[i][(l,g)] *
// fwd[i][(l,g)]. Exact rows accumulate in integers; rounded rows accumulate
// in doubles nudged upward after every operation.
std::vector<Rational> xi_weak_large(const LiftRows& lift, int j,
                                    const std::vector<Rational>& x_hat,
                                    const std::vector<RowView>& fwd_rows,
                                    const std::vector<RowView>& bwd_rows);

// Correction table indexed by shift over the contiguous band [a, b], where
// a and b are the extreme shifts of the two paths: enumerated periods land
// at d_exact(j), path-counted periods at d_weak(j), and coefficients whose
// shifts collide are summed. Unused shifts inside the band hold zeros.
struct OmegaTable {
  int a = 0, b = 0;
  std::vector<std::vector<Rational>> by_shift;  // index d - a
  const std::vector<Rational>& at(int d) const;
};

// eta_by_shift: output of eta_prime_table (empty when p1 = p0 - 1).
// xi_by_period: one coefficient vector per period j in (p1, p2].
OmegaTable assemble_omega(int k, int m, int p0, int p1, int p2, std::size_t s,
                          const std::map<int, std::vector<Rational>>& eta_by_shift,
                          const std::map<int, std::vector<Rational>>& xi_by_period);

}  // namespace dejean
