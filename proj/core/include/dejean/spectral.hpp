#pragma once

#include <cstdint>
#include <vector>

#include "dejean/language_graph.hpp"
#include "dejean/support.hpp"

namespace dejean {

// Exact growth data for the core window graph: a positive rational vector
// x̂ with sum over out-edges of x̂_to >= r̂ x̂_l for every class l, where
// r̂ > 1 is the exact minimum of those ratios, and μ̂ = max x̂ / min x̂.
struct PerronCertificate {
  Rational r_hat;
  std::vector<Rational> x_hat;
  Rational mu_hat;
};

std::vector<std::vector<int>> strongly_connected_components(const ClassGraph& g);

// Deterministic sequential power iteration on A+I (right action), normalized
// to min 1. Requires a strongly connected graph; otherwise throws ConfigError
// naming the component sizes.
struct FloatSpectral {
  double rho = 0;  // spectral radius estimate of A itself
  std::vector<double> x;
};
FloatSpectral power_iteration(const ClassGraph& g, int max_iter = 40000,
                              double tol = 1e-13);

// Snap the float vector to the 2^-48 grid (components clamped positive) and
// take exact ratios. Throws ConfigError when the resulting r̂ is not > 1.
PerronCertificate certify_growth(const ClassGraph& g);
PerronCertificate certify_growth(const ClassGraph& g,
                                 const std::vector<double>& x);

// Exact upper bound on the growth rate of the count of admissible words:
// max_l (A y)_l / y_l on the *unpruned* window class graph with a positive
// rational y. Appending a letter maps length-n words injectively onto edge
// extensions, so class counts obey counts(n+1) <= A^T counts(n) entrywise
// and the weighted total grows at most this fast.
Rational upper_bound_growth(int k, int m, Guard& guard);

// ---- dense rows over the voltage lift ----
//
// Lift vertices are cells (class c, permutation g); an edge c -> d with
// voltage tau lifts to (c, g) -> (d, g∘tau) for every g. Rows are dense
// arrays indexed by c * k! + lehmer_rank(g). Exact rows are overflow-checked
// uint64; rounded rows are doubles nudged up after every add, so entries
// stay upper bounds on the exact counts.

class LiftRows {
 public:
  explicit LiftRows(const ClassGraph& g);

  std::vector<std::uint64_t> unit_row(int c0) const;
  std::vector<double> unit_row_rounded(int c0) const;

  // Path counts away from the seed: after t forward steps from unit_row(c0),
  // entry (d, g) counts the admissible continuations of length t that carry
  // window rep_c0 to window g(rep_d).
  void step_forward(std::vector<std::uint64_t>& row,
                    std::vector<std::uint64_t>& scratch) const;
  void step_forward(std::vector<double>& row,
                    std::vector<double>& scratch) const;

  // Path counts toward the seed: after t backward steps from unit_row(c0),
  // entry (c, g) counts length-t paths from cell (c, g) to cell (c0, id).
  void step_backward(std::vector<std::uint64_t>& row,
                     std::vector<std::uint64_t>& scratch) const;
  void step_backward(std::vector<double>& row,
                     std::vector<double>& scratch) const;

  std::size_t cells() const { return cells_; }
  std::size_t cell(int c, std::uint32_t rank) const {
    return static_cast<std::size_t>(c) * K_ + rank;
  }
  std::uint32_t kfact() const { return K_; }
  const ClassGraph& graph() const { return g_; }
  const Perm& perm_of_rank(std::uint32_t r) const { return perms_[r]; }

 private:
  struct E {
    std::int32_t from, to, table;
  };
  const ClassGraph& g_;
  std::uint32_t K_;
  std::size_t cells_;
  std::vector<Perm> perms_;                       // rank order
  std::vector<E> edges_;
  std::vector<std::vector<std::uint32_t>> comp_;  // comp_[t][r] = rank(perm_r ∘ tau_t)
};

}  // namespace dejean
