#pragma once

#include <map>
#include <vector>

#include "dejean/language_graph.hpp"

namespace dejean {

// Per-length, per-class exact counts of the bounded-repetition words tracked
// by a window class graph.  For each length n, counts[n - m][i] is the number
// of words w of length n such that
//   * every length-m window of w trim-canonicalizes into the graph,
//   * every two consecutive windows overlap into an admissible (m+1)-word,
//   * w itself has no factor of exponent above k/(k-1),
// and the final m letters of w fall in class i.  Counts are summed over all
// k! letter relabelings of the class representative, so each entry is k!
// times the count for any single representative suffix word.
struct ClassCounts {
  int k = 0;
  int m = 0;
  int n_max = 0;
  std::vector<std::vector<BigInt>> counts;  // [n - m][class]

  const std::vector<BigInt>& at_length(int n) const;
  BigInt total(int n) const;
  // Weighted sum  sum_i weight_i * counts_i(n)  used by the induction and the
  // base-case checks.
  Rational weighted(int n, const std::vector<Rational>& weights) const;
};

// Exact number of words of each length 1..n_max over k letters with no factor
// of exponent above k/(k-1).  Accelerated by letter symmetry: only words whose
// distinct letters first appear in increasing order are enumerated, each
// weighted by the number of ways to embed its letters into the alphabet.
std::vector<BigInt> count_dejean_exact(int k, int n_max, Guard& guard,
                                       int threads = 1);

// Reference implementation of the same sequence: depth-first search over all
// words, keeping a prefix exactly when a from-scratch scan of the whole word
// finds no factor of exponent above k/(k-1).  No symmetry, no incremental
// state; used to cross-check count_dejean_exact.
std::vector<BigInt> count_dejean_naive(int k, int n_max, Guard& guard);

// Exact class-resolved counts described by ClassCounts, for n = m..n_max.
// Enumerates one canonical word per relabeling orbit (first window equal to a
// class representative) by walking the voltage edges, re-checking full
// bounded-repetition of the grown word at every extension, and scales by k!.
ClassCounts count_minrep_by_class(const ClassGraph& g, int n_max, Guard& guard,
                                  int threads = 1);

// One extension step beyond the counted language.  Enumerates words v of
// length n+1 such that v minus its last letter is counted by
// count_minrep_by_class at length n and the last m+1 letters of v are
// admissible, but v itself is not counted at length n+1.  Each such word has
// a shortest prohibited suffix; the result maps the minimal period j of that
// suffix to per-class counts keyed by the trim class of the last m letters of
// v (summed over relabelings, same convention as ClassCounts).  Words
// excluded for any other reason than a prohibited suffix are returned under
// key 0 so callers can assert the partition is exhaustive.
std::map<int, std::vector<BigInt>> enumerate_violations_by_period(
    const ClassGraph& g, int n, Guard& guard);

// Exact number of words of the given length with the stated prefix and
// suffix, every window in the graph and every consecutive overlap admissible.
// Reference oracle for the voltage-lift path counts.
BigInt count_chain_words(const ClassGraph& g, const Word& prefix,
                         const Word& suffix, int length, Guard& guard);

}  // namespace dejean
