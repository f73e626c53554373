#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dejean/support.hpp"
#include "dejean/words.hpp"

namespace dejean {

struct QuotientEdge {
  std::int32_t to = -1;
  Perm tau;
  bool operator==(const QuotientEdge&) const = default;
};

// Vertices are letter-permutation classes of admissible length-m windows,
// named by their trimmed representative. An edge c -> d with voltage tau
// means tau(rep_d) is the one-letter forward shift of rep_c by some
// admissible extension letter. For m >= k distinct extension letters land in
// distinct classes, so (source, target) determines the edge and its voltage.
struct ClassGraph {
  int k = 0, m = 0;
  std::vector<Word> reps;                      // sorted ascending
  std::vector<std::vector<QuotientEdge>> out;  // forward shifts
  std::vector<std::vector<QuotientEdge>> in;   // reversed copy of out

  std::size_t s() const { return reps.size(); }
  std::uint64_t lift_size() const { return factorial(k) * s(); }
  std::size_t edge_count() const;
  int index_of(const Word& rep) const;  // -1 when absent
  void rebuild_reverse();
  bool operator==(const ClassGraph& o) const {
    return k == o.k && m == o.m && reps == o.reps && out == o.out;
  }
};

// All trimmed admissible words of length m, sorted. Every suffix of an
// admissible word is admissible, so a leftward walk from the fixed trimmed
// tail enumerates exactly these.
std::vector<Word> trimmed_window_words(int k, int m, Guard& guard);

// Quotient of the full window language, before erosion.
ClassGraph build_window_class_graph(int k, int m, Guard& guard);

// Remove vertices that cannot be extended arbitrarily far: the forward
// fixpoint repeatedly keeps vertices with an out-edge into the still-alive
// set, the backward fixpoint mirrors this on in-edges; both run on the
// original graph independently and the survivors are intersected.
ClassGraph erode_to_core(const ClassGraph& full);

ClassGraph build_core_class_graph(int k, int m, Guard& guard);

// Structural and semantic validation: sorted trimmed admissible reps, edges
// sorted with unique targets, every edge realizing an admissible shift, and
// no admissible shift between present classes missing. Throws VerifyError.
void validate_class_graph(const ClassGraph& g);

// Plain-text cache, bit-exact across runs.
void save_class_graph(const ClassGraph& g, const std::string& path);
ClassGraph load_class_graph(const std::string& path);

// ---- word-level reference path (small instances, cross-validation) ----

std::vector<Word> all_dejean_words(int k, std::size_t len, Guard& guard);

// Word-level core: iterated removal of words with no admissible right
// (resp. left) one-letter shift inside the set; two independent fixpoints on
// the original set, then intersected. Sorted.
std::vector<Word> core_window_words(int k, int m, Guard& guard);

// Quotient an explicit window set (closed under letter permutations) into a
// ClassGraph; edges require the shift to stay inside the set.
ClassGraph quotient_word_graph(const std::vector<Word>& words, int k, int m);

}  // namespace dejean
