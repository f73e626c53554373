#include "dejean/counting.hpp"

#include <algorithm>
#include <functional>

namespace dejean {

const std::vector<BigInt>& ClassCounts::at_length(int n) const {
  if (n < m || n > n_max)
    throw ConfigError("class counts requested at length " + std::to_string(n) +
                      " outside [" + std::to_string(m) + ", " +
                      std::to_string(n_max) + "]");
  return counts[static_cast<std::size_t>(n - m)];
}

BigInt ClassCounts::total(int n) const {
  BigInt t = 0;
  for (const BigInt& c : at_length(n)) t += c;
  return t;
}

Rational ClassCounts::weighted(int n, const std::vector<Rational>& weights) const {
  const std::vector<BigInt>& row = at_length(n);
  if (weights.size() != row.size())
    throw ConfigError("weight vector size mismatch in class counts");
  Rational acc(0);
  for (std::size_t i = 0; i < row.size(); ++i) acc += weights[i] * Rational(row[i]);
  return acc;
}

namespace {

// Canonical letter patterns: the distinct letters of the word first appear in
// increasing order 0,1,2,...  Each pattern with d distinct letters stands for
// k(k-1)...(k-d+1) words, one per injection of its letters into the alphabet,
// and words with no factor of exponent above k/(k-1) stay that way under any
// injective relabeling.
void dfs_canonical_patterns(int k, int n_max, Word& w, int d, Guard& guard,
                            std::vector<BigInt>& acc,
                            const std::vector<BigInt>& weight_of) {
  if (static_cast<int>(w.size()) >= n_max) return;
  int top = std::min(d, k - 1);
  for (int c = 0; c <= top; ++c) {
    guard.bump();
    if (!extension_safe(w, static_cast<Letter>(c), k)) continue;
    int nd = d + (c == d ? 1 : 0);
    w.push_back(static_cast<char>(c));
    acc[w.size() - 1] += weight_of[static_cast<std::size_t>(nd)];
    dfs_canonical_patterns(k, n_max, w, nd, guard, acc, weight_of);
    w.pop_back();
  }
}

}  // namespace

std::vector<BigInt> count_dejean_exact(int k, int n_max, Guard& guard,
                                       int threads) {
  if (k < 2 || n_max < 1) throw ConfigError("need k >= 2 and n_max >= 1");
  std::vector<BigInt> weight_of(static_cast<std::size_t>(k) + 1);
  weight_of[0] = 1;
  for (int d = 1; d <= k; ++d) weight_of[d] = weight_of[d - 1] * (k - d + 1);

  std::vector<BigInt> out(static_cast<std::size_t>(n_max), BigInt(0));
  // The single-letter pattern; every word of length 1 is admissible.
  out[0] = weight_of[1];

  // Collect subtree roots at a shallow depth, then expand them in parallel
  // with per-root accumulators merged in index order.
  int root_len = std::min(3, n_max);
  struct Root {
    Word w;
    int d;
  };
  std::vector<Root> roots;
  {
    Word w;
    w.push_back(0);
    std::function<void(int)> grow = [&](int d) {
      if (static_cast<int>(w.size()) == root_len) {
        roots.push_back({w, d});
        return;
      }
      int top = std::min(d, k - 1);
      for (int c = 0; c <= top; ++c) {
        guard.bump();
        if (!extension_safe(w, static_cast<Letter>(c), k)) continue;
        int nd = d + (c == d ? 1 : 0);
        w.push_back(static_cast<char>(c));
        out[w.size() - 1] += weight_of[static_cast<std::size_t>(nd)];
        grow(nd);
        w.pop_back();
      }
    };
    grow(1);
  }
  if (root_len == n_max) return out;

  std::vector<std::vector<BigInt>> slots(
      roots.size(), std::vector<BigInt>(static_cast<std::size_t>(n_max)));
  parallel_for_index(roots.size(), threads, [&](std::size_t r) {
    Word w = roots[r].w;
    dfs_canonical_patterns(k, n_max, w, roots[r].d, guard, slots[r], weight_of);
  });
  for (const auto& slot : slots)
    for (std::size_t i = 0; i < slot.size(); ++i) out[i] += slot[i];
  return out;
}

std::vector<BigInt> count_dejean_naive(int k, int n_max, Guard& guard) {
  if (k < 2 || n_max < 1) throw ConfigError("need k >= 2 and n_max >= 1");
  std::vector<BigInt> out(static_cast<std::size_t>(n_max), BigInt(0));
  Word w;
  std::function<void()> rec = [&]() {
    for (int c = 0; c < k; ++c) {
      w.push_back(static_cast<char>(c));
      guard.bump();
      if (is_dejean(w, k)) {
        out[w.size() - 1] += 1;
        if (static_cast<int>(w.size()) < n_max) rec();
      }
      w.pop_back();
    }
  };
  rec();
  return out;
}

namespace {

// Walks every word whose first m letters equal reps[c0] and whose growth
// stays inside the counted language: each extension letter comes from a
// quotient edge (so the new window is in the graph and the (m+1)-overlap is
// admissible) and the whole grown word is re-checked for prohibited
// suffixes of any period.  cb sees the word and its current window class at
// every node, including the root.
void walk_counted_words(const ClassGraph& g, int c0, int n_max, Guard& guard,
                        const std::function<void(const Word&, int)>& cb) {
  Word w = g.reps[static_cast<std::size_t>(c0)];
  Letter last_rep_letter = static_cast<Letter>(g.k - 2);
  std::function<void(int, const Perm&)> rec = [&](int cls, const Perm& vol) {
    guard.bump();
    cb(w, cls);
    if (static_cast<int>(w.size()) >= n_max) return;
    for (const QuotientEdge& e : g.out[static_cast<std::size_t>(cls)]) {
      // New window = (vol . tau)(reps[e.to]); trimmed reps end in k-2, so
      // the appended letter is the image of k-2.
      Letter x = vol(e.tau(last_rep_letter));
      if (!extension_safe(w, x, g.k)) continue;
      w.push_back(static_cast<char>(x));
      rec(e.to, compose(vol, e.tau));
      w.pop_back();
    }
  };
  rec(c0, Perm::identity(g.k));
}

}  // namespace

ClassCounts count_minrep_by_class(const ClassGraph& g, int n_max, Guard& guard,
                                  int threads) {
  if (n_max < g.m) throw ConfigError("n_max below the window length");
  std::size_t s = g.s();
  std::size_t rows = static_cast<std::size_t>(n_max - g.m) + 1;
  std::vector<std::vector<std::vector<BigInt>>> slots(
      s, std::vector<std::vector<BigInt>>(rows, std::vector<BigInt>(s)));
  parallel_for_index(s, threads, [&](std::size_t c0) {
    auto& local = slots[c0];
    walk_counted_words(g, static_cast<int>(c0), n_max, guard,
                       [&](const Word& w, int cls) {
                         local[w.size() - static_cast<std::size_t>(g.m)]
                              [static_cast<std::size_t>(cls)] += 1;
                       });
  });
  ClassCounts cc;
  cc.k = g.k;
  cc.m = g.m;
  cc.n_max = n_max;
  cc.counts.assign(rows, std::vector<BigInt>(s, BigInt(0)));
  for (const auto& local : slots)
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t i = 0; i < s; ++i) cc.counts[r][i] += local[r][i];
  // One canonical word per relabeling orbit was enumerated; words this long
  // use every letter, so orbits are free of size k!.
  BigInt orbit = BigInt(factorial(g.k));
  for (auto& row : cc.counts)
    for (BigInt& c : row) c *= orbit;
  return cc;
}

std::map<int, std::vector<BigInt>> enumerate_violations_by_period(
    const ClassGraph& g, int n, Guard& guard) {
  if (n < g.m) throw ConfigError("length below the window length");
  std::size_t s = g.s();
  std::map<int, std::vector<BigInt>> result;
  auto slot = [&](int j) -> std::vector<BigInt>& {
    auto it = result.find(j);
    if (it == result.end())
      it = result.emplace(j, std::vector<BigInt>(s, BigInt(0))).first;
    return it->second;
  };
  for (std::size_t c0 = 0; c0 < s; ++c0) {
    walk_counted_words(g, static_cast<int>(c0), n, guard, [&](const Word& w,
                                                              int) {
      if (static_cast<int>(w.size()) != n) return;
      Word tail = w.substr(w.size() - static_cast<std::size_t>(g.m));
      for (int c = 0; c < g.k; ++c) {
        Letter x = static_cast<Letter>(c);
        // Candidate extensions: the merged (m+1)-letter overlap must be
        // admissible; anything else never left the counted language's
        // one-step closure in the first place.
        if (!extension_safe(tail, x, g.k)) continue;
        Word v = w;
        v.push_back(static_cast<char>(c));
        Word win = v.substr(v.size() - static_cast<std::size_t>(g.m));
        int wcls = -1;
        if (is_rarefied(win, g.k)) {
          auto [canon, sigma] = trim_canonicalize(win, g.k);
          wcls = g.index_of(canon);
        }
        bool still_counted = extension_safe(w, x, g.k);
        if (wcls < 0) {
          // The new window left the graph; record under key 0 so callers can
          // assert this never happens on the instances they study.
          slot(0)[0] += 1;
          continue;
        }
        if (still_counted) continue;
        // v has a prohibited suffix; find the smallest period that offends.
        int j = 0;
        int len = static_cast<int>(v.size());
        for (int p = 1; p < len; ++p) {
          int i = len - 1 - p;
          while (i >= 0 && v[static_cast<std::size_t>(i)] ==
                               v[static_cast<std::size_t>(i + p)])
            --i;
          std::size_t run_len = static_cast<std::size_t>(len - 1 - i);
          if (is_prohibited(run_len, static_cast<std::size_t>(p), g.k)) {
            j = p;
            break;
          }
        }
        if (j == 0)
          throw VerifyError(
              "extension rejected by the incremental check but no prohibited "
              "suffix found");
        slot(j)[static_cast<std::size_t>(wcls)] += 1;
      }
    });
  }
  BigInt orbit = BigInt(factorial(g.k));
  for (auto& [j, row] : result)
    for (BigInt& c : row) c *= orbit;
  return result;
}

BigInt count_chain_words(const ClassGraph& g, const Word& prefix,
                         const Word& suffix, int length, Guard& guard) {
  std::size_t m = static_cast<std::size_t>(g.m);
  if (prefix.size() != m || suffix.size() != m)
    throw ConfigError("prefix and suffix must have the window length");
  if (length < g.m) throw ConfigError("length below the window length");
  if (!is_dejean(prefix, g.k)) return BigInt(0);
  {
    auto [canon, sigma] = trim_canonicalize(prefix, g.k);
    if (g.index_of(canon) < 0) return BigInt(0);
  }
  BigInt total = 0;
  Word w = prefix;
  std::function<void()> rec = [&]() {
    guard.bump();
    if (static_cast<int>(w.size()) == length) {
      if (std::equal(suffix.begin(), suffix.end(), w.end() - suffix.size()))
        total += 1;
      return;
    }
    Word tail = w.substr(w.size() - m);
    for (int c = 0; c < g.k; ++c) {
      Letter x = static_cast<Letter>(c);
      if (!extension_safe(tail, x, g.k)) continue;
      Word win = tail.substr(1);
      win.push_back(static_cast<char>(c));
      auto [canon, sigma] = trim_canonicalize(win, g.k);
      if (g.index_of(canon) < 0) continue;
      w.push_back(static_cast<char>(c));
      rec();
      w.pop_back();
    }
  };
  rec();
  return total;
}

}  // namespace dejean
