#include "dejean/language_graph.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

namespace dejean {

std::size_t ClassGraph::edge_count() const {
  std::size_t n = 0;
  for (const auto& es : out) n += es.size();
  return n;
}

int ClassGraph::index_of(const Word& rep) const {
  auto it = std::lower_bound(reps.begin(), reps.end(), rep);
  if (it == reps.end() || *it != rep) return -1;
  return static_cast<int>(it - reps.begin());
}

void ClassGraph::rebuild_reverse() {
  in.assign(reps.size(), {});
  for (std::size_t c = 0; c < out.size(); ++c)
    for (const QuotientEdge& e : out[c])
      in[e.to].push_back({static_cast<std::int32_t>(c), e.tau});
}

static void require_window_params(int k, int m) {
  if (k < 2 || k > 10) throw ConfigError("k out of range: " + std::to_string(k));
  if (m < k) throw ConfigError("window length must be at least k");
}

std::vector<Word> trimmed_window_words(int k, int m, Guard& guard) {
  require_window_params(k, m);
  Word tail(static_cast<std::size_t>(k - 1), 0);
  for (int i = 0; i < k - 1; ++i) tail[i] = static_cast<char>(i);
  std::vector<Word> out;
  std::function<void(Word&)> grow = [&](Word& w) {
    guard.bump();
    if (static_cast<int>(w.size()) == m) {
      out.push_back(w);
      return;
    }
    for (int c = 0; c < k; ++c) {
      if (prepend_safe(static_cast<Letter>(c), w, k)) {
        Word cw(1, static_cast<char>(c));
        cw += w;
        grow(cw);
      }
    }
  };
  grow(tail);
  std::sort(out.begin(), out.end());
  return out;
}

ClassGraph build_window_class_graph(int k, int m, Guard& guard) {
  ClassGraph g;
  g.k = k;
  g.m = m;
  g.reps = trimmed_window_words(k, m, guard);
  g.out.assign(g.reps.size(), {});
  for (std::size_t i = 0; i < g.reps.size(); ++i) {
    for (int c = 0; c < k; ++c) {
      if (!extension_safe(g.reps[i], static_cast<Letter>(c), k)) continue;
      Word shifted = g.reps[i].substr(1);
      shifted.push_back(static_cast<char>(c));
      auto [canon, sigma] = trim_canonicalize(shifted, k);
      int j = g.index_of(canon);
      if (j < 0)
        throw VerifyError("shift left the window language: " +
                          word_text(shifted));
      g.out[i].push_back({j, inverse(sigma)});
    }
    std::sort(g.out[i].begin(), g.out[i].end(),
              [](const QuotientEdge& a, const QuotientEdge& b) {
                return a.to < b.to;
              });
    for (std::size_t e = 1; e < g.out[i].size(); ++e)
      if (g.out[i][e - 1].to == g.out[i][e].to)
        throw VerifyError("duplicate shift target from class " +
                          std::to_string(i));
  }
  g.rebuild_reverse();
  return g;
}

ClassGraph erode_to_core(const ClassGraph& full) {
  std::size_t n = full.s();
  auto fixpoint = [&](bool forward) {
    std::vector<char> alive(n, 1);
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t v = 0; v < n; ++v) {
        if (!alive[v]) continue;
        const auto& es = forward ? full.out[v] : full.in[v];
        bool has = false;
        for (const auto& e : es)
          if (alive[e.to]) {
            has = true;
            break;
          }
        if (!has) {
          alive[v] = 0;
          changed = true;
        }
      }
    }
    return alive;
  };
  std::vector<char> af = fixpoint(true);
  std::vector<char> ab = fixpoint(false);

  ClassGraph g;
  g.k = full.k;
  g.m = full.m;
  std::vector<int> newidx(n, -1);
  for (std::size_t v = 0; v < n; ++v)
    if (af[v] && ab[v]) {
      newidx[v] = static_cast<int>(g.reps.size());
      g.reps.push_back(full.reps[v]);
    }
  g.out.assign(g.reps.size(), {});
  for (std::size_t v = 0; v < n; ++v) {
    if (newidx[v] < 0) continue;
    for (const auto& e : full.out[v])
      if (newidx[e.to] >= 0)
        g.out[newidx[v]].push_back({newidx[e.to], e.tau});
  }
  g.rebuild_reverse();
  return g;
}

ClassGraph build_core_class_graph(int k, int m, Guard& guard) {
  return erode_to_core(build_window_class_graph(k, m, guard));
}

void validate_class_graph(const ClassGraph& g) {
  require_window_params(g.k, g.m);
  if (g.out.size() != g.reps.size())
    throw VerifyError("edge table size mismatch");
  for (std::size_t i = 0; i < g.reps.size(); ++i) {
    const Word& w = g.reps[i];
    if (static_cast<int>(w.size()) != g.m)
      throw VerifyError("representative of wrong length");
    if (!is_trimmed(w, g.k) || !is_dejean(w, g.k))
      throw VerifyError("representative not a trimmed admissible window: " +
                        word_text(w));
    if (i > 0 && !(g.reps[i - 1] < w))
      throw VerifyError("representatives not sorted");
  }
  for (std::size_t i = 0; i < g.reps.size(); ++i) {
    for (std::size_t e = 0; e < g.out[i].size(); ++e) {
      const QuotientEdge& ed = g.out[i][e];
      if (ed.to < 0 || ed.to >= static_cast<int>(g.reps.size()))
        throw VerifyError("edge target out of range");
      if (e > 0 && g.out[i][e - 1].to >= ed.to)
        throw VerifyError("edges not sorted by unique target");
      if (ed.tau.k != g.k) throw VerifyError("voltage arity mismatch");
      Word shifted = apply_perm(ed.tau, g.reps[ed.to]);
      if (shifted.substr(0, g.m - 1) != g.reps[i].substr(1))
        throw VerifyError("edge does not realize a one-letter shift");
      if (!extension_safe(g.reps[i],
                          static_cast<Letter>(shifted[g.m - 1]), g.k))
        throw VerifyError("edge extension is not admissible");
    }
    // No admissible shift between present classes may be missing.
    for (int c = 0; c < g.k; ++c) {
      if (!extension_safe(g.reps[i], static_cast<Letter>(c), g.k)) continue;
      Word shifted = g.reps[i].substr(1);
      shifted.push_back(static_cast<char>(c));
      auto [canon, sigma] = trim_canonicalize(shifted, g.k);
      int j = g.index_of(canon);
      if (j < 0) continue;
      bool found = false;
      for (const auto& ed : g.out[i])
        if (ed.to == j && apply_perm(ed.tau, g.reps[j]) == shifted) found = true;
      if (!found)
        throw VerifyError("missing edge for admissible shift from class " +
                          std::to_string(i));
    }
  }
}

void save_class_graph(const ClassGraph& g, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot write " + path);
  f << "DEJG1 " << g.k << " " << g.m << " " << g.s() << " " << g.lift_size()
    << "\n";
  for (const Word& w : g.reps) f << word_text(w) << "\n";
  for (std::size_t i = 0; i < g.out.size(); ++i)
    for (const QuotientEdge& e : g.out[i])
      f << i << " " << e.to << " " << perm_image_text(e.tau) << "\n";
  if (!f) throw ConfigError("write failed: " + path);
}

ClassGraph load_class_graph(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot read " + path);
  std::string magic;
  ClassGraph g;
  std::size_t s = 0;
  std::uint64_t shat = 0;
  f >> magic >> g.k >> g.m >> s >> shat;
  if (magic != "DEJG1") throw VerifyError("bad graph cache magic in " + path);
  if (shat != factorial(g.k) * s)
    throw VerifyError("inconsistent class counts in " + path);
  g.reps.reserve(s);
  for (std::size_t i = 0; i < s; ++i) {
    std::string line;
    f >> line;
    g.reps.push_back(word_from_text(line, g.k));
  }
  g.out.assign(s, {});
  std::size_t i, j;
  std::string tau;
  while (f >> i >> j >> tau) {
    if (i >= s || j >= s) throw VerifyError("edge index out of range in cache");
    g.out[i].push_back({static_cast<std::int32_t>(j),
                        perm_from_image_text(tau, g.k)});
  }
  g.rebuild_reverse();
  validate_class_graph(g);
  return g;
}

std::vector<Word> all_dejean_words(int k, std::size_t len, Guard& guard) {
  std::vector<Word> out;
  Word w;
  std::function<void()> rec = [&]() {
    guard.bump();
    if (w.size() == len) {
      out.push_back(w);
      return;
    }
    for (int c = 0; c < k; ++c) {
      if (extension_safe(w, static_cast<Letter>(c), k)) {
        w.push_back(static_cast<char>(c));
        rec();
        w.pop_back();
      }
    }
  };
  rec();
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Word> core_window_words(int k, int m, Guard& guard) {
  require_window_params(k, m);
  std::vector<Word> base = all_dejean_words(k, static_cast<std::size_t>(m), guard);
  std::set<Word> all(base.begin(), base.end());

  auto fixpoint = [&](bool forward) {
    std::set<Word> alive = all;
    bool changed = true;
    while (changed) {
      changed = false;
      std::vector<Word> doomed;
      for (const Word& w : alive) {
        bool has = false;
        for (int c = 0; c < k && !has; ++c) {
          if (forward) {
            if (!extension_safe(w, static_cast<Letter>(c), k)) continue;
            Word nxt = w.substr(1);
            nxt.push_back(static_cast<char>(c));
            has = alive.count(nxt) > 0;
          } else {
            if (!prepend_safe(static_cast<Letter>(c), w, k)) continue;
            Word prv(1, static_cast<char>(c));
            prv += w.substr(0, w.size() - 1);
            has = alive.count(prv) > 0;
          }
        }
        if (!has) doomed.push_back(w);
      }
      for (const Word& w : doomed) {
        alive.erase(w);
        changed = true;
      }
    }
    return alive;
  };

  std::set<Word> af = fixpoint(true);
  std::set<Word> ab = fixpoint(false);
  std::vector<Word> out;
  for (const Word& w : af)
    if (ab.count(w)) out.push_back(w);
  return out;  // set iteration is sorted
}

ClassGraph quotient_word_graph(const std::vector<Word>& words, int k, int m) {
  require_window_params(k, m);
  std::set<Word> members(words.begin(), words.end());
  ClassGraph g;
  g.k = k;
  g.m = m;
  for (const Word& w : words)
    if (is_trimmed(w, k)) g.reps.push_back(w);
  std::sort(g.reps.begin(), g.reps.end());
  g.out.assign(g.reps.size(), {});
  for (std::size_t i = 0; i < g.reps.size(); ++i) {
    for (int c = 0; c < k; ++c) {
      if (!extension_safe(g.reps[i], static_cast<Letter>(c), k)) continue;
      Word shifted = g.reps[i].substr(1);
      shifted.push_back(static_cast<char>(c));
      if (!members.count(shifted)) continue;
      auto [canon, sigma] = trim_canonicalize(shifted, k);
      int j = g.index_of(canon);
      if (j < 0)
        throw VerifyError("window set not permutation-closed at " +
                          word_text(shifted));
      g.out[i].push_back({j, inverse(sigma)});
    }
    std::sort(g.out[i].begin(), g.out[i].end(),
              [](const QuotientEdge& a, const QuotientEdge& b) {
                return a.to < b.to;
              });
  }
  g.rebuild_reverse();
  return g;
}

}  // namespace dejean
