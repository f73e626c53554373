#include "dejean/words.hpp"

#include <vector>

namespace dejean {

std::string word_text(const Word& w) {
  std::string s(w.size(), '?');
  for (std::size_t i = 0; i < w.size(); ++i)
    s[i] = static_cast<char>('a' + static_cast<unsigned char>(w[i]));
  return s;
}

Word word_from_text(const std::string& s, int k) {
  Word w(s.size(), 0);
  for (std::size_t i = 0; i < s.size(); ++i) {
    int v = s[i] - 'a';
    if (v < 0 || v >= k)
      throw ConfigError("letter out of range for k=" + std::to_string(k) +
                        ": '" + s + "'");
    w[i] = static_cast<char>(v);
  }
  return w;
}

std::size_t minimal_period(const Word& w) {
  // Border array (KMP failure function); period = n - longest border.
  std::size_t n = w.size();
  if (n == 0) return 0;
  std::vector<std::size_t> b(n, 0);
  for (std::size_t i = 1; i < n; ++i) {
    std::size_t j = b[i - 1];
    while (j > 0 && w[i] != w[j]) j = b[j - 1];
    if (w[i] == w[j]) ++j;
    b[i] = j;
  }
  return n - b[n - 1];
}

Rational word_exponent(const Word& w) {
  if (w.empty()) throw ConfigError("exponent of empty word");
  Rational e(static_cast<unsigned long>(w.size()),
             static_cast<unsigned long>(minimal_period(w)));
  e.canonicalize();
  return e;
}

bool is_prohibited(std::size_t len, std::size_t period, int k) {
  return len * static_cast<std::size_t>(k - 1) >
         period * static_cast<std::size_t>(k);
}

std::size_t minimal_prohibited_window(std::size_t period, int k) {
  return (static_cast<std::size_t>(k) * period) /
             static_cast<std::size_t>(k - 1) +
         1;
}

bool is_dejean(const Word& w, int k) {
  std::size_t n = w.size();
  for (std::size_t p = 1; p < n; ++p) {
    // A run of r matches at distance p yields a window of length r+p with
    // period p; admissible iff r <= floor(p/(k-1)).
    std::size_t cap = p / static_cast<std::size_t>(k - 1);
    std::size_t run = 0;
    for (std::size_t i = p; i < n; ++i) {
      if (w[i] == w[i - p]) {
        if (++run > cap) return false;
      } else {
        run = 0;
      }
    }
  }
  return true;
}

bool extension_safe(const Word& w, Letter c, int k) {
  // u = w+c; only windows ending at the last position are new.
  std::size_t n = w.size();
  auto at = [&](std::size_t i) -> Letter {
    return i == n ? c : static_cast<Letter>(w[i]);
  };
  for (std::size_t p = 1; p <= n; ++p) {
    std::size_t cap = p / static_cast<std::size_t>(k - 1);
    std::size_t run = 0;
    for (std::size_t i = n; i >= p; --i) {
      if (at(i) != at(i - p)) break;
      if (++run > cap) return false;
      if (i == p) break;
    }
  }
  return true;
}

bool prepend_safe(Letter c, const Word& w, int k) {
  // u = c+w; only windows starting at position 0 are new.
  std::size_t n = w.size();
  auto at = [&](std::size_t i) -> Letter {
    return i == 0 ? c : static_cast<Letter>(w[i - 1]);
  };
  for (std::size_t p = 1; p <= n; ++p) {
    std::size_t cap = p / static_cast<std::size_t>(k - 1);
    std::size_t run = 0;
    for (std::size_t i = 0; i + p <= n; ++i) {
      if (at(i) != at(i + p)) break;
      if (++run > cap) return false;
    }
  }
  return true;
}

bool is_rarefied(const Word& w, int k) {
  std::size_t n = w.size();
  std::size_t d = static_cast<std::size_t>(k - 1);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n && j < i + d; ++j)
      if (w[i] == w[j]) return false;
  return true;
}

bool is_trimmed(const Word& w, int k) {
  std::size_t d = static_cast<std::size_t>(k - 1);
  if (w.size() < d) return false;
  for (std::size_t i = 0; i < d; ++i)
    if (static_cast<unsigned char>(w[w.size() - d + i]) != i) return false;
  return true;
}

std::pair<Word, Perm> trim_canonicalize(const Word& w, int k) {
  std::size_t d = static_cast<std::size_t>(k - 1);
  if (w.size() < d)
    throw ConfigError("trim_canonicalize: word shorter than k-1");
  Perm sigma;
  sigma.k = static_cast<std::uint8_t>(k);
  std::array<bool, 10> mapped{};
  std::array<bool, 10> used_target{};
  for (std::size_t i = 0; i < d; ++i) {
    unsigned char a = static_cast<unsigned char>(w[w.size() - d + i]);
    if (mapped[a])
      throw ConfigError("trim_canonicalize: trailing letters not distinct in " +
                        word_text(w));
    mapped[a] = true;
    sigma.map[a] = static_cast<std::uint8_t>(i);
    used_target[i] = true;
  }
  for (int a = 0; a < k; ++a)
    if (!mapped[a]) sigma.map[a] = static_cast<std::uint8_t>(k - 1);
  return {apply_perm(sigma, w), sigma};
}

Word apply_perm(const Perm& g, const Word& w) {
  Word out(w.size(), 0);
  for (std::size_t i = 0; i < w.size(); ++i)
    out[i] = static_cast<char>(g.map[static_cast<unsigned char>(w[i])]);
  return out;
}

}  // namespace dejean
