#include "dejean/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>

namespace dejean {

std::vector<std::vector<int>> strongly_connected_components(const ClassGraph& g) {
  int n = static_cast<int>(g.s());
  std::vector<int> index(n, -1), low(n, 0), on(n, 0), stack;
  std::vector<std::vector<int>> comps;
  int counter = 0;
  std::function<void(int)> dfs = [&](int v) {
    index[v] = low[v] = counter++;
    stack.push_back(v);
    on[v] = 1;
    for (const auto& e : g.out[v]) {
      if (index[e.to] < 0) {
        dfs(e.to);
        low[v] = std::min(low[v], low[e.to]);
      } else if (on[e.to]) {
        low[v] = std::min(low[v], index[e.to]);
      }
    }
    if (low[v] == index[v]) {
      comps.emplace_back();
      for (;;) {
        int w = stack.back();
        stack.pop_back();
        on[w] = 0;
        comps.back().push_back(w);
        if (w == v) break;
      }
    }
  };
  for (int v = 0; v < n; ++v)
    if (index[v] < 0) dfs(v);
  return comps;
}

static std::vector<double> iterate_shifted(const ClassGraph& g, int max_iter,
                                           double tol, double* rho_out) {
  std::size_t n = g.s();
  std::vector<double> x(n, 1.0), nx(n, 0.0);
  double rho = 0;
  for (int it = 0; it < max_iter; ++it) {
    // nx = (A + I) x, then normalize to max 1.
    for (std::size_t v = 0; v < n; ++v) {
      double acc = x[v];
      for (const auto& e : g.out[v]) acc += x[e.to];
      nx[v] = acc;
    }
    double mx = 0;
    for (double v : nx) mx = std::max(mx, v);
    double diff = 0;
    for (std::size_t v = 0; v < n; ++v) {
      nx[v] /= mx;
      diff = std::max(diff, std::fabs(nx[v] - x[v]));
    }
    x.swap(nx);
    rho = mx - 1.0;
    if (diff < tol && it > 3) break;
  }
  if (rho_out) *rho_out = rho;
  return x;
}

FloatSpectral power_iteration(const ClassGraph& g, int max_iter, double tol) {
  auto comps = strongly_connected_components(g);
  if (comps.size() != 1) {
    std::string sizes;
    for (const auto& c : comps) {
      if (!sizes.empty()) sizes += ",";
      sizes += std::to_string(c.size());
    }
    throw ConfigError("class graph is not strongly connected (" +
                      std::to_string(comps.size()) +
                      " components of sizes " + sizes +
                      "); growth certification needs one component");
  }
  FloatSpectral r;
  r.x = iterate_shifted(g, max_iter, tol, &r.rho);
  double mn = r.x[0];
  for (double v : r.x) mn = std::min(mn, v);
  for (double& v : r.x) v /= mn;
  return r;
}

static std::vector<Rational> snap_positive(const std::vector<double>& x) {
  // Round onto the 2^-48 grid; clamp so every component stays positive.
  std::vector<Rational> out;
  out.reserve(x.size());
  BigInt den = BigInt(1) << 48;
  for (double v : x) {
    double scaled = std::ldexp(v, 48);
    if (!(scaled < 9.2e18))
      throw ConfigError("spectral vector component too large to snap");
    long num = std::lround(scaled);
    if (num < 1) num = 1;
    Rational q(BigInt(num), den);
    q.canonicalize();
    out.push_back(q);
  }
  return out;
}

PerronCertificate certify_growth(const ClassGraph& g,
                                 const std::vector<double>& x) {
  if (x.size() != g.s()) throw ConfigError("vector size mismatch");
  PerronCertificate cert;
  cert.x_hat = snap_positive(x);
  bool first = true;
  for (std::size_t v = 0; v < g.s(); ++v) {
    Rational acc(0);
    for (const auto& e : g.out[v]) acc += cert.x_hat[e.to];
    Rational ratio = acc / cert.x_hat[v];
    if (first || ratio < cert.r_hat) cert.r_hat = ratio;
    first = false;
  }
  Rational mx = cert.x_hat[0], mn = cert.x_hat[0];
  for (const Rational& q : cert.x_hat) {
    mx = std::max(mx, q);
    mn = std::min(mn, q);
  }
  cert.mu_hat = mx / mn;
  if (!(cert.r_hat > 1))
    throw ConfigError(
        "certified growth ratio is not above 1; the window length is too "
        "small for this alphabet");
  return cert;
}

PerronCertificate certify_growth(const ClassGraph& g) {
  return certify_growth(g, power_iteration(g).x);
}

Rational upper_bound_growth(int k, int m, Guard& guard) {
  ClassGraph full = build_window_class_graph(k, m, guard);
  std::size_t n = full.s();
  // Short shifted iteration to estimate the dominant ratio.  The horizon is
  // capped so transient components cannot decay to zero under the
  // max-normalization.
  double rho = 0;
  iterate_shifted(full, 300, 1e-13, &rho);
  double u0 = std::max(rho, 1e-3) * (1.0 + 2e-5) + 1e-12;
  // Solve y = 1 + (A y) / u0 by monotone fixed-point iteration from y = 1.
  // The iterates increase and stay bounded exactly when u0 exceeds the
  // dominant ratio; on divergence, retry with a slightly larger u0.  Every
  // component stays >= 1, so nothing underflows even when the graph has
  // transient parts.
  std::vector<double> y, ny(n, 0.0);
  for (;;) {
    y.assign(n, 1.0);
    bool diverged = false;
    for (int it = 0; it < 200000; ++it) {
      double diff = 0, mx = 0;
      for (std::size_t v = 0; v < n; ++v) {
        double acc = 0;
        for (const auto& e : full.out[v]) acc += y[e.to];
        ny[v] = 1.0 + acc / u0;
        diff = std::max(diff, ny[v] - y[v]);
        mx = std::max(mx, ny[v]);
      }
      y.swap(ny);
      if (!(mx < 1e100)) {
        diverged = true;
        break;
      }
      if (diff < 1e-11) break;
    }
    if (!diverged) break;
    u0 *= 1.001;
  }
  // Exact worst-case ratio at the iterate.  Doubles convert to rationals
  // exactly, and the maximum row ratio of any positive vector bounds the
  // growth of every component of the graph from above.
  std::vector<Rational> yq;
  yq.reserve(n);
  for (double v : y) yq.push_back(rational_from_double(v));
  Rational best(0);
  for (std::size_t v = 0; v < n; ++v) {
    Rational acc(0);
    for (const auto& e : full.out[v]) acc += yq[e.to];
    Rational ratio = acc / yq[v];
    if (ratio > best) best = ratio;
  }
  return best;
}

LiftRows::LiftRows(const ClassGraph& g) : g_(g) {
  K_ = static_cast<std::uint32_t>(factorial(g.k));
  cells_ = static_cast<std::size_t>(g.s()) * K_;
  perms_.reserve(K_);
  for (std::uint32_t r = 0; r < K_; ++r) perms_.push_back(perm_unrank(g.k, r));
  std::map<std::uint32_t, int> table_of;  // tau rank -> composition table id
  for (std::size_t c = 0; c < g.s(); ++c) {
    for (const auto& e : g.out[c]) {
      std::uint32_t tr = perm_rank(e.tau);
      auto it = table_of.find(tr);
      int id;
      if (it == table_of.end()) {
        id = static_cast<int>(comp_.size());
        table_of.emplace(tr, id);
        std::vector<std::uint32_t> tab(K_);
        for (std::uint32_t r = 0; r < K_; ++r)
          tab[r] = perm_rank(compose(perms_[r], e.tau));
        comp_.push_back(std::move(tab));
      } else {
        id = it->second;
      }
      edges_.push_back({static_cast<std::int32_t>(c), e.to, id});
    }
  }
}

std::vector<std::uint64_t> LiftRows::unit_row(int c0) const {
  std::vector<std::uint64_t> row(cells_, 0);
  row[cell(c0, 0)] = 1;
  return row;
}

std::vector<double> LiftRows::unit_row_rounded(int c0) const {
  std::vector<double> row(cells_, 0.0);
  row[cell(c0, 0)] = 1.0;
  return row;
}

void LiftRows::step_forward(std::vector<std::uint64_t>& row,
                            std::vector<std::uint64_t>& scratch) const {
  scratch.assign(cells_, 0);
  for (const E& e : edges_) {
    const std::uint32_t* tab = comp_[e.table].data();
    const std::uint64_t* src = row.data() + cell(e.from, 0);
    std::uint64_t* dst = scratch.data() + cell(e.to, 0);
    for (std::uint32_t r = 0; r < K_; ++r) {
      std::uint64_t v = src[r];
      if (!v) continue;
      std::uint64_t& d = dst[tab[r]];
      d += v;
      if (d < v)
        throw GuardError(
            "exact path counter overflowed 64 bits; rerun in rounded mode");
    }
  }
  row.swap(scratch);
}

void LiftRows::step_forward(std::vector<double>& row,
                            std::vector<double>& scratch) const {
  scratch.assign(cells_, 0.0);
  for (const E& e : edges_) {
    const std::uint32_t* tab = comp_[e.table].data();
    const double* src = row.data() + cell(e.from, 0);
    double* dst = scratch.data() + cell(e.to, 0);
    for (std::uint32_t r = 0; r < K_; ++r) {
      double v = src[r];
      if (v == 0.0) continue;
      double& d = dst[tab[r]];
      // Integer sums below 2^52 are exact; above that, pad one ulp upward so
      // the row stays an upper bound on the exact integer counts.
      d = (d < 4503599627370496.0 && v < 4503599627370496.0)
              ? d + v
              : std::nextafter(d + v, 1e308);
    }
  }
  row.swap(scratch);
}

void LiftRows::step_backward(std::vector<std::uint64_t>& row,
                             std::vector<std::uint64_t>& scratch) const {
  scratch.assign(cells_, 0);
  for (const E& e : edges_) {
    const std::uint32_t* tab = comp_[e.table].data();
    const std::uint64_t* src = row.data() + cell(e.to, 0);
    std::uint64_t* dst = scratch.data() + cell(e.from, 0);
    for (std::uint32_t r = 0; r < K_; ++r) {
      std::uint64_t v = src[tab[r]];
      if (!v) continue;
      std::uint64_t& d = dst[r];
      d += v;
      if (d < v)
        throw GuardError(
            "exact path counter overflowed 64 bits; rerun in rounded mode");
    }
  }
  row.swap(scratch);
}

void LiftRows::step_backward(std::vector<double>& row,
                             std::vector<double>& scratch) const {
  scratch.assign(cells_, 0.0);
  for (const E& e : edges_) {
    const std::uint32_t* tab = comp_[e.table].data();
    const double* src = row.data() + cell(e.to, 0);
    double* dst = scratch.data() + cell(e.from, 0);
    for (std::uint32_t r = 0; r < K_; ++r) {
      double v = src[tab[r]];
      if (v == 0.0) continue;
      double& d = dst[r];
      d = (d < 4503599627370496.0 && v < 4503599627370496.0)
              ? d + v
              : std::nextafter(d + v, 1e308);
    }
  }
  row.swap(scratch);
}

}  // namespace dejean
