#include "dejean/corrections.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "dejean/words.hpp"

namespace dejean {

PeriodGeometry period_geometry(int k, int m, int j) {
  if (k < 2 || k > 10) throw ConfigError("k out of range: " + std::to_string(k));
  if (m < k) throw ConfigError("window length must be at least k");
  if (j < 1) throw ConfigError("period must be positive");
  PeriodGeometry geo;
  geo.j = j;
  geo.chi = j / (k - 1) + 1;
  geo.h_len = static_cast<int>(static_cast<long long>(k) * j / (k - 1)) + 1;
  geo.t = j + geo.chi + 1;
  if (geo.t != geo.h_len + 1)
    throw VerifyError("period geometry identity failed at j=" + std::to_string(j));
  geo.d_exact = geo.h_len - m;
  geo.d_weak = geo.chi <= m ? j - 1 : geo.h_len - 1 - m;
  geo.n_prime_offset = j / (k - 1);
  geo.n_dblprime_offset = geo.h_len - 1;
  return geo;
}

int first_free_period(int k, int m) {
  if (k < 2 || k > 10) throw ConfigError("k out of range: " + std::to_string(k));
  if (m <= k) throw ConfigError("first_free_period requires m > k");
  return (m + 1) - (m + 1) / k;
}

namespace {

// Periodic prefix runs of v[pos..t-1]. Periods below p_skip sit inside a
// window merge and are already excluded by the edge walk. In relaxed mode a
// prohibited prefix is tolerated when its shortest prohibited form ends
// exactly at the last letter: such a factor lies in neither of the two
// shortened copies that must stay admissible.
bool prefix_runs_admissible(const Word& v, int pos, int k, bool strict,
                            int p_skip) {
  const int len = static_cast<int>(v.size()) - pos;
  for (int p = p_skip; p < len; ++p) {
    const int thr = static_cast<int>(minimal_prohibited_window(p, k));
    if (thr > len) break;
    int q = 0;
    while (q + p < len && v[pos + q] == v[pos + q + p]) ++q;
    if (q + p < thr) continue;
    if (strict) return false;
    if (pos + thr < static_cast<int>(v.size())) return false;
  }
  return true;
}

}  // namespace

ZetaRow enumerate_period_contexts(const ClassGraph& g, int j, int base,
                                  Guard& guard) {
  const int k = g.k, m = g.m;
  const int p0 = first_free_period(k, m);
  if (j < p0)
    throw ConfigError("period " + std::to_string(j) +
                      " is already excluded by the window graph");
  if (base < 0 || base >= static_cast<int>(g.s()))
    throw ConfigError("class index out of range");
  const PeriodGeometry geo = period_geometry(k, m, j);
  const int t = geo.t, chi = geo.chi;

  ZetaRow row;
  row.j = j;
  row.base = base;
  row.by_prefix_class.assign(g.s(), BigInt(0));

  Word v(static_cast<std::size_t>(t), Letter(0));
  const Word& w = g.reps[base];
  std::copy(w.begin(), w.end(), v.begin() + (t - m));

  // Pinned positions that land inside the fixed suffix must already agree.
  for (int pos = std::max(1, t - m); pos <= chi; ++pos)
    if (v[pos] != v[pos + j]) return row;

  std::function<void(int, int, const Perm&)> rec = [&](int i, int cls,
                                                       const Perm& vol) {
    guard.bump();
    if (i == 0) {
      if (v[0] == v[j])
        throw VerifyError("context word extends its own period");
      auto [canon, perm] = trim_canonicalize(v.substr(0, m), k);
      (void)perm;
      int l = g.index_of(canon);
      if (l < 0) throw VerifyError("context prefix fell outside the graph");
      row.by_prefix_class[l] += 1;
      row.context_count += 1;
      return;
    }
    const int pos = i - 1;
    const bool pinned = pos >= 1 && pos <= chi;
    for (const QuotientEdge& e : g.in[cls]) {
      const Perm vol2 = compose(vol, inverse(e.tau));
      const Letter y = vol2(g.reps[e.to][0]);
      if (pinned && y != v[pos + j]) continue;
      v[pos] = y;
      if (!prefix_runs_admissible(v, pos, k, /*strict=*/pos >= 2, p0))
        continue;
      rec(pos, e.to, vol2);
    }
  };
  rec(t - m, base, Perm::identity(k));
  return row;
}

std::map<int, std::vector<Rational>> eta_prime_table(
    const ClassGraph& g, int p1, const std::vector<ZetaRow>& rows,
    const std::vector<Rational>& x_hat) {
  const std::size_t s = g.s();
  if (x_hat.size() != s) throw ConfigError("weight vector size mismatch");
  const int p0 = first_free_period(g.k, g.m);
  std::map<int, std::vector<Rational>> eta;
  for (int j = p0; j <= p1; ++j) {
    const int d = period_geometry(g.k, g.m, j).d_exact;
    if (!eta.emplace(d, std::vector<Rational>(s, Rational(0))).second)
      throw VerifyError("enumerated shifts collide at d=" + std::to_string(d));
  }
  std::vector<char> seen(s * std::max(0, p1 - p0 + 1), 0);
  for (const ZetaRow& row : rows) {
    if (row.j < p0 || row.j > p1)
      throw ConfigError("context row for period " + std::to_string(row.j) +
                        " outside the enumerated range");
    if (row.by_prefix_class.size() != s)
      throw ConfigError("context row size mismatch");
    char& mark = seen[(row.j - p0) * s + row.base];
    if (mark) throw ConfigError("duplicate context row");
    mark = 1;
    const int d = period_geometry(g.k, g.m, row.j).d_exact;
    std::vector<Rational>& acc = eta.at(d);
    for (std::size_t l = 0; l < s; ++l)
      if (row.by_prefix_class[l] != 0)
        acc[l] += x_hat[row.base] * Rational(row.by_prefix_class[l]);
  }
  for (char c : seen)
    if (!c) throw ConfigError("missing context row for some (period, class)");
  return eta;
}

namespace {

Rational exact_cell(const RowView& view, std::size_t idx) {
  if (view.exact) return Rational(BigInt((*view.exact)[idx]));
  return rational_from_double((*view.rounded)[idx]);
}

void require_rows(const LiftRows& lift, const std::vector<RowView>& rows) {
  if (rows.size() != lift.graph().s())
    throw ConfigError("need one row per class");
  for (const RowView& r : rows) {
    if (!!r.exact == !!r.rounded)
      throw ConfigError("row view must carry exactly one representation");
    const std::size_t n = r.exact ? r.exact->size() : r.rounded->size();
    if (n != lift.cells()) throw ConfigError("row size mismatch");
  }
}

bool shares_suffix(const Word& a, const Word& b, int len) {
  return std::equal(a.end() - len, a.end(), b.end() - len);
}

}  // namespace

std::vector<Rational> xi_weak_small(const LiftRows& lift, int j,
                                    const std::vector<Rational>& x_hat,
                                    const std::vector<RowView>& fwd_at_j) {
  const ClassGraph& g = lift.graph();
  const std::size_t s = g.s();
  if (x_hat.size() != s) throw ConfigError("weight vector size mismatch");
  require_rows(lift, fwd_at_j);
  const PeriodGeometry geo = period_geometry(g.k, g.m, j);
  if (geo.chi < g.k - 1 || geo.chi > g.m)
    throw ConfigError("period overhang outside the suffix-matching range");
  std::vector<Rational> xi(s, Rational(0));
  for (std::size_t l = 0; l < s; ++l)
    for (std::size_t i = 0; i < s; ++i) {
      if (!shares_suffix(g.reps[i], g.reps[l], geo.chi)) continue;
      const Rational cellv =
          exact_cell(fwd_at_j[l], lift.cell(static_cast<int>(i), 0));
      if (cellv != 0) xi[l] += x_hat[i] * cellv;
    }
  return xi;
}

std::vector<Rational> xi_weak_large(const LiftRows& lift, int j,
                                    const std::vector<Rational>& x_hat,
                                    const std::vector<RowView>& fwd_rows,
                                    const std::vector<RowView>& bwd_rows) {
  const ClassGraph& g = lift.graph();
  const std::size_t s = g.s();
  if (x_hat.size() != s) throw ConfigError("weight vector size mismatch");
  require_rows(lift, fwd_rows);
  require_rows(lift, bwd_rows);
  const PeriodGeometry geo = period_geometry(g.k, g.m, j);
  if (geo.chi <= g.m)
    throw ConfigError("period overhang does not exceed the window length");
  const std::uint32_t K = lift.kfact();
  std::vector<Rational> xi(s, Rational(0));
  for (std::size_t i = 0; i < s; ++i) {
    const RowView& f = fwd_rows[i];
    const RowView& b = bwd_rows[i];
    if (!!f.exact != !!b.exact)
      throw ConfigError("mixed row representations for one class");
    for (std::size_t l = 0; l < s; ++l) {
      const std::size_t off = lift.cell(static_cast<int>(l), 0);
      Rational block(0);
      if (f.exact) {
        BigInt acc(0);
        for (std::uint32_t r = 0; r < K; ++r) {
          const std::uint64_t bv = (*b.exact)[off + r];
          const std::uint64_t fv = (*f.exact)[off + r];
          if (bv && fv) acc += BigInt(bv) * BigInt(fv);
        }
        block = Rational(acc);
      } else {
        // Every product and partial sum is nudged upward so the block stays
        // an upper bound on the exact cell-wise sum.
        double acc = 0;
        const double inf = std::numeric_limits<double>::infinity();
        for (std::uint32_t r = 0; r < K; ++r) {
          const double p = (*b.rounded)[off + r] * (*f.rounded)[off + r];
          if (p != 0) acc = std::nextafter(acc + std::nextafter(p, inf), inf);
        }
        block = rational_from_double(acc);
      }
      if (block != 0) xi[l] += x_hat[i] * block;
    }
  }
  return xi;
}

const std::vector<Rational>& OmegaTable::at(int d) const {
  if (d < a || d > b) throw ConfigError("shift outside the correction band");
  return by_shift[static_cast<std::size_t>(d - a)];
}

OmegaTable assemble_omega(
    int k, int m, int p0, int p1, int p2, std::size_t s,
    const std::map<int, std::vector<Rational>>& eta_by_shift,
    const std::map<int, std::vector<Rational>>& xi_by_period) {
  if (p0 != first_free_period(k, m))
    throw ConfigError("enumeration must start at the first free period");
  if (p1 < p0 - 1 || p1 >= p2) throw ConfigError("period split out of order");

  if (p1 >= p0) {
    if (eta_by_shift.size() != static_cast<std::size_t>(p1 - p0 + 1))
      throw ConfigError("enumerated table covers the wrong period range");
  } else if (!eta_by_shift.empty()) {
    throw ConfigError("enumerated table must be empty when no period is enumerated");
  }
  for (int j = p1 + 1; j <= p2; ++j)
    if (!xi_by_period.count(j))
      throw ConfigError("missing path-count coefficients for period " +
                        std::to_string(j));
  if (xi_by_period.size() != static_cast<std::size_t>(p2 - p1))
    throw ConfigError("path-count table covers the wrong period range");

  OmegaTable table;
  int a = period_geometry(k, m, p1 + 1).d_weak;
  int b = period_geometry(k, m, p2).d_weak;
  if (p1 >= p0) {
    a = std::min(a, period_geometry(k, m, p0).d_exact);
    b = std::max(b, period_geometry(k, m, p1).d_exact);
  }
  if (a > b) throw ConfigError("correction band is empty");
  table.a = a;
  table.b = b;
  table.by_shift.assign(static_cast<std::size_t>(b - a + 1),
                        std::vector<Rational>(s, Rational(0)));

  auto add = [&](int d, const std::vector<Rational>& vals) {
    if (vals.size() != s) throw ConfigError("coefficient vector size mismatch");
    if (d < a || d > b)
      throw VerifyError("shift " + std::to_string(d) +
                        " escaped the correction band");
    std::vector<Rational>& row = table.by_shift[static_cast<std::size_t>(d - a)];
    for (std::size_t l = 0; l < s; ++l) {
      if (vals[l] < 0) throw VerifyError("negative correction coefficient");
      row[l] += vals[l];
    }
  };
  for (const auto& [d, vals] : eta_by_shift) add(d, vals);
  for (const auto& [j, vals] : xi_by_period)
    add(period_geometry(k, m, j).d_weak, vals);
  return table;
}

}  // namespace dejean
