#include "dejean/certificate.hpp"

#include <algorithm>
#include <cstddef>
#include <sstream>

namespace dejean {

namespace {

[[noreturn]] void bad(std::size_t line_no, const std::string& why) {
  throw VerifyError("certificate text, line " + std::to_string(line_no + 1) +
                    ": " + why);
}

// Sequential reader over newline-separated records.
struct LineCursor {
  std::vector<std::string> lines;
  std::size_t pos = 0;

  explicit LineCursor(const std::string& text) {
    std::size_t start = 0;
    while (start < text.size()) {
      std::size_t nl = text.find('\n', start);
      if (nl == std::string::npos)
        throw VerifyError("certificate text: missing final newline");
      lines.push_back(text.substr(start, nl - start));
      start = nl + 1;
    }
  }

  bool done() const { return pos >= lines.size(); }
  const std::string& peek() const {
    if (done()) throw VerifyError("certificate text: unexpected end of file");
    return lines[pos];
  }
  std::string take() {
    std::string s = peek();
    ++pos;
    return s;
  }
};

std::vector<std::string> split_fields(const std::string& line,
                                      std::size_t line_no) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < line.size()) {
    std::size_t sp = line.find(' ', i);
    if (sp == std::string::npos) sp = line.size();
    if (sp == i) bad(line_no, "empty field");
    out.push_back(line.substr(i, sp - i));
    i = sp + 1;
  }
  if (!line.empty() && line.back() == ' ') bad(line_no, "trailing space");
  if (out.empty()) bad(line_no, "blank line");
  return out;
}

long long parse_int(const std::string& s, std::size_t line_no) {
  if (s.empty() || (s.size() > 1 && s[0] == '0') ||
      (s[0] == '-'))
    bad(line_no, "malformed integer '" + s + "'");
  for (char ch : s)
    if (ch < '0' || ch > '9') bad(line_no, "malformed integer '" + s + "'");
  try {
    return std::stoll(s);
  } catch (const std::exception&) {
    bad(line_no, "integer out of range '" + s + "'");
  }
}

Rational parse_rat(const std::string& s, std::size_t line_no) {
  try {
    return rational_from_text(s);
  } catch (const std::exception& e) {
    bad(line_no, std::string("malformed rational: ") + e.what());
  }
}

BigInt parse_count(const std::string& s, std::size_t line_no) {
  if (s.empty()) bad(line_no, "empty count");
  for (char ch : s)
    if (ch < '0' || ch > '9') bad(line_no, "malformed count '" + s + "'");
  if (s.size() > 1 && s[0] == '0') bad(line_no, "malformed count '" + s + "'");
  return BigInt(s);
}

}  // namespace

std::string certificate_text(const Certificate& c) {
  std::ostringstream out;
  out << "PARAM " << c.k << ' ' << c.m << ' ' << c.p1 << ' ' << c.p2 << ' '
      << c.n0 << '\n';
  out << "MODE " << (c.truncated ? "truncated" : "default") << '\n';
  out << "R " << rational_text(c.r_hat) << '\n';
  out << "MU " << rational_text(c.mu_hat) << '\n';
  for (std::size_t i = 0; i < c.x_hat.size(); ++i)
    out << "X " << i << ' ' << rational_text(c.x_hat[i]) << '\n';
  for (std::size_t i = 0; i < c.rho.size(); ++i)
    out << "RHO " << (c.rho_a + static_cast<int>(i)) << ' '
        << rational_text(c.rho[i]) << '\n';
  out << "Q " << c.q << '\n';
  out << "ALPHA " << rational_text(c.alpha) << '\n';
  for (std::size_t i = 0; i < c.base.size(); ++i)
    out << "BASE " << (c.m + static_cast<int>(i)) << ' '
        << rational_text(c.base[i]) << '\n';
  out << "HASH omega " << c.omega_hash << '\n';
  return out.str();
}

Certificate parse_certificate(const std::string& text) {
  LineCursor cur(text);
  Certificate c;

  {
    auto f = split_fields(cur.peek(), cur.pos);
    if (f.size() != 6 || f[0] != "PARAM") bad(cur.pos, "expected PARAM line");
    c.k = static_cast<int>(parse_int(f[1], cur.pos));
    c.m = static_cast<int>(parse_int(f[2], cur.pos));
    c.p1 = static_cast<int>(parse_int(f[3], cur.pos));
    c.p2 = static_cast<int>(parse_int(f[4], cur.pos));
    c.n0 = static_cast<int>(parse_int(f[5], cur.pos));
    cur.take();
  }
  {
    auto f = split_fields(cur.peek(), cur.pos);
    if (f.size() != 2 || f[0] != "MODE") bad(cur.pos, "expected MODE line");
    if (f[1] == "truncated")
      c.truncated = true;
    else if (f[1] == "default")
      c.truncated = false;
    else
      bad(cur.pos, "unknown mode '" + f[1] + "'");
    cur.take();
  }
  {
    auto f = split_fields(cur.peek(), cur.pos);
    if (f.size() != 2 || f[0] != "R") bad(cur.pos, "expected R line");
    c.r_hat = parse_rat(f[1], cur.pos);
    cur.take();
  }
  {
    auto f = split_fields(cur.peek(), cur.pos);
    if (f.size() != 2 || f[0] != "MU") bad(cur.pos, "expected MU line");
    c.mu_hat = parse_rat(f[1], cur.pos);
    cur.take();
  }
  while (!cur.done() && cur.peek().rfind("X ", 0) == 0) {
    auto f = split_fields(cur.peek(), cur.pos);
    if (f.size() != 3) bad(cur.pos, "expected X i num/den");
    long long i = parse_int(f[1], cur.pos);
    if (i != static_cast<long long>(c.x_hat.size()))
      bad(cur.pos, "X lines out of order");
    c.x_hat.push_back(parse_rat(f[2], cur.pos));
    cur.take();
  }
  if (c.x_hat.empty()) bad(cur.pos, "no X lines");
  bool first_rho = true;
  while (!cur.done() && cur.peek().rfind("RHO ", 0) == 0) {
    auto f = split_fields(cur.peek(), cur.pos);
    if (f.size() != 3) bad(cur.pos, "expected RHO d num/den");
    long long d = parse_int(f[1], cur.pos);
    if (first_rho) {
      c.rho_a = static_cast<int>(d);
      first_rho = false;
    } else if (d != c.rho_a + static_cast<long long>(c.rho.size())) {
      bad(cur.pos, "RHO shifts not contiguous");
    }
    c.rho.push_back(parse_rat(f[2], cur.pos));
    cur.take();
  }
  if (c.rho.empty()) bad(cur.pos, "no RHO lines");
  {
    auto f = split_fields(cur.peek(), cur.pos);
    if (f.size() != 2 || f[0] != "Q") bad(cur.pos, "expected Q line");
    c.q = static_cast<int>(parse_int(f[1], cur.pos));
    cur.take();
  }
  {
    auto f = split_fields(cur.peek(), cur.pos);
    if (f.size() != 2 || f[0] != "ALPHA") bad(cur.pos, "expected ALPHA line");
    c.alpha = parse_rat(f[1], cur.pos);
    cur.take();
  }
  while (!cur.done() && cur.peek().rfind("BASE ", 0) == 0) {
    auto f = split_fields(cur.peek(), cur.pos);
    if (f.size() != 3) bad(cur.pos, "expected BASE n num/den");
    long long n = parse_int(f[1], cur.pos);
    if (n != c.m + static_cast<long long>(c.base.size()))
      bad(cur.pos, "BASE lengths not contiguous from m");
    c.base.push_back(parse_rat(f[2], cur.pos));
    cur.take();
  }
  if (c.base.empty()) bad(cur.pos, "no BASE lines");
  {
    auto f = split_fields(cur.peek(), cur.pos);
    if (f.size() != 3 || f[0] != "HASH" || f[1] != "omega")
      bad(cur.pos, "expected HASH omega line");
    if (f[2].size() != 64) bad(cur.pos, "hash must be 64 hex digits");
    for (char ch : f[2])
      if (!((ch >= '0' && ch <= '9') || (ch >= 'a' && ch <= 'f')))
        bad(cur.pos, "hash must be lowercase hex");
    c.omega_hash = f[2];
    cur.take();
  }
  if (!cur.done()) bad(cur.pos, "trailing content after HASH line");
  return c;
}

std::string omega_dump_text(const OmegaDump& d) {
  std::ostringstream out;
  for (std::size_t i = 0; i < d.x_hat.size(); ++i)
    out << "XHAT " << i << ' ' << rational_text(d.x_hat[i]) << '\n';
  for (const OmegaDump::ZetaLine& z : d.zeta)
    out << "ZETA " << z.j << ' ' << z.base << ' ' << z.l << ' '
        << z.count.get_str() << '\n';
  for (const OmegaDump::XiLine& x : d.xi)
    out << "XI " << x.j << ' ' << x.l << ' ' << rational_text(x.value) << '\n';
  for (std::size_t r = 0; r < d.omega.size(); ++r)
    for (std::size_t l = 0; l < d.omega[r].size(); ++l)
      out << "OMEGA " << (d.omega_a + static_cast<int>(r)) << ' ' << l << ' '
          << rational_text(d.omega[r][l]) << '\n';
  return out.str();
}

OmegaDump parse_omega_dump(const std::string& text) {
  LineCursor cur(text);
  OmegaDump d;

  while (!cur.done() && cur.peek().rfind("XHAT ", 0) == 0) {
    auto f = split_fields(cur.peek(), cur.pos);
    if (f.size() != 3) bad(cur.pos, "expected XHAT i num/den");
    if (parse_int(f[1], cur.pos) != static_cast<long long>(d.x_hat.size()))
      bad(cur.pos, "XHAT lines out of order");
    d.x_hat.push_back(parse_rat(f[2], cur.pos));
    cur.take();
  }
  if (d.x_hat.empty()) bad(cur.pos, "no XHAT lines");
  const std::size_t s = d.x_hat.size();

  while (!cur.done() && cur.peek().rfind("ZETA ", 0) == 0) {
    auto f = split_fields(cur.peek(), cur.pos);
    if (f.size() != 5) bad(cur.pos, "expected ZETA j base l count");
    OmegaDump::ZetaLine z;
    z.j = static_cast<int>(parse_int(f[1], cur.pos));
    z.base = static_cast<int>(parse_int(f[2], cur.pos));
    z.l = static_cast<int>(parse_int(f[3], cur.pos));
    z.count = parse_count(f[4], cur.pos);
    if (z.count == 0) bad(cur.pos, "ZETA lines must be nonzero");
    if (!d.zeta.empty()) {
      const OmegaDump::ZetaLine& p = d.zeta.back();
      if (std::tie(p.j, p.base, p.l) >= std::tie(z.j, z.base, z.l))
        bad(cur.pos, "ZETA lines out of order");
    }
    if (z.base < 0 || static_cast<std::size_t>(z.base) >= s || z.l < 0 ||
        static_cast<std::size_t>(z.l) >= s)
      bad(cur.pos, "ZETA class index out of range");
    d.zeta.push_back(std::move(z));
    cur.take();
  }

  while (!cur.done() && cur.peek().rfind("XI ", 0) == 0) {
    auto f = split_fields(cur.peek(), cur.pos);
    if (f.size() != 4) bad(cur.pos, "expected XI j l num/den");
    OmegaDump::XiLine x;
    x.j = static_cast<int>(parse_int(f[1], cur.pos));
    x.l = static_cast<int>(parse_int(f[2], cur.pos));
    x.value = parse_rat(f[3], cur.pos);
    if (!d.xi.empty()) {
      const OmegaDump::XiLine& p = d.xi.back();
      if (std::tie(p.j, p.l) >= std::tie(x.j, x.l))
        bad(cur.pos, "XI lines out of order");
    }
    if (x.l < 0 || static_cast<std::size_t>(x.l) >= s)
      bad(cur.pos, "XI class index out of range");
    d.xi.push_back(std::move(x));
    cur.take();
  }

  bool first_omega = true;
  std::size_t expect_l = 0;
  while (!cur.done() && cur.peek().rfind("OMEGA ", 0) == 0) {
    auto f = split_fields(cur.peek(), cur.pos);
    if (f.size() != 4) bad(cur.pos, "expected OMEGA d l num/den");
    int dd = static_cast<int>(parse_int(f[1], cur.pos));
    long long l = parse_int(f[2], cur.pos);
    Rational v = parse_rat(f[3], cur.pos);
    if (first_omega) {
      d.omega_a = dd;
      d.omega.emplace_back();
      first_omega = false;
    } else if (dd == d.omega_a + static_cast<int>(d.omega.size()) - 1 &&
               expect_l < s) {
      // same shift continues
    } else if (dd == d.omega_a + static_cast<int>(d.omega.size()) &&
               expect_l == s) {
      d.omega.emplace_back();
      expect_l = 0;
    } else {
      bad(cur.pos, "OMEGA rows not contiguous");
    }
    if (l != static_cast<long long>(expect_l))
      bad(cur.pos, "OMEGA class index out of order");
    d.omega.back().push_back(std::move(v));
    ++expect_l;
    cur.take();
  }
  if (d.omega.empty() || expect_l != s)
    bad(cur.pos, "OMEGA block missing or ragged");
  if (!cur.done()) bad(cur.pos, "unrecognized line in coefficient dump");
  return d;
}

OmegaDump make_omega_dump(const std::vector<Rational>& x_hat,
                          const std::vector<ZetaRow>& zeta,
                          const std::map<int, std::vector<Rational>>& xi,
                          const OmegaTable& omega) {
  OmegaDump d;
  d.x_hat = x_hat;
  const std::size_t s = x_hat.size();

  std::vector<const ZetaRow*> rows;
  rows.reserve(zeta.size());
  for (const ZetaRow& r : zeta) rows.push_back(&r);
  std::sort(rows.begin(), rows.end(), [](const ZetaRow* a, const ZetaRow* b) {
    return std::tie(a->j, a->base) < std::tie(b->j, b->base);
  });
  for (const ZetaRow* r : rows) {
    if (r->by_prefix_class.size() != s)
      throw ConfigError("context row class count does not match weights");
    for (std::size_t l = 0; l < s; ++l)
      if (r->by_prefix_class[l] != 0)
        d.zeta.push_back({r->j, r->base, static_cast<int>(l),
                          r->by_prefix_class[l]});
  }

  for (const auto& [j, vals] : xi) {
    if (vals.size() != s)
      throw ConfigError("weak-period row class count does not match weights");
    for (std::size_t l = 0; l < s; ++l)
      d.xi.push_back({j, static_cast<int>(l), vals[l]});
  }

  d.omega_a = omega.a;
  for (int dd = omega.a; dd <= omega.b; ++dd) d.omega.push_back(omega.at(dd));
  return d;
}

std::vector<ZetaRow> zeta_rows_from_dump(const OmegaDump& d, int p0, int p1,
                                         std::size_t s) {
  std::vector<ZetaRow> rows;
  if (p1 < p0) {
    if (!d.zeta.empty())
      throw VerifyError("context lines present but no exact periods declared");
    return rows;
  }
  for (int j = p0; j <= p1; ++j)
    for (std::size_t b = 0; b < s; ++b) {
      ZetaRow r;
      r.j = j;
      r.base = static_cast<int>(b);
      r.by_prefix_class.assign(s, BigInt(0));
      r.context_count = 0;
      rows.push_back(std::move(r));
    }
  for (const OmegaDump::ZetaLine& z : d.zeta) {
    if (z.j < p0 || z.j > p1)
      throw VerifyError("context line for period " + std::to_string(z.j) +
                        " outside the exact range");
    std::size_t idx = static_cast<std::size_t>(z.j - p0) * s +
                      static_cast<std::size_t>(z.base);
    rows[idx].by_prefix_class[static_cast<std::size_t>(z.l)] = z.count;
    rows[idx].context_count += z.count;
  }
  return rows;
}

std::map<int, std::vector<Rational>> xi_from_dump(const OmegaDump& d, int p1,
                                                  int p2, std::size_t s) {
  std::map<int, std::vector<Rational>> out;
  std::size_t i = 0;
  for (int j = p1 + 1; j <= p2; ++j) {
    std::vector<Rational> vals(s);
    for (std::size_t l = 0; l < s; ++l, ++i) {
      if (i >= d.xi.size() || d.xi[i].j != j ||
          d.xi[i].l != static_cast<int>(l))
        throw VerifyError("weak-period coefficient block incomplete at period " +
                          std::to_string(j));
      if (d.xi[i].value < 0)
        throw VerifyError("negative weak-period coefficient");
      vals[l] = d.xi[i].value;
    }
    out.emplace(j, std::move(vals));
  }
  if (i != d.xi.size())
    throw VerifyError("weak-period coefficient lines outside the declared range");
  return out;
}

BuiltCertificate build_certificate(int k, int m, int p1, int p2, int n0,
                                   bool truncated, const Rational& r_hat,
                                   const Rational& mu_hat,
                                   const std::vector<Rational>& x_hat,
                                   const CascadeResult& cascade, int q,
                                   const Rational& alpha,
                                   const std::vector<Rational>& base,
                                   const OmegaDump& dump) {
  if (base.size() != static_cast<std::size_t>(n0 - m + 1))
    throw ConfigError("anchor table must cover lengths m..n0");
  if (dump.x_hat != x_hat)
    throw ConfigError("dump weights differ from certificate weights");

  BuiltCertificate out;
  Certificate& c = out.cert;
  c.k = k;
  c.m = m;
  c.p1 = p1;
  c.p2 = p2;
  c.n0 = n0;
  c.truncated = truncated;
  c.r_hat = r_hat;
  c.mu_hat = mu_hat;
  c.x_hat = x_hat;
  c.rho_a = cascade.a;
  for (int d = cascade.a; d <= cascade.b; ++d)
    c.rho.push_back(d < cascade.b ? cascade.min_at(d) : cascade.term_at(d));
  c.q = q;
  c.alpha = alpha;
  c.base = base;
  out.omega_text = omega_dump_text(dump);
  c.omega_hash = Sha256::of(out.omega_text);
  out.cert_text = certificate_text(c);
  return out;
}

}  // namespace dejean
