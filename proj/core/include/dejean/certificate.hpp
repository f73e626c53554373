#pragma once

#include <map>
#include <string>
#include <vector>

#include "dejean/cascade.hpp"
#include "dejean/corrections.hpp"
#include "dejean/support.hpp"

namespace dejean {

// A growth certificate: everything a verifier needs to replay the induction
// that the weighted count of admissible words multiplies by at least alpha
// per letter.  Serialized as a line-oriented text file:
//
//   PARAM k m p1 p2 n0
//   MODE default|truncated
//   R num/den
//   MU num/den
//   X i num/den              (one line per class, i ascending)
//   RHO d num/den            (one line per shift in the band, d ascending;
//                             min-rule values below the top shift, the
//                             terminal max-rule value at it)
//   Q q
//   ALPHA num/den
//   BASE n num/den           (exact weighted totals, n = m..n0 ascending)
//   HASH omega <hex>         (sha-256 of the companion coefficient dump)
//
// Field order is fixed and the serialization is canonical, so equal
// certificates are byte-identical.
struct Certificate {
  int k = 0;
  int m = 0;
  int p1 = 0;
  int p2 = 0;
  int n0 = 0;
  bool truncated = false;
  Rational r_hat;
  Rational mu_hat;
  std::vector<Rational> x_hat;
  int rho_a = 0;
  std::vector<Rational> rho;  // indexed d - rho_a
  int q = 0;
  Rational alpha;
  std::vector<Rational> base;  // indexed n - m
  std::string omega_hash;      // lowercase hex
};

// Companion dump holding the correction coefficients the certificate's hash
// commits to.  Line-oriented, canonical order:
//
//   XHAT i num/den           (must equal the certificate's X block)
//   ZETA j base l count      (context counts, nonzero entries only,
//                             ordered by j, base, l)
//   XI j l num/den           (weak-period coefficients, every class,
//                             ordered by j, l)
//   OMEGA d l num/den        (assembled band, every class, ordered by d, l)
struct OmegaDump {
  struct ZetaLine {
    int j = 0;
    int base = 0;
    int l = 0;
    BigInt count;
  };
  struct XiLine {
    int j = 0;
    int l = 0;
    Rational value;
  };
  std::vector<Rational> x_hat;
  std::vector<ZetaLine> zeta;
  std::vector<XiLine> xi;
  int omega_a = 0;
  std::vector<std::vector<Rational>> omega;  // [d - omega_a][class]
};

std::string certificate_text(const Certificate& c);
Certificate parse_certificate(const std::string& text);

std::string omega_dump_text(const OmegaDump& d);
OmegaDump parse_omega_dump(const std::string& text);

// Builds the canonical dump from producer-side tables.  zeta rows are taken
// for periods p0..p1 (any order, deduplicated by (j, base)), xi per weak
// period p1+1..p2.
OmegaDump make_omega_dump(const std::vector<Rational>& x_hat,
                          const std::vector<ZetaRow>& zeta,
                          const std::map<int, std::vector<Rational>>& xi,
                          const OmegaTable& omega);

// Reconstructs the per-period context rows committed in the dump: one row
// per (j, base) pair with j in [p0, p1] and base in [0, s), zero-filled
// where the dump has no line.  Lines outside that rectangle are rejected.
std::vector<ZetaRow> zeta_rows_from_dump(const OmegaDump& d, int p0, int p1,
                                         std::size_t s);

// Reconstructs the weak-period coefficient table; requires every period in
// [p1+1, p2] to carry exactly one value per class.
std::map<int, std::vector<Rational>> xi_from_dump(const OmegaDump& d, int p1,
                                                  int p2, std::size_t s);

// Assembles the certificate plus the dump text it hashes.
struct BuiltCertificate {
  Certificate cert;
  std::string cert_text;
  std::string omega_text;
};
BuiltCertificate build_certificate(int k, int m, int p1, int p2, int n0,
                                   bool truncated, const Rational& r_hat,
                                   const Rational& mu_hat,
                                   const std::vector<Rational>& x_hat,
                                   const CascadeResult& cascade, int q,
                                   const Rational& alpha,
                                   const std::vector<Rational>& base,
                                   const OmegaDump& dump);

}  // namespace dejean
