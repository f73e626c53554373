#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dejean/certificate.hpp"
#include "dejean/support.hpp"

namespace dejean {

// One lower-bound production run: build the class graph, certify its
// expansion, measure correction coefficients for every period up to p2,
// cascade them into damping coefficients, count the anchor lengths, and
// search for the largest per-letter rate alpha that survives every exact
// check.  All stages are deterministic for a fixed configuration, including
// the thread count.
struct PipelineConfig {
  int k = 0;
  int m = 0;
  int p1 = -1;  // largest enumerated period; first_free_period(k,m)-1 turns
                // context enumeration off entirely
  int p2 = 0;   // largest tabulated period
  int n0 = 0;   // anchor length: exact counts cover m..n0
  bool rounded_rows = false;  // path-count rows as upward-rounded doubles
                              // instead of overflow-checked integers
  int threads = 1;
  std::string cache_dir;  // empty disables stage caching
  std::uint64_t guard_nodes = 4'000'000'000ull;
  double guard_seconds = 86400.0;
};

// Structural validation, throws ConfigError:
//   * 5 <= k <= 10 and m > k,
//   * first_free_period(k,m) - 1 <= p1 < p2 and p2 >= 2k - 3 (so the
//     closed-form tail exponent is at least 1),
//   * the smallest path-counted period p1 + 1 repeats at least k - 1 letters
//     inside its prohibited window (chi(p1+1) >= k-1), which the suffix-pin
//     readout of the path-count coefficients requires,
//   * m <= n0 and threads >= 1.
void validate_config(const PipelineConfig& cfg);

struct PipelineResult {
  bool feasible = false;
  bool truncated = true;   // mode of the emitted certificate
  BuiltCertificate built;  // populated when feasible
  std::string diagnostic;  // populated when infeasible: what blocked the rate
  std::vector<std::string> transcript;  // one line per completed stage
};

// Runs every stage and either emits a certificate (with its coefficient
// dump) or reports why no rate above 1 survives.  The certificate mode is
// chosen automatically: default when the anchor covers both the declared
// period range and the cascade band, truncated otherwise.  Infeasibility is
// a result, not an error; configuration and guard problems throw.
PipelineResult run_pipeline(const PipelineConfig& cfg);

// Cache-aware core graph: loads <cache_dir>/graph-k{k}-m{m}.txt when present
// (validating it), builds and saves otherwise.  Empty cache_dir builds fresh.
ClassGraph cached_core_graph(int k, int m, const std::string& cache_dir,
                             Guard& guard);

// Tables-only run: stops after the damping cascade, skipping anchor counts
// and the rate search.  n0 is ignored.
struct TableSummary {
  std::size_t classes = 0;
  Rational r_hat;
  Rational mu_hat;
  int p0 = 0;
  int band_a = 0;
  int band_b = 0;
  int q = 0;
  Rational damping_at_inverse_rate;  // full polynomial at x = 1/r_hat
  std::vector<std::string> transcript;
};
TableSummary build_tables(const PipelineConfig& cfg);

}  // namespace dejean
