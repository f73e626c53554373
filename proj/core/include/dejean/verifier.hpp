#pragma once

#include <string>
#include <vector>

#include "dejean/support.hpp"

namespace dejean {

// Outcome of replaying a certificate.  transcript holds one line per check
// in a fixed order; on rejection, failure carries the first failed check and
// accepted is false.  Work done during the replay (graph rebuild) draws on
// the guard; exceeding it raises GuardError instead of rejecting.
struct VerifyReport {
  bool accepted = false;
  std::vector<std::string> transcript;
  std::string failure;
};

// Replays a certificate against its coefficient dump from first principles:
// the window class graph is rebuilt from (k, m); the expansion and tail
// ratios of the committed weight vector are re-derived on it; the correction
// band is reassembled from the dump's context counts and weak-period
// coefficients and must match the dump's own band; the damping cascade is
// recomputed and must match the certificate's coefficients; and the final,
// anchoring, and (in truncated mode) every per-length step inequality is
// re-checked in exact arithmetic.  Context counts and weak-period
// coefficients themselves are producer measurements; they are bound by the
// certificate's hash and consumed as upper bounds, not re-enumerated.
VerifyReport verify_certificate(const std::string& cert_bytes,
                                const std::string& omega_bytes, Guard& guard);

}  // namespace dejean
