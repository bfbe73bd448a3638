#pragma once

#include <mpfr.h>

namespace rz {

// Shared tuning knobs. Defaults match the CLI defaults; library callers can
// pass their own values to the individual entry points.
struct RunConfig {
  mpfr_prec_t precision_bits = 256;
  mpfr_prec_t confidence_bits = 128;
  int max_kappa = 10;
  long max_coeff = 32;
  long dirichlet_terms = 512;
};

// Hard ceiling for internal precision escalation loops. Certification code
// doubles its working precision until it either succeeds or crosses this
// limit, at which point it reports a PrecisionError instead of spinning.
inline constexpr mpfr_prec_t kPrecisionCap = 1 << 20;

}  // namespace rz
