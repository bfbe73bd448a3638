#pragma once

#include "rz/ball.hpp"
#include "rz/poles.hpp"
#include "rz/recurrence.hpp"

namespace rz {

// Falling-factorial multinomial z(z-1)...(z-|kappa|+1) / kappa!.
ComplexBall multinomial_coefficient(const ComplexBall& z, const MultiIndex& kappa);

// Partial sum of the Dirichlet series sum_{n >= n0} a_n^{-s} over N terms,
// with a certified geometric tail folded into the enclosure radius. Requires
// Re(s) certified positive.
ComplexBall dirichlet_sum(const RecurrenceSpec& spec, const ComplexBall& s,
                          long N);

// One term of the continuation series:
// lambda_1^{-s} binom(-s,kappa) prod_{i>=2}(lambda_i/lambda_1)^{kappa_i}
//   * q^{n0}/(1-q)  with  q = alpha_1^{-s-|kappa|} prod_{i>=2} alpha_i^{kappa_i}.
// Throws PoleProximityError when the q enclosure contains 1.
ComplexBall phi_term(const RecurrenceSpec& spec, const MultiIndex& kappa,
                     const ComplexBall& s);

struct PhiResult {
  ComplexBall value;
  // True when the shell tail over |kappa| > K was bounded and added to the
  // radius; false means the value is the bare partial sum.
  bool certified_tail = false;
};

// Continuation-series evaluation summed over shells |kappa| = 0..K, each
// shell in lexicographic order. Inputs in the lower half plane are evaluated
// through conjugation so phi_eval(conj(s)) is bit-exactly the conjugate of
// phi_eval(s).
PhiResult phi_eval(const RecurrenceSpec& spec, const ComplexBall& s, long K);

// Smallest K whose certified shell-tail bound at s is below 2^-target_bits;
// returns cap when no K up to cap qualifies.
long suggest_truncation(const RecurrenceSpec& spec, const ComplexBall& s,
                        long target_bits, long cap = 600);

}  // namespace rz
