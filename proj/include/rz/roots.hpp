#pragma once

#include <vector>

#include "rz/ball.hpp"
#include "rz/polynomial.hpp"

namespace rz {

// Certified root isolation. Returns exactly deg(p) pairwise-disjoint
// enclosures, each of radius at most 2^(-precision_bits/2). Real roots come
// back with an exactly-zero imaginary part; non-real roots come in adjacent
// conjugate pairs whose enclosures are bit-exact mirrors (positive imaginary
// part first). Output is deterministic for fixed input.
std::vector<ComplexBall> isolate_roots(const IntPolynomial& p,
                                       mpfr_prec_t precision_bits);

// Certified irreducibility over Q for monic polynomials. Decides by
// reconstructing the coefficients of every possible proper factor from
// certified root subsets: a subset whose symmetric-function enclosures
// exclude the integers cannot give a factor; a pinned integer candidate is
// confirmed or refuted by exact division. Escalates precision internally.
bool is_irreducible(const IntPolynomial& p);

// A monic irreducible polynomial together with its certified conjugate roots
// in dominance order (dominant root first, remaining moduli non-increasing by
// enclosure upper bound), plus exact classification flags and cached
// logarithmic data used by the analytic modules.
struct ConjugateSystem {
  IntPolynomial polynomial;
  std::vector<ComplexBall> roots;
  mpfr_prec_t precision_bits = 0;

  bool is_perron = false;
  bool is_pisot = false;
  bool is_salem = false;
  bool is_unit = false;
  bool is_reciprocal = false;

  // reciprocal_pair[i] = j certifies that root j encloses 1/root i; empty
  // when the polynomial is not self-reciprocal or the pairing could not be
  // certified at this precision.
  std::vector<int> reciprocal_pair;
  // conj_partner[i] = j with root j the complex conjugate of root i (i for
  // real roots).
  std::vector<int> conj_partner;

  RealBall log_alpha;            // log of the dominant root
  std::vector<RealBall> log_abs; // log|root i|
  std::vector<RealBall> args;    // principal argument of root i (exact 0 or
                                 // an enclosure of pi for real roots)

  int degree() const { return static_cast<int>(roots.size()); }
};

// Validates monicity and irreducibility, certifies Perron dominance, orders
// the roots, and computes the classification flags. Flags are set only when
// certified from enclosures and exact data. Degree 1 input is rejected.
ConjugateSystem classify(const IntPolynomial& p,
                         const std::vector<ComplexBall>& roots);

// Re-isolates the roots at a higher precision and returns them in the same
// order as system.roots, matched by box overlap (each refined box meets
// exactly one original box once the refinement is fine enough). Returns the
// stored roots unchanged when they already satisfy the request.
std::vector<ComplexBall> refine_roots(const ConjugateSystem& system,
                                      mpfr_prec_t precision_bits);

}  // namespace rz
