#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "rz/intlinalg.hpp"
#include "rz/roots.hpp"

namespace rz {

// Exact norm classification from the constant term: N = (-1)^r p(0).
// NOT_UNIT forces R cap <e> = {0}, norm -1 gives <2e>, norm +1 gives <e>.
enum class NormClass { kNotUnit, kNormMinusOne, kNormPlusOne };

NormClass norm_class(const IntPolynomial& p);

// A sublattice of Z^r in Hermite normal form. verified[i] records that basis
// row i passed verify_relation (exact fast path or certified interval test);
// lattices used as plain integer lattices (H_0, ambient helpers) carry all
// false flags. confidence_bits is the precision at which the absence of
// further relations was tested; absence is heuristic, presence is certified.
struct RelationLattice {
  int ambient_rank = 0;
  IntMat basis;
  int rank = 0;
  std::vector<bool> verified;
  long confidence_bits = 0;
};

enum class VerifyStatus { kCertifiedTrue, kCertifiedFalse, kUndecided };

struct VerifyResult {
  VerifyStatus status = VerifyStatus::kUndecided;
  // Set when truth rests on the two-level interval test instead of an exact
  // certificate (norm powers or the reciprocal pairing).
  bool heuristic = false;
};

// Decides whether prod root_i^{m_i} = 1. Exact certificates cover all-equal
// exponent vectors (via the norm) and pairing-symmetric vectors on
// self-reciprocal polynomials; an interval that excludes 1 certifies falsity
// at any width; agreement at two independent precision levels, each with
// width below 2^-precision_bits, certifies truth heuristically.
VerifyResult verify_relation(const ConjugateSystem& system, const IntVec& m,
                             long precision_bits);

// Detects R_alpha by LLL reduction of the scaled log/argument matrix with one
// extra integer column for the 2 pi n branch. Every candidate is pushed
// through verify_relation; norm seeds are always included; the returned basis
// is the HNF of the accepted vectors.
RelationLattice find_relation_lattice(const ConjugateSystem& system,
                                      mpfr_prec_t precision_bits,
                                      long confidence_bits,
                                      long max_coeff = 32);

// HNF basis of { m in L : sum m_i = 0 }.
RelationLattice intersect_with_H0(const RelationLattice& L);

// True iff every basis vector is an integer multiple of e = (1,...,1).
bool is_trivial(const RelationLattice& L);

// The sum-zero hyperplane H_0 as a rank r-1 lattice (not a relation lattice;
// verified flags are all false).
RelationLattice h0_lattice(int r);

struct InjectivityResult {
  bool injective = false;
  std::optional<IntVec> witness;  // shortest HNF basis row of R cap H_0
  long confidence_bits = 0;
  RelationLattice lattice;         // detected R_alpha
  RelationLattice h0_intersection; // R_alpha cap H_0
};

// Runs detection and the H_0 intersection; the indexation map is injective
// iff the intersection is the zero lattice.
InjectivityResult decide_injectivity(const ConjugateSystem& system,
                                     mpfr_prec_t precision_bits,
                                     long confidence_bits,
                                     long max_coeff = 32);

struct ConditionStatus {
  std::string name;
  bool satisfied = false;
  bool user_asserted = false;  // echoed from an assertion, never computed
};

struct SufficientReport {
  std::vector<ConditionStatus> conditions;
  bool module_trivial = false;  // advisory: some sufficient condition holds
};

// Sufficient conditions for a trivial module: Pisot (computed), prime degree
// (computed), and the Galois-group conditions, which are echoed from user
// assertions only. asserted_flags must be a subset of
// {galois_full_symmetric, galois_alternating, galois_2_homogeneous}.
SufficientReport sufficient_conditions(const ConjugateSystem& system,
                                       const std::set<std::string>& asserted_flags);

struct RankCheck {
  long lhs = 0;  // rk(A) + rk(B)
  long rhs = 0;  // rk(A + B) + rk(A cap B)
};

// Both sides of the modular rank formula, by exact integer linear algebra.
RankCheck rank_arithmetic_check(const RelationLattice& a,
                                const RelationLattice& b);

}  // namespace rz
