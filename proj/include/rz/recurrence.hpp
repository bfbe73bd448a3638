#pragma once

#include <gmpxx.h>

#include <vector>

#include "rz/ball.hpp"
#include "rz/roots.hpp"

namespace rz {

// An integer linear recurrence pinned to its conjugate system: the exact
// initial terms, the certified Binet coefficients lambda_i (a_n enclosed by
// sum lambda_i root_i^n), and the start index n0 from which the terms are
// certified strictly increasing and positive.
struct RecurrenceSpec {
  ConjugateSystem system;
  std::vector<mpz_class> initial_terms;
  std::vector<ComplexBall> lambdas;
  long n0 = 0;

  int degree() const { return system.degree(); }
};

// Power sums of the roots, s_0 .. s_{r-1}, by Newton's identities. These are
// the default initial terms and give lambda = (1, ..., 1).
std::vector<mpz_class> power_sum_initial_terms(const IntPolynomial& p);

// Solves the r x r Vandermonde system V(root_1..root_r) lambda = a in ball
// arithmetic, escalating precision internally. Coefficients for real roots
// are certified real; conjugate-paired roots get conjugate-paired enclosures
// bit for bit. Throws MathError when lambda_1 is certified non-positive.
std::vector<ComplexBall> binet_coefficients(
    const ConjugateSystem& system, const std::vector<mpz_class>& initial_terms);

// Smallest n0 >= 0 such that a_n is strictly increasing and >= 1 for all
// n >= n0: a certified geometric tail bound covers all n beyond a threshold
// and the finitely many indices below it are checked on the exact integers.
long start_index(const ConjugateSystem& system,
                 const std::vector<ComplexBall>& lambdas,
                 const std::vector<mpz_class>& initial_terms);

// Exact terms a_0 .. a_{count-1} from the recurrence
// a_{n+r} = -(c_0 a_n + ... + c_{r-1} a_{n+r-1}).
std::vector<mpz_class> terms(const RecurrenceSpec& spec, long count);

RecurrenceSpec make_recurrence(const ConjugateSystem& system,
                               std::vector<mpz_class> initial_terms);
// Power-sum default.
RecurrenceSpec make_recurrence(const ConjugateSystem& system);

}  // namespace rz
