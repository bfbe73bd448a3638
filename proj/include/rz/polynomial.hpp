#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

#include "rz/ball.hpp"

namespace rz {

// Univariate polynomial with arbitrary-size integer coefficients, stored in
// ascending order with a nonzero leading coefficient. The zero polynomial is
// not representable; constructors reject it.
class IntPolynomial {
 public:
  explicit IntPolynomial(std::vector<mpz_class> coeffs);

  // Accepts either a bracketed ascending coefficient list "[c0, c1, ..., cr]"
  // or a symbolic expression such as "x^6-2x^4-6x^3-2x^2+1". Whitespace is
  // ignored; "*" between coefficient and variable is optional; a lone letter
  // other than the (single) variable is a multivariate error.
  static IntPolynomial parse(const std::string& text);

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const mpz_class& coeff(int k) const;
  const std::vector<mpz_class>& coeffs() const { return c_; }
  const mpz_class& leading() const { return c_.back(); }
  bool is_monic() const { return c_.back() == 1; }

  IntPolynomial derivative() const;
  // x^deg * p(1/x): the coefficient sequence reversed.
  IntPolynomial reversed() const;
  // Coefficients palindromic up to one global sign.
  bool is_self_reciprocal() const;

  ComplexBall eval(const ComplexBall& z) const;
  RealBall eval(const RealBall& x) const;
  mpz_class eval_z(const mpz_class& x) const;

  std::string to_string() const;

  bool operator==(const IntPolynomial& o) const { return c_ == o.c_; }

 private:
  std::vector<mpz_class> c_;
};

mpz_class content(const IntPolynomial& p);
IntPolynomial primitive_part(const IntPolynomial& p);
IntPolynomial poly_mul(const IntPolynomial& a, const IntPolynomial& b);
// Greatest common divisor over Z, primitive with positive leading coefficient.
IntPolynomial poly_gcd(const IntPolynomial& a, const IntPolynomial& b);
bool is_squarefree(const IntPolynomial& p);
// Quotient when den divides num exactly over the integers, nullopt otherwise.
std::optional<IntPolynomial> exact_divide(const IntPolynomial& num,
                                          const IntPolynomial& den);

}  // namespace rz
