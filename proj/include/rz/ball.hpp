#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <optional>
#include <utility>

#include "rz/real.hpp"

namespace rz {

// Radii live at a fixed small precision and are always rounded up, so a ball
// never under-reports its uncertainty. Midpoints carry the working precision.
inline constexpr mpfr_prec_t kRadPrec = 64;

// Closed interval [mid - rad, mid + rad]. Every operation returns a ball that
// contains the exact image of the operand intervals: midpoints are rounded to
// nearest and the final rounding error (one ulp when the MPFR ternary value
// is nonzero) is folded into the radius, which itself is propagated with
// upward rounding throughout.
class RealBall {
 public:
  RealBall() : mid(64), rad(kRadPrec) {}
  explicit RealBall(mpfr_prec_t prec) : mid(prec), rad(kRadPrec) {}

  static RealBall exact_si(long v, mpfr_prec_t prec);
  static RealBall exact_z(const mpz_class& v, mpfr_prec_t prec);
  static RealBall from_q(const mpq_class& v, mpfr_prec_t prec);
  static RealBall from_d(double v, mpfr_prec_t prec);

  mpfr_prec_t prec() const { return mid.prec(); }
  bool is_exact() const { return rad.is_zero(); }

  Real lower() const;  // rounded down, safe outer bound
  Real upper() const;  // rounded up

  bool contains_zero() const;
  bool contains_si(long v) const;
  bool contains_z(const mpz_class& v) const;
  bool is_positive() const;  // certified: lower() > 0
  bool is_negative() const;

  Real mid;
  Real rad;
};

RealBall operator+(const RealBall& a, const RealBall& b);
RealBall operator-(const RealBall& a, const RealBall& b);
RealBall operator*(const RealBall& a, const RealBall& b);
RealBall operator/(const RealBall& a, const RealBall& b);
RealBall neg(const RealBall& a);
RealBall rb_abs(const RealBall& a);
RealBall rb_inv(const RealBall& a);
RealBall rb_sqrt(const RealBall& a);
RealBall rb_exp(const RealBall& a);
RealBall rb_log(const RealBall& a);  // requires a certified positive
RealBall rb_sin(const RealBall& a);
RealBall rb_cos(const RealBall& a);
RealBall rb_pow_si(const RealBall& a, long n);
RealBall rb_pi(mpfr_prec_t prec);
RealBall rb_mul_si(const RealBall& a, long v);
RealBall rb_mul_z(const RealBall& a, const mpz_class& v);

// Strict order certified across the enclosures (upper(a) < lower(b)).
bool certified_lt(const RealBall& a, const RealBall& b);

// Widen the radius by an explicit nonnegative error term.
void add_error(RealBall& b, const Real& err);

// Floor of an upper/lower bound as a machine integer; throws if out of range.
long floor_upper(const RealBall& a);

// Axis-aligned box enclosure of a complex number. The published disk radius
// is the 2-norm of the component radii, so the value also lies in the disk
// around (re.mid, im.mid). Keeping the components as independent balls gives
// exact conjugation (negate im.mid bit for bit) and sharper axis tests than a
// disk representation would.
class ComplexBall {
 public:
  ComplexBall() = default;
  explicit ComplexBall(mpfr_prec_t prec) : re(prec), im(prec) {}
  ComplexBall(RealBall r, RealBall i) : re(std::move(r)), im(std::move(i)) {}

  static ComplexBall from_real(const RealBall& r);
  static ComplexBall exact_si(long vre, long vim, mpfr_prec_t prec);

  mpfr_prec_t prec() const { return mid_prec(); }
  Real radius() const;  // hypot(re.rad, im.rad), rounded up

  bool contains_zero() const { return re.contains_zero() && im.contains_zero(); }
  bool contains_real_si(long v) const { return re.contains_si(v) && im.contains_zero(); }
  bool is_certified_real() const { return im.mid.is_zero() && im.rad.is_zero(); }

  RealBall re;
  RealBall im;

 private:
  mpfr_prec_t mid_prec() const {
    return re.prec() > im.prec() ? re.prec() : im.prec();
  }
};

ComplexBall operator+(const ComplexBall& a, const ComplexBall& b);
ComplexBall operator-(const ComplexBall& a, const ComplexBall& b);
ComplexBall operator*(const ComplexBall& a, const ComplexBall& b);
ComplexBall operator/(const ComplexBall& a, const ComplexBall& b);
ComplexBall operator*(const ComplexBall& a, const RealBall& b);
ComplexBall neg(const ComplexBall& a);
ComplexBall conj(const ComplexBall& a);
ComplexBall cb_inv(const ComplexBall& a);
RealBall cb_abs(const ComplexBall& a);
// Principal argument; requires the box to avoid the branch cut (-inf, 0].
RealBall cb_arg(const ComplexBall& a);
ComplexBall cb_log(const ComplexBall& a);
ComplexBall cb_exp(const ComplexBall& a);
ComplexBall cb_pow_si(const ComplexBall& a, long n);

// Outer approximation of the box intersection, or nullopt when the boxes are
// certifiably disjoint.
std::optional<ComplexBall> cb_intersect(const ComplexBall& a, const ComplexBall& b);

// Certified: the two disks (box center, disk radius) have empty intersection.
bool disjoint(const ComplexBall& a, const ComplexBall& b);
// Certified: every point of a's box lies strictly inside b's box.
bool box_inside(const ComplexBall& a, const ComplexBall& b);
// Boxes overlap or touch (negation of certified box disjointness).
bool boxes_meet(const ComplexBall& a, const ComplexBall& b);

}  // namespace rz
