#include "rz/ball.hpp"

#include <algorithm>
#include <stdexcept>

#include "rz/errors.hpp"

namespace rz {

namespace {

void check_finite(mpfr_srcptr x) {
  if (!mpfr_number_p(x))
    throw PrecisionError("ball arithmetic left the representable range");
}

// Upper bound on the rounding error of a round-to-nearest result: one ulp.
// A nonzero result x with precision p satisfies ulp(x) = 2^(exp(x) - p). A
// zero result can only be inexact on underflow, bounded by 2^emin.
Real ulp_bound(mpfr_srcptr x) {
  Real u(kRadPrec);
  if (mpfr_zero_p(x))
    mpfr_set_ui_2exp(u.ptr(), 1, mpfr_get_emin(), MPFR_RNDU);
  else
    mpfr_set_ui_2exp(u.ptr(), 1, mpfr_get_exp(x) - mpfr_get_prec(x), MPFR_RNDU);
  return u;
}

// Fold the midpoint rounding error into the radius when the MPFR ternary
// value reports an inexact result.
void bump(RealBall& b, int ternary) {
  check_finite(b.mid.ptr());
  if (ternary != 0) {
    Real u = ulp_bound(b.mid.ptr());
    mpfr_add(b.rad.ptr(), b.rad.ptr(), u.ptr(), MPFR_RNDU);
  }
}

mpfr_prec_t join_prec(const RealBall& a, const RealBall& b) {
  return std::max(a.prec(), b.prec());
}

}  // namespace

RealBall RealBall::exact_si(long v, mpfr_prec_t prec) {
  RealBall out(prec);
  int t = mpfr_set_si(out.mid.ptr(), v, MPFR_RNDN);
  bump(out, t);
  return out;
}

RealBall RealBall::exact_z(const mpz_class& v, mpfr_prec_t prec) {
  RealBall out(prec);
  int t = mpfr_set_z(out.mid.ptr(), v.get_mpz_t(), MPFR_RNDN);
  bump(out, t);
  return out;
}

RealBall RealBall::from_q(const mpq_class& v, mpfr_prec_t prec) {
  RealBall out(prec);
  int t = mpfr_set_q(out.mid.ptr(), v.get_mpq_t(), MPFR_RNDN);
  bump(out, t);
  return out;
}

RealBall RealBall::from_d(double v, mpfr_prec_t prec) {
  RealBall out(prec);
  int t = mpfr_set_d(out.mid.ptr(), v, MPFR_RNDN);
  bump(out, t);
  return out;
}

Real RealBall::lower() const {
  Real out(mid.prec());
  mpfr_sub(out.ptr(), mid.ptr(), rad.ptr(), MPFR_RNDD);
  return out;
}

Real RealBall::upper() const {
  Real out(mid.prec());
  mpfr_add(out.ptr(), mid.ptr(), rad.ptr(), MPFR_RNDU);
  return out;
}

bool RealBall::contains_zero() const {
  return mpfr_cmpabs(mid.ptr(), rad.ptr()) <= 0;
}

bool RealBall::contains_z(const mpz_class& v) const {
  if (mid.is_zero()) {
    size_t bits = mpz_sizeinbase(v.get_mpz_t(), 2);
    Real t(std::max<mpfr_prec_t>(bits + 2, 64));
    mpfr_set_z(t.ptr(), v.get_mpz_t(), MPFR_RNDN);
    return mpfr_cmpabs(t.ptr(), rad.ptr()) <= 0;
  }
  // Pick a precision large enough to make mid - v exact, then compare.
  long ex = mpfr_get_exp(mid.ptr());
  long bv = static_cast<long>(mpz_sizeinbase(v.get_mpz_t(), 2));
  long msb = std::max(ex, bv + 1);
  long lsb = std::min(ex - static_cast<long>(mid.prec()), 0L);
  Real d(msb - lsb + 4);
  int t = mpfr_sub_z(d.ptr(), mid.ptr(), v.get_mpz_t(), MPFR_RNDN);
  if (t != 0) throw std::logic_error("exact integer comparison rounded");
  return mpfr_cmpabs(d.ptr(), rad.ptr()) <= 0;
}

bool RealBall::contains_si(long v) const { return contains_z(mpz_class(v)); }

bool RealBall::is_positive() const { return lower().sign() > 0; }
bool RealBall::is_negative() const { return upper().sign() < 0; }

RealBall operator+(const RealBall& a, const RealBall& b) {
  RealBall out(join_prec(a, b));
  int t = mpfr_add(out.mid.ptr(), a.mid.ptr(), b.mid.ptr(), MPFR_RNDN);
  mpfr_add(out.rad.ptr(), a.rad.ptr(), b.rad.ptr(), MPFR_RNDU);
  bump(out, t);
  return out;
}

RealBall operator-(const RealBall& a, const RealBall& b) {
  RealBall out(join_prec(a, b));
  int t = mpfr_sub(out.mid.ptr(), a.mid.ptr(), b.mid.ptr(), MPFR_RNDN);
  mpfr_add(out.rad.ptr(), a.rad.ptr(), b.rad.ptr(), MPFR_RNDU);
  bump(out, t);
  return out;
}

RealBall operator*(const RealBall& a, const RealBall& b) {
  RealBall out(join_prec(a, b));
  int t = mpfr_mul(out.mid.ptr(), a.mid.ptr(), b.mid.ptr(), MPFR_RNDN);
  // |a| rb + |b| ra + ra rb, every step rounded up
  Real am(kRadPrec), bm(kRadPrec), t1(kRadPrec), t2(kRadPrec);
  mpfr_abs(am.ptr(), a.mid.ptr(), MPFR_RNDU);
  mpfr_abs(bm.ptr(), b.mid.ptr(), MPFR_RNDU);
  mpfr_mul(t1.ptr(), am.ptr(), b.rad.ptr(), MPFR_RNDU);
  mpfr_mul(t2.ptr(), bm.ptr(), a.rad.ptr(), MPFR_RNDU);
  mpfr_add(t1.ptr(), t1.ptr(), t2.ptr(), MPFR_RNDU);
  mpfr_mul(t2.ptr(), a.rad.ptr(), b.rad.ptr(), MPFR_RNDU);
  mpfr_add(out.rad.ptr(), t1.ptr(), t2.ptr(), MPFR_RNDU);
  bump(out, t);
  return out;
}

RealBall rb_inv(const RealBall& a) {
  Real am(kRadPrec), d(kRadPrec);
  mpfr_abs(am.ptr(), a.mid.ptr(), MPFR_RNDD);
  mpfr_sub(d.ptr(), am.ptr(), a.rad.ptr(), MPFR_RNDD);
  if (d.sign() <= 0)
    throw PrecisionError("inverse of an enclosure that may contain zero");
  RealBall out(a.prec());
  int t = mpfr_ui_div(out.mid.ptr(), 1, a.mid.ptr(), MPFR_RNDN);
  Real den(kRadPrec);
  mpfr_mul(den.ptr(), am.ptr(), d.ptr(), MPFR_RNDD);
  mpfr_div(out.rad.ptr(), a.rad.ptr(), den.ptr(), MPFR_RNDU);
  bump(out, t);
  return out;
}

RealBall operator/(const RealBall& a, const RealBall& b) { return a * rb_inv(b); }

RealBall neg(const RealBall& a) {
  RealBall out(a.prec());
  mpfr_neg(out.mid.ptr(), a.mid.ptr(), MPFR_RNDN);  // exact at equal precision
  out.rad = a.rad;
  return out;
}

RealBall rb_abs(const RealBall& a) {
  RealBall out(a.prec());
  mpfr_abs(out.mid.ptr(), a.mid.ptr(), MPFR_RNDN);
  out.rad = a.rad;
  return out;
}

RealBall rb_sqrt(const RealBall& a) {
  Real lo = a.lower();
  RealBall out(a.prec());
  if (lo.sign() < 0) {
    if (a.upper().sign() < 0)
      throw MathError("square root of a certified negative enclosure");
    // Straddles zero: cover [0, sqrt(upper)] symmetrically around its middle.
    Real su(a.prec());
    mpfr_sqrt(su.ptr(), a.upper().ptr(), MPFR_RNDU);
    mpfr_div_2ui(out.mid.ptr(), su.ptr(), 1, MPFR_RNDN);
    mpfr_div_2ui(su.ptr(), su.ptr(), 1, MPFR_RNDU);
    mpfr_set(out.rad.ptr(), su.ptr(), MPFR_RNDU);
    Real u = ulp_bound(out.mid.ptr());
    mpfr_add(out.rad.ptr(), out.rad.ptr(), u.ptr(), MPFR_RNDU);
    return out;
  }
  int t = mpfr_sqrt(out.mid.ptr(), a.mid.ptr(), MPFR_RNDN);
  if (a.rad.is_zero() && t == 0) return out;  // exact square
  // |sqrt(x) - sqrt(m)| = |x - m| / (sqrt(x) + sqrt(m)) <= r / (sqrt(lo) + sqrt(m))
  Real s1(kRadPrec), s2(kRadPrec), den(kRadPrec);
  mpfr_sqrt(s1.ptr(), lo.ptr(), MPFR_RNDD);
  mpfr_sqrt(s2.ptr(), a.mid.ptr(), MPFR_RNDD);
  mpfr_add(den.ptr(), s1.ptr(), s2.ptr(), MPFR_RNDD);
  if (den.sign() <= 0)
    throw PrecisionError("square root enclosure degenerate at zero");
  mpfr_div(out.rad.ptr(), a.rad.ptr(), den.ptr(), MPFR_RNDU);
  bump(out, t);
  return out;
}

RealBall rb_exp(const RealBall& a) {
  RealBall out(a.prec());
  int t = mpfr_exp(out.mid.ptr(), a.mid.ptr(), MPFR_RNDN);
  check_finite(out.mid.ptr());
  // |exp(x) - exp(m)| <= exp(m) (exp(r) - 1) for |x - m| <= r
  Real eu(kRadPrec), em(kRadPrec);
  mpfr_exp(eu.ptr(), a.mid.ptr(), MPFR_RNDU);
  mpfr_expm1(em.ptr(), a.rad.ptr(), MPFR_RNDU);
  mpfr_mul(out.rad.ptr(), eu.ptr(), em.ptr(), MPFR_RNDU);
  bump(out, t);
  return out;
}

RealBall rb_log(const RealBall& a) {
  Real lo = a.lower();
  if (lo.sign() <= 0) {
    if (a.upper().sign() <= 0)
      throw MathError("log of a certified nonpositive enclosure");
    throw PrecisionError("log of an enclosure not certified positive");
  }
  RealBall out(a.prec());
  int t = mpfr_log(out.mid.ptr(), a.mid.ptr(), MPFR_RNDN);
  // |log(x) - log(m)| <= r / lo on [lo, m + r]
  Real lo64(kRadPrec);
  mpfr_set(lo64.ptr(), lo.ptr(), MPFR_RNDD);
  mpfr_div(out.rad.ptr(), a.rad.ptr(), lo64.ptr(), MPFR_RNDU);
  bump(out, t);
  return out;
}

RealBall rb_sin(const RealBall& a) {
  RealBall out(a.prec());
  int t = mpfr_sin(out.mid.ptr(), a.mid.ptr(), MPFR_RNDN);
  out.rad = a.rad;  // Lipschitz constant 1
  bump(out, t);
  return out;
}

RealBall rb_cos(const RealBall& a) {
  RealBall out(a.prec());
  int t = mpfr_cos(out.mid.ptr(), a.mid.ptr(), MPFR_RNDN);
  out.rad = a.rad;
  bump(out, t);
  return out;
}

RealBall rb_pow_si(const RealBall& a, long n) {
  if (n == 0) return RealBall::exact_si(1, a.prec());
  if (n < 0) return rb_inv(rb_pow_si(a, -n));
  RealBall acc = a;
  int top = 63;
  while (top > 0 && ((n >> top) & 1) == 0) --top;
  for (int bit = top - 1; bit >= 0; --bit) {
    acc = acc * acc;
    if ((n >> bit) & 1) acc = acc * a;
  }
  return acc;
}

RealBall rb_pi(mpfr_prec_t prec) {
  RealBall out(prec);
  int t = mpfr_const_pi(out.mid.ptr(), MPFR_RNDN);
  bump(out, t);
  return out;
}

RealBall rb_mul_si(const RealBall& a, long v) {
  return a * RealBall::exact_si(v, a.prec());
}

RealBall rb_mul_z(const RealBall& a, const mpz_class& v) {
  return a * RealBall::exact_z(v, a.prec());
}

bool certified_lt(const RealBall& a, const RealBall& b) {
  return mpfr_cmp(a.upper().ptr(), b.lower().ptr()) < 0;
}

void add_error(RealBall& b, const Real& err) {
  if (err.sign() < 0) throw std::logic_error("negative error term");
  mpfr_add(b.rad.ptr(), b.rad.ptr(), err.ptr(), MPFR_RNDU);
}

long floor_upper(const RealBall& a) {
  Real u = a.upper();
  if (!mpfr_fits_slong_p(u.ptr(), MPFR_RNDD))
    throw MathError("bound exceeds machine integer range");
  return mpfr_get_si(u.ptr(), MPFR_RNDD);
}

ComplexBall ComplexBall::from_real(const RealBall& r) {
  return ComplexBall(r, RealBall(r.prec()));
}

ComplexBall ComplexBall::exact_si(long vre, long vim, mpfr_prec_t prec) {
  return ComplexBall(RealBall::exact_si(vre, prec), RealBall::exact_si(vim, prec));
}

Real ComplexBall::radius() const {
  Real out(kRadPrec);
  mpfr_hypot(out.ptr(), re.rad.ptr(), im.rad.ptr(), MPFR_RNDU);
  return out;
}

ComplexBall operator+(const ComplexBall& a, const ComplexBall& b) {
  return ComplexBall(a.re + b.re, a.im + b.im);
}

ComplexBall operator-(const ComplexBall& a, const ComplexBall& b) {
  return ComplexBall(a.re - b.re, a.im - b.im);
}

ComplexBall operator*(const ComplexBall& a, const ComplexBall& b) {
  return ComplexBall(a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re);
}

ComplexBall operator*(const ComplexBall& a, const RealBall& b) {
  return ComplexBall(a.re * b, a.im * b);
}

ComplexBall neg(const ComplexBall& a) { return ComplexBall(neg(a.re), neg(a.im)); }

ComplexBall conj(const ComplexBall& a) { return ComplexBall(a.re, neg(a.im)); }

ComplexBall cb_inv(const ComplexBall& a) {
  RealBall n = a.re * a.re + a.im * a.im;
  if (!n.is_positive())
    throw PrecisionError("inverse of an enclosure that may contain zero");
  return ComplexBall(a.re / n, neg(a.im) / n);
}

ComplexBall operator/(const ComplexBall& a, const ComplexBall& b) {
  return a * cb_inv(b);
}

RealBall cb_abs(const ComplexBall& a) {
  RealBall out(a.prec());
  int t = mpfr_hypot(out.mid.ptr(), a.re.mid.ptr(), a.im.mid.ptr(), MPFR_RNDN);
  mpfr_add(out.rad.ptr(), a.re.rad.ptr(), a.im.rad.ptr(), MPFR_RNDU);
  bump(out, t);
  return out;
}

namespace {

// Lower bound for the distance from the origin to a component interval.
Real axis_gap(const RealBall& c) {
  Real out(kRadPrec);
  Real lo = c.lower(), hi = c.upper();
  if (lo.sign() > 0)
    mpfr_set(out.ptr(), lo.ptr(), MPFR_RNDD);
  else if (hi.sign() < 0)
    mpfr_abs(out.ptr(), hi.ptr(), MPFR_RNDD);
  else
    mpfr_set_zero(out.ptr(), 1);
  return out;
}

}  // namespace

RealBall cb_arg(const ComplexBall& a) {
  bool off_axis = a.im.is_positive() || a.im.is_negative();
  if (!off_axis && !a.re.is_positive())
    throw PrecisionError("argument of an enclosure meeting the branch cut");
  Real dx = axis_gap(a.re), dy = axis_gap(a.im);
  Real d(kRadPrec);
  mpfr_hypot(d.ptr(), dx.ptr(), dy.ptr(), MPFR_RNDD);
  if (d.sign() <= 0)
    throw PrecisionError("argument of an enclosure reaching the origin");
  RealBall out(a.prec());
  int t = mpfr_atan2(out.mid.ptr(), a.im.mid.ptr(), a.re.mid.ptr(), MPFR_RNDN);
  // |grad arg| = 1/|z| <= 1/d along an axis-parallel path inside the box
  Real num(kRadPrec);
  mpfr_add(num.ptr(), a.re.rad.ptr(), a.im.rad.ptr(), MPFR_RNDU);
  mpfr_div(out.rad.ptr(), num.ptr(), d.ptr(), MPFR_RNDU);
  bump(out, t);
  return out;
}

ComplexBall cb_log(const ComplexBall& a) {
  return ComplexBall(rb_log(cb_abs(a)), cb_arg(a));
}

ComplexBall cb_exp(const ComplexBall& a) {
  RealBall ex = rb_exp(a.re);
  return ComplexBall(ex * rb_cos(a.im), ex * rb_sin(a.im));
}

ComplexBall cb_pow_si(const ComplexBall& a, long n) {
  if (n == 0) return ComplexBall::exact_si(1, 0, a.prec());
  if (n < 0) return cb_inv(cb_pow_si(a, -n));
  ComplexBall acc = a;
  int top = 63;
  while (top > 0 && ((n >> top) & 1) == 0) --top;
  for (int bit = top - 1; bit >= 0; --bit) {
    acc = acc * acc;
    if ((n >> bit) & 1) acc = acc * a;
  }
  return acc;
}

namespace {

// Interval meet from outward-rounded endpoints; containment of the exact
// intersection is preserved because both endpoint pairs are outer bounds.
std::optional<RealBall> interval_meet(const RealBall& x, const RealBall& y) {
  mpfr_prec_t p = std::max(x.prec(), y.prec());
  Real lo(p), hi(p);
  mpfr_max(lo.ptr(), x.lower().ptr(), y.lower().ptr(), MPFR_RNDD);
  mpfr_min(hi.ptr(), x.upper().ptr(), y.upper().ptr(), MPFR_RNDU);
  if (mpfr_cmp(lo.ptr(), hi.ptr()) > 0) return std::nullopt;
  RealBall out(p);
  mpfr_add(out.mid.ptr(), lo.ptr(), hi.ptr(), MPFR_RNDN);
  mpfr_div_2ui(out.mid.ptr(), out.mid.ptr(), 1, MPFR_RNDN);
  Real d1(kRadPrec), d2(kRadPrec);
  mpfr_sub(d1.ptr(), out.mid.ptr(), lo.ptr(), MPFR_RNDU);
  mpfr_sub(d2.ptr(), hi.ptr(), out.mid.ptr(), MPFR_RNDU);
  mpfr_max(out.rad.ptr(), d1.ptr(), d2.ptr(), MPFR_RNDU);
  Real u = ulp_bound(out.mid.ptr());
  mpfr_add(out.rad.ptr(), out.rad.ptr(), u.ptr(), MPFR_RNDU);
  return out;
}

}  // namespace

std::optional<ComplexBall> cb_intersect(const ComplexBall& a, const ComplexBall& b) {
  auto re = interval_meet(a.re, b.re);
  if (!re) return std::nullopt;
  auto im = interval_meet(a.im, b.im);
  if (!im) return std::nullopt;
  return ComplexBall(*re, *im);
}

bool disjoint(const ComplexBall& a, const ComplexBall& b) {
  Real dre(kRadPrec), dim(kRadPrec), cd(kRadPrec), rr(kRadPrec);
  mpfr_sub(dre.ptr(), a.re.mid.ptr(), b.re.mid.ptr(), MPFR_RNDZ);
  mpfr_sub(dim.ptr(), a.im.mid.ptr(), b.im.mid.ptr(), MPFR_RNDZ);
  mpfr_abs(dre.ptr(), dre.ptr(), MPFR_RNDZ);
  mpfr_abs(dim.ptr(), dim.ptr(), MPFR_RNDZ);
  mpfr_hypot(cd.ptr(), dre.ptr(), dim.ptr(), MPFR_RNDD);
  mpfr_add(rr.ptr(), a.radius().ptr(), b.radius().ptr(), MPFR_RNDU);
  return mpfr_cmp(cd.ptr(), rr.ptr()) > 0;
}

bool boxes_meet(const ComplexBall& a, const ComplexBall& b) {
  auto overlap = [](const RealBall& x, const RealBall& y) {
    return mpfr_cmp(x.lower().ptr(), y.upper().ptr()) <= 0 &&
           mpfr_cmp(y.lower().ptr(), x.upper().ptr()) <= 0;
  };
  return overlap(a.re, b.re) && overlap(a.im, b.im);
}

bool box_inside(const ComplexBall& a, const ComplexBall& b) {
  auto inside = [](const RealBall& x, const RealBall& y) {
    // Outer endpoints of x against inner endpoints of y keep this certified.
    Real ylo(y.prec()), yhi(y.prec());
    mpfr_sub(ylo.ptr(), y.mid.ptr(), y.rad.ptr(), MPFR_RNDU);
    mpfr_add(yhi.ptr(), y.mid.ptr(), y.rad.ptr(), MPFR_RNDD);
    return mpfr_cmp(x.lower().ptr(), ylo.ptr()) > 0 &&
           mpfr_cmp(x.upper().ptr(), yhi.ptr()) < 0;
  };
  return inside(a.re, b.re) && inside(a.im, b.im);
}

}  // namespace rz
