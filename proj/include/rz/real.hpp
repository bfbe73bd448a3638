#pragma once

#include <mpfr.h>

#include <string>
#include <utility>

namespace rz {

// Thin RAII wrapper over mpfr_t. All arithmetic is done through the MPFR C
// API on ptr(); this class only owns storage and provides conversions. Copy
// preserves the source precision exactly (mpfr_set at equal precision is
// lossless).
class Real {
 public:
  Real() { mpfr_init2(x_, 64), mpfr_set_zero(x_, 1); }
  explicit Real(mpfr_prec_t prec) { mpfr_init2(x_, prec), mpfr_set_zero(x_, 1); }
  Real(const Real& o) {
    mpfr_init2(x_, mpfr_get_prec(o.x_));
    mpfr_set(x_, o.x_, MPFR_RNDN);
  }
  Real(Real&& o) noexcept {
    mpfr_init2(x_, MPFR_PREC_MIN);
    mpfr_swap(x_, o.x_);
  }
  Real& operator=(const Real& o) {
    if (this != &o) {
      mpfr_set_prec(x_, mpfr_get_prec(o.x_));
      mpfr_set(x_, o.x_, MPFR_RNDN);
    }
    return *this;
  }
  Real& operator=(Real&& o) noexcept {
    mpfr_swap(x_, o.x_);
    return *this;
  }
  ~Real() { mpfr_clear(x_); }

  mpfr_ptr ptr() { return x_; }
  mpfr_srcptr ptr() const { return x_; }
  mpfr_prec_t prec() const { return mpfr_get_prec(x_); }

  bool is_zero() const { return mpfr_zero_p(x_) != 0; }
  int sign() const { return mpfr_sgn(x_); }
  double to_double() const { return mpfr_get_d(x_, MPFR_RNDN); }

 private:
  mpfr_t x_;
};

}  // namespace rz
