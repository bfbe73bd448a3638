#include "rz/recurrence.hpp"

#include <algorithm>
#include <utility>

#include "rz/config.hpp"
#include "rz/errors.hpp"

namespace rz {

namespace {

std::vector<mpz_class> raw_terms(const IntPolynomial& p,
                                 const std::vector<mpz_class>& initial,
                                 long count) {
  int r = p.degree();
  std::vector<mpz_class> a;
  if (count <= 0) return a;
  a.reserve(static_cast<size_t>(count));
  for (long n = 0; n < count && n < r; ++n) a.push_back(initial[n]);
  for (long n = r; n < count; ++n) {
    mpz_class next = 0;
    for (int j = 0; j < r; ++j) next -= p.coeff(j) * a[n - r + j];
    a.push_back(next);
  }
  return a;
}

// Gaussian elimination over complex balls with deterministic pivoting by the
// largest modulus upper bound. Fails (returns false) when a pivot cannot be
// certified nonzero at this precision.
bool solve_vandermonde(const std::vector<ComplexBall>& roots,
                       const std::vector<mpz_class>& rhs, mpfr_prec_t prec,
                       std::vector<ComplexBall>& out) {
  int r = static_cast<int>(roots.size());
  std::vector<std::vector<ComplexBall>> m(r);
  for (int n = 0; n < r; ++n) {
    m[n].reserve(r + 1);
    for (int i = 0; i < r; ++i) m[n].push_back(cb_pow_si(roots[i], n));
    m[n].push_back(
        ComplexBall(RealBall::exact_z(rhs[n], prec), RealBall(prec)));
  }
  for (int col = 0; col < r; ++col) {
    int pivot = -1;
    Real best(kRadPrec);
    mpfr_set_zero(best.ptr(), 1);
    for (int row = col; row < r; ++row) {
      if (m[row][col].contains_zero()) continue;
      Real u = cb_abs(m[row][col]).upper();
      if (pivot < 0 || mpfr_cmp(u.ptr(), best.ptr()) > 0) {
        pivot = row;
        best = u;
      }
    }
    if (pivot < 0) return false;
    std::swap(m[col], m[pivot]);
    ComplexBall inv = cb_inv(m[col][col]);
    for (int row = col + 1; row < r; ++row) {
      if (m[row][col].contains_zero() && m[row][col].radius().is_zero())
        continue;
      ComplexBall f = m[row][col] * inv;
      for (int k = col; k <= r; ++k) m[row][k] = m[row][k] - f * m[col][k];
    }
  }
  out.assign(r, ComplexBall(prec));
  for (int col = r - 1; col >= 0; --col) {
    ComplexBall acc = m[col][r];
    for (int k = col + 1; k < r; ++k) acc = acc - m[col][k] * out[k];
    out[col] = acc * cb_inv(m[col][col]);
  }
  return true;
}

}  // namespace

std::vector<mpz_class> power_sum_initial_terms(const IntPolynomial& p) {
  if (!p.is_monic()) throw MathError("polynomial must be monic");
  int r = p.degree();
  std::vector<mpz_class> s;
  s.reserve(r);
  s.push_back(r);
  for (int k = 1; k < r; ++k) {
    mpz_class v = -k * p.coeff(r - k);
    for (int j = 1; j < k; ++j) v -= p.coeff(r - j) * s[k - j];
    s.push_back(v);
  }
  return s;
}

std::vector<ComplexBall> binet_coefficients(
    const ConjugateSystem& system,
    const std::vector<mpz_class>& initial_terms) {
  int r = system.degree();
  if (static_cast<int>(initial_terms.size()) != r)
    throw InputError("expected exactly r initial terms");
  bool all_zero = std::all_of(initial_terms.begin(), initial_terms.end(),
                              [](const mpz_class& v) { return v == 0; });
  if (all_zero)
    throw MathError("zero sequence: lambda_1 = 0 is not positive");

  for (mpfr_prec_t wp = system.precision_bits;; wp *= 2) {
    if (wp > kPrecisionCap)
      throw PrecisionError("Binet solve reached the precision cap");
    std::vector<ComplexBall> roots = refine_roots(system, wp);
    std::vector<ComplexBall> lam;
    if (!solve_vandermonde(roots, initial_terms, wp, lam)) continue;

    // lambda_i is a rational expression in the real data and root_i, so real
    // roots carry real coefficients and conjugate roots carry conjugate ones.
    // Snapping is only sound while the enclosure still allows it.
    bool snapped = true;
    for (int i = 0; i < r && snapped; ++i) {
      if (system.roots[i].is_certified_real()) {
        if (!lam[i].im.contains_zero())
          snapped = false;
        else
          lam[i].im = RealBall(wp);
      } else if (system.conj_partner[i] > i) {
        lam[system.conj_partner[i]] = conj(lam[i]);
      }
    }
    if (!snapped) continue;

    const RealBall& l1 = lam[0].re;
    if (l1.is_negative() ||
        (l1.contains_zero() && l1.rad.is_zero()))
      throw MathError("lambda_1 is not positive: the sequence is not "
                      "eventually increasing");
    if (!l1.is_positive()) continue;
    return lam;
  }
}

long start_index(const ConjugateSystem& system,
                 const std::vector<ComplexBall>& lambdas,
                 const std::vector<mpz_class>& initial_terms) {
  int r = system.degree();
  if (static_cast<int>(lambdas.size()) != r ||
      static_cast<int>(initial_terms.size()) != r)
    throw InputError("lambda or initial term count does not match the degree");
  if (!lambdas[0].re.is_positive())
    throw MathError("lambda_1 must be certified positive");

  mpfr_prec_t wp = system.precision_bits;
  const RealBall& alpha = system.roots[0].re;
  RealBall one = RealBall::exact_si(1, wp);

  // a_n = lambda_1 alpha^n (1 + delta_n) with |delta_n| <= E_n = D q2^n,
  // q2 the largest non-dominant modulus over alpha.
  RealBall d_sum(wp);
  for (int i = 1; i < r; ++i)
    d_sum = d_sum + cb_abs(lambdas[i]) / lambdas[0].re;
  RealBall q2(wp);
  for (int i = 1; i < r; ++i) {
    RealBall ratio = cb_abs(system.roots[i]) / alpha;
    if (i == 1 || mpfr_cmp(ratio.upper().ptr(), q2.upper().ptr()) > 0)
      q2 = ratio;
  }
  if (r > 1 && !certified_lt(q2, one))
    throw PrecisionError("modulus gap below the dominant root not certified");

  // Smallest threshold where E_n < 1 (positivity) and
  // alpha (1 - E_{n+1}) > 1 + E_n (strict growth); both persist for larger n
  // because E_n decreases.
  long threshold = -1;
  RealBall en = d_sum;
  constexpr long kThresholdCap = 1 << 20;
  for (long n = 0; n <= kThresholdCap; ++n) {
    RealBall en1 = r > 1 ? en * q2 : RealBall(wp);
    bool positive = mpfr_cmp_ui(en.upper().ptr(), 1) < 0;
    if (positive && certified_lt(one + en, alpha * (one - en1))) {
      threshold = n;
      break;
    }
    en = en1;
  }
  if (threshold < 0)
    throw PrecisionError("start index threshold not certified below the cap");

  std::vector<mpz_class> a =
      raw_terms(system.polynomial, initial_terms, threshold + 34);
  auto ok = [&](long n) {
    return a[n] >= 1 && a[n + 1] > a[n];
  };
  long n0 = threshold;
  while (n0 > 0 && ok(n0 - 1)) --n0;
  for (long n = n0; n < n0 + 32; ++n)
    if (!ok(n))
      throw MathError("certified start index contradicts the exact terms");
  return n0;
}

std::vector<mpz_class> terms(const RecurrenceSpec& spec, long count) {
  if (count < 0) throw InputError("term count must be nonnegative");
  return raw_terms(spec.system.polynomial, spec.initial_terms, count);
}

RecurrenceSpec make_recurrence(const ConjugateSystem& system,
                               std::vector<mpz_class> initial_terms) {
  std::vector<ComplexBall> lambdas = binet_coefficients(system, initial_terms);
  long n0 = start_index(system, lambdas, initial_terms);
  return RecurrenceSpec{system, std::move(initial_terms), std::move(lambdas),
                        n0};
}

RecurrenceSpec make_recurrence(const ConjugateSystem& system) {
  return make_recurrence(system, power_sum_initial_terms(system.polynomial));
}

}  // namespace rz
