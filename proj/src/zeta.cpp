#include "rz/zeta.hpp"

#include <algorithm>
#include <functional>
#include <vector>

#include "rz/errors.hpp"

namespace rz {

namespace {

mpfr_prec_t working_prec(const RecurrenceSpec& spec, const ComplexBall& s) {
  return std::max(s.prec(), static_cast<mpfr_prec_t>(spec.system.precision_bits));
}

void check_index(const RecurrenceSpec& spec, const MultiIndex& kappa) {
  if (static_cast<int>(kappa.size()) != spec.degree() - 1)
    throw InputError("multi-index length must be the degree minus one");
  for (long v : kappa)
    if (v < 0) throw InputError("multi-index entries must be nonnegative");
}

long index_weight(const MultiIndex& kappa) {
  long w = 0;
  for (long v : kappa) w += v;
  return w;
}

mpz_class index_factorial(const MultiIndex& kappa) {
  mpz_class f = 1;
  for (long v : kappa) {
    mpz_class part;
    mpz_fac_ui(part.get_mpz_t(), static_cast<unsigned long>(v));
    f *= part;
  }
  return f;
}

// z(z-1)...(z-m+1) as a left-to-right product; the same multiplication order
// is used by the shell loop in phi_eval so a single term and the K = 0
// evaluation follow identical arithmetic.
ComplexBall falling_factorial(const ComplexBall& z, long m, mpfr_prec_t prec) {
  ComplexBall acc = ComplexBall::exact_si(1, 0, prec);
  for (long j = 0; j < m; ++j)
    acc = acc * (z - ComplexBall::exact_si(j, 0, prec));
  return acc;
}

// lambda_1^{-s}; lambda_1 is a certified positive real enclosure.
ComplexBall leading_prefactor(const RecurrenceSpec& spec, const ComplexBall& z) {
  const RealBall& l1 = spec.lambdas[0].re;
  if (!l1.is_positive())
    throw PrecisionError("leading Binet coefficient not certified positive");
  return cb_exp(z * rb_log(l1));
}

// binom(-s,kappa) * prod (lambda_i/lambda_1)^{kappa_i} * q^{n0} / (1 - q),
// shared between phi_term and the phi_eval shell loop.
ComplexBall inner_term(const ComplexBall& falling, const RealBall& inv_fact,
                       const ComplexBall& uprod, const ComplexBall& q, long n0,
                       mpfr_prec_t prec) {
  ComplexBall denom = ComplexBall::exact_si(1, 0, prec) - q;
  if (denom.contains_zero())
    throw PoleProximityError("q enclosure contains 1: s lies at or near a pole of this term");
  ComplexBall t = falling * inv_fact;
  t = t * uprod;
  t = t * cb_pow_si(q, n0);
  return t / denom;
}

struct TailBound {
  bool certified = false;
  Real bound;
};

// Upper bound on |sum over |kappa| > K of phi_term|, by binomial-series
// domination: with t = sum_{i>=2} |lambda_i/lambda_1| (|alpha_i|/alpha)^{n0},
// l = ceil|s| and c = max(1, (l+K+1)/(K+2)),
//   tail <= lambda_1^{-sigma} alpha^{-sigma n0} C(l+K, K+1) t^{K+1}
//           / (1 - c t) / (1 - alpha^{-sigma} q2^{K+1}),
// where q2 is an exact upper bound on the subdominant modulus ratios. All
// three geometric factors must be certified below one.
TailBound shell_tail(const RecurrenceSpec& spec, const ComplexBall& s, long K,
                     mpfr_prec_t prec) {
  TailBound out;
  const ConjugateSystem& sys = spec.system;
  int r = sys.degree();
  RealBall one = RealBall::exact_si(1, prec);
  RealBall alpha = sys.roots[0].re;
  RealBall sigma = s.re;

  RealBall t(prec);
  Real q2u(kRadPrec);
  mpfr_set_zero(q2u.ptr(), 1);
  for (int i = 1; i < r; ++i) {
    RealBall rho = cb_abs(sys.roots[i]) / alpha;
    RealBall umod = cb_abs(spec.lambdas[i]) / cb_abs(spec.lambdas[0]);
    t = t + umod * rb_pow_si(rho, spec.n0);
    Real ru = rho.upper();
    if (mpfr_cmp(ru.ptr(), q2u.ptr()) > 0) q2u = ru;
  }
  RealBall q2(prec);
  q2.mid = q2u;

  if (r > 1 && !certified_lt(q2, one)) return out;
  if (!certified_lt(t, one)) return out;

  Real su = cb_abs(s).upper();
  if (mpfr_cmp_ui_2exp(su.ptr(), 1, 40) > 0) return out;
  long ell = mpfr_get_si(su.ptr(), MPFR_RNDU);
  if (ell < 0) ell = 0;

  mpq_class c_q(std::max(ell + K + 1, K + 2), K + 2);
  c_q.canonicalize();
  RealBall c = RealBall::from_q(c_q, prec);
  RealBall u = c * t;
  if (!certified_lt(u, one)) return out;

  RealBall alpha_pow = rb_exp(neg(sigma) * rb_log(alpha));
  RealBall big_q = alpha_pow * rb_pow_si(q2, K + 1);
  if (!certified_lt(big_q, one)) return out;

  mpz_class binom;
  mpz_bin_uiui(binom.get_mpz_t(), static_cast<unsigned long>(ell + K),
               static_cast<unsigned long>(K + 1));

  const RealBall& l1 = spec.lambdas[0].re;
  if (!l1.is_positive())
    throw PrecisionError("leading Binet coefficient not certified positive");
  RealBall bound = rb_exp(neg(sigma) * rb_log(l1));
  bound = bound * rb_exp(rb_mul_si(sigma * sys.log_alpha, -spec.n0));
  bound = bound * RealBall::exact_z(binom, prec);
  bound = bound * rb_pow_si(t, K + 1);
  bound = bound * rb_inv(one - u);
  bound = bound * rb_inv(one - big_q);

  out.certified = true;
  out.bound = bound.upper();
  if (out.bound.sign() < 0) mpfr_set_zero(out.bound.ptr(), 1);
  return out;
}

}  // namespace

ComplexBall multinomial_coefficient(const ComplexBall& z, const MultiIndex& kappa) {
  for (long v : kappa)
    if (v < 0) throw InputError("multi-index entries must be nonnegative");
  mpfr_prec_t prec = z.prec();
  long m = index_weight(kappa);
  ComplexBall falling = falling_factorial(z, m, prec);
  return falling * RealBall::from_q(mpq_class(1) / mpq_class(index_factorial(kappa)), prec);
}

ComplexBall dirichlet_sum(const RecurrenceSpec& spec, const ComplexBall& s, long N) {
  if (N < 1) throw InputError("term count must be positive");
  if (!s.re.is_positive())
    throw MathError("Re(s) enclosure not certified positive");

  const ConjugateSystem& sys = spec.system;
  mpfr_prec_t prec = working_prec(spec, s);
  int r = sys.degree();
  RealBall one = RealBall::exact_si(1, prec);
  RealBall alpha = sys.roots[0].re;
  RealBall sigma = s.re;
  ComplexBall mins = neg(s);

  // Ratio certificate a_{n+1}/a_n >= alpha (1 - E_{n+1}) / (1 + E_n) with
  // E_n = D q2^n bounding the relative Binet error; find the first M past the
  // partial sum where the ratio is certified > 1 and its -sigma power is
  // certified < 1.
  RealBall d_sum(prec);
  Real q2u(kRadPrec);
  mpfr_set_zero(q2u.ptr(), 1);
  for (int i = 1; i < r; ++i) {
    d_sum = d_sum + cb_abs(spec.lambdas[i]) / cb_abs(spec.lambdas[0]);
    Real ru = (cb_abs(sys.roots[i]) / alpha).upper();
    if (mpfr_cmp(ru.ptr(), q2u.ptr()) > 0) q2u = ru;
  }
  RealBall q2(prec);
  q2.mid = q2u;

  long m0 = spec.n0 + N;
  long m_end = m0;
  RealBall rho(prec), g(prec);
  const long kCap = 1 << 20;
  for (;; ++m_end) {
    if (m_end > kCap)
      throw PrecisionError("geometric tail certificate unavailable at this precision");
    RealBall e_now = d_sum * rb_pow_si(q2, m_end);
    RealBall e_next = d_sum * rb_pow_si(q2, m_end + 1);
    if (!certified_lt(one + e_now, alpha * (one - e_next))) continue;
    rho = alpha * (one - e_next) / (one + e_now);
    g = rb_exp(neg(sigma) * rb_log(rho));
    if (certified_lt(g, one)) break;
  }

  std::vector<mpz_class> seq = terms(spec, m_end + 1);

  ComplexBall partial(prec);
  for (long n = spec.n0; n < m0; ++n)
    partial = partial + cb_exp(mins * rb_log(RealBall::exact_z(seq[n], prec)));

  // Exact-term bridge up to the certificate threshold, then the geometric
  // bound a_M^{-sigma} / (1 - g) for everything past it.
  RealBall tail(prec);
  for (long n = m0; n < m_end; ++n)
    tail = tail + rb_exp(neg(sigma) * rb_log(RealBall::exact_z(seq[n], prec)));
  RealBall head = rb_exp(neg(sigma) * rb_log(RealBall::exact_z(seq[m_end], prec)));
  tail = tail + head * rb_inv(one - g);

  Real err = tail.upper();
  add_error(partial.re, err);
  add_error(partial.im, err);
  return partial;
}

ComplexBall phi_term(const RecurrenceSpec& spec, const MultiIndex& kappa,
                     const ComplexBall& s) {
  check_index(spec, kappa);
  const ConjugateSystem& sys = spec.system;
  mpfr_prec_t prec = working_prec(spec, s);
  long m = index_weight(kappa);
  ComplexBall z = neg(s);

  ComplexBall falling = falling_factorial(z, m, prec);
  RealBall inv_fact =
      RealBall::from_q(mpq_class(1) / mpq_class(index_factorial(kappa)), prec);

  ComplexBall uprod = ComplexBall::exact_si(1, 0, prec);
  ComplexBall qprod = ComplexBall::exact_si(1, 0, prec);
  for (size_t i = 0; i < kappa.size(); ++i) {
    if (kappa[i] == 0) continue;
    uprod = uprod * cb_pow_si(spec.lambdas[i + 1] / spec.lambdas[0], kappa[i]);
    qprod = qprod * cb_pow_si(sys.roots[i + 1], kappa[i]);
  }

  ComplexBall q =
      cb_exp((z - ComplexBall::exact_si(m, 0, prec)) * sys.log_alpha) * qprod;
  return leading_prefactor(spec, z) *
         inner_term(falling, inv_fact, uprod, q, spec.n0, prec);
}

PhiResult phi_eval(const RecurrenceSpec& spec, const ComplexBall& s, long K) {
  if (K < 0) throw InputError("shell truncation K must be nonnegative");
  if (s.im.mid.sign() < 0) {
    PhiResult flipped = phi_eval(spec, conj(s), K);
    flipped.value = conj(flipped.value);
    return flipped;
  }

  const ConjugateSystem& sys = spec.system;
  mpfr_prec_t prec = working_prec(spec, s);
  int w = sys.degree() - 1;
  ComplexBall z = neg(s);

  std::vector<std::vector<ComplexBall>> upow(w), apow(w);
  for (int i = 0; i < w; ++i) {
    ComplexBall u = spec.lambdas[i + 1] / spec.lambdas[0];
    upow[i].reserve(K + 1);
    apow[i].reserve(K + 1);
    upow[i].push_back(ComplexBall::exact_si(1, 0, prec));
    apow[i].push_back(ComplexBall::exact_si(1, 0, prec));
    for (long k = 1; k <= K; ++k) {
      upow[i].push_back(upow[i].back() * u);
      apow[i].push_back(apow[i].back() * sys.roots[i + 1]);
    }
  }

  ComplexBall total(prec);
  ComplexBall falling = ComplexBall::exact_si(1, 0, prec);
  for (long m = 0; m <= K; ++m) {
    if (m > 0)
      falling = falling * (z - ComplexBall::exact_si(m - 1, 0, prec));
    ComplexBall alpha_shell =
        cb_exp((z - ComplexBall::exact_si(m, 0, prec)) * sys.log_alpha);
    if (w == 0) {
      if (m == 0)
        total = total + inner_term(falling, RealBall::exact_si(1, prec),
                                   ComplexBall::exact_si(1, 0, prec),
                                   alpha_shell, spec.n0, prec);
      continue;
    }
    // Lexicographic walk over the shell |kappa| = m with running products.
    std::function<void(int, long, const ComplexBall&, const ComplexBall&,
                       const mpz_class&)>
        walk = [&](int pos, long rem, const ComplexBall& uprod,
                   const ComplexBall& qprod, const mpz_class& fact) {
          if (pos == w - 1) {
            ComplexBall up = rem == 0 ? uprod : uprod * upow[pos][rem];
            ComplexBall qp = rem == 0 ? qprod : qprod * apow[pos][rem];
            mpz_class f = fact;
            if (rem > 1) {
              mpz_class part;
              mpz_fac_ui(part.get_mpz_t(), static_cast<unsigned long>(rem));
              f *= part;
            }
            RealBall inv_fact = RealBall::from_q(mpq_class(1) / mpq_class(f), prec);
            total = total + inner_term(falling, inv_fact, up,
                                       alpha_shell * qp, spec.n0, prec);
            return;
          }
          for (long k = 0; k <= rem; ++k) {
            ComplexBall up = k == 0 ? uprod : uprod * upow[pos][k];
            ComplexBall qp = k == 0 ? qprod : qprod * apow[pos][k];
            mpz_class f = fact;
            if (k > 1) {
              mpz_class part;
              mpz_fac_ui(part.get_mpz_t(), static_cast<unsigned long>(k));
              f *= part;
            }
            walk(pos + 1, rem - k, up, qp, f);
          }
        };
    walk(0, m, ComplexBall::exact_si(1, 0, prec),
         ComplexBall::exact_si(1, 0, prec), mpz_class(1));
  }

  PhiResult out;
  out.value = leading_prefactor(spec, z) * total;
  TailBound tb = shell_tail(spec, s, K, prec);
  if (tb.certified) {
    add_error(out.value.re, tb.bound);
    add_error(out.value.im, tb.bound);
    out.certified_tail = true;
  }
  return out;
}

long suggest_truncation(const RecurrenceSpec& spec, const ComplexBall& s,
                        long target_bits, long cap) {
  if (target_bits < 1) throw InputError("target bits must be positive");
  if (cap < 0) throw InputError("truncation cap must be nonnegative");
  mpfr_prec_t prec = working_prec(spec, s);
  Real threshold(prec);
  mpfr_set_ui_2exp(threshold.ptr(), 1, -target_bits, MPFR_RNDU);
  for (long K = 0; K <= cap; ++K) {
    TailBound tb = shell_tail(spec, s, K, prec);
    if (tb.certified && mpfr_cmp(tb.bound.ptr(), threshold.ptr()) <= 0) return K;
  }
  return cap;
}

}  // namespace rz
