#include "rz/relations.hpp"

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <optional>
#include <string>
#include <utility>

#include "rz/config.hpp"
#include "rz/errors.hpp"
#include "rz/lll.hpp"

namespace rz {

namespace {

std::string vec_text(const IntVec& m) {
  std::string out = "(";
  for (size_t i = 0; i < m.size(); ++i) {
    if (i) out += ", ";
    out += m[i].get_str();
  }
  out += ")";
  return out;
}

long exponent_si(const mpz_class& v) {
  if (!v.fits_slong_p())
    throw InputError("relation exponent does not fit a machine word");
  return v.get_si();
}

// Product of root powers as a ball at the requested working precision.
ComplexBall power_product(const ConjugateSystem& system, const IntVec& m,
                          mpfr_prec_t wp) {
  std::vector<ComplexBall> roots = refine_roots(system, wp);
  ComplexBall acc = ComplexBall::exact_si(1, 0, wp);
  for (size_t i = 0; i < m.size(); ++i) {
    if (m[i] == 0) continue;
    acc = acc * cb_pow_si(roots[i], exponent_si(m[i]));
  }
  return acc;
}

enum class IntervalOutcome { kExcluded, kPassed, kCapped };

// Escalates the working precision until the product ball either excludes 1
// (rigorous falsity) or encloses 1 with diameter below 2^-target_bits. The
// starting precision budgets one coefficient-sized word per unit of total
// exponent, since |root|^|m| grows at most like the Cauchy bound to |m|.
IntervalOutcome interval_level(const ConjugateSystem& system, const IntVec& m,
                               long target_bits) {
  long weight = 0;
  for (const auto& v : m) weight += std::abs(exponent_si(v));
  size_t coeff_bits = 2;
  for (const auto& c : system.polynomial.coeffs())
    if (c != 0)
      coeff_bits = std::max(coeff_bits, mpz_sizeinbase(c.get_mpz_t(), 2) + 1);
  Real target(kRadPrec);
  mpfr_set_ui_2exp(target.ptr(), 1, -target_bits, MPFR_RNDD);
  mpfr_prec_t wp = static_cast<mpfr_prec_t>(std::max<long>(
      system.precision_bits,
      target_bits + 64 + weight * static_cast<long>(coeff_bits)));
  for (; wp <= kPrecisionCap; wp *= 2) {
    ComplexBall p = power_product(system, m, wp);
    if (!p.contains_real_si(1)) return IntervalOutcome::kExcluded;
    Real width(kRadPrec);
    mpfr_mul_2ui(width.ptr(), p.radius().ptr(), 1, MPFR_RNDU);
    if (mpfr_cmp(width.ptr(), target.ptr()) < 0) return IntervalOutcome::kPassed;
  }
  return IntervalOutcome::kCapped;
}

mpz_class poly_norm(const IntPolynomial& p) {
  mpz_class n = p.coeff(0);
  if (p.degree() % 2 != 0) n = -n;
  return n;
}

// Rounds mid * 2^confidence_bits to the nearest integer; demands that the
// ball is tight enough for the rounding to be meaningful.
mpz_class scaled_round(const RealBall& b, long confidence_bits) {
  Real rad(kRadPrec);
  mpfr_mul_2si(rad.ptr(), b.rad.ptr(), confidence_bits, MPFR_RNDU);
  if (mpfr_cmp_d(rad.ptr(), 0.5) >= 0)
    throw PrecisionError("enclosure too wide for the requested confidence");
  Real t(b.mid.prec());
  mpfr_mul_2si(t.ptr(), b.mid.ptr(), confidence_bits, MPFR_RNDN);
  mpz_class out;
  mpfr_get_z(out.get_mpz_t(), t.ptr(), MPFR_RNDN);
  return out;
}

bool is_prime_degree(int r) {
  if (r < 2) return false;
  for (int d = 2; d * d <= r; ++d)
    if (r % d == 0) return false;
  return true;
}

}  // namespace

NormClass norm_class(const IntPolynomial& p) {
  if (!p.is_monic()) throw MathError("norm classification requires a monic polynomial");
  mpz_class n = poly_norm(p);
  if (n == 1) return NormClass::kNormPlusOne;
  if (n == -1) return NormClass::kNormMinusOne;
  return NormClass::kNotUnit;
}

VerifyResult verify_relation(const ConjugateSystem& system, const IntVec& m,
                             long precision_bits) {
  int r = system.degree();
  if (static_cast<int>(m.size()) != r)
    throw InputError("relation vector length must equal the degree");

  bool all_zero = std::all_of(m.begin(), m.end(),
                              [](const mpz_class& v) { return v == 0; });
  if (all_zero) return {VerifyStatus::kCertifiedTrue, false};

  // Exact certificate: equal exponents reduce to a power of the norm.
  bool all_equal = std::all_of(m.begin(), m.end(),
                               [&](const mpz_class& v) { return v == m[0]; });
  if (all_equal) {
    mpz_class n = poly_norm(system.polynomial);
    if (n == 1) return {VerifyStatus::kCertifiedTrue, false};
    if (n == -1) {
      bool even = mpz_even_p(m[0].get_mpz_t()) != 0;
      return {even ? VerifyStatus::kCertifiedTrue : VerifyStatus::kCertifiedFalse,
              false};
    }
    return {VerifyStatus::kCertifiedFalse, false};
  }

  // Exact certificate: a pairing-symmetric vector factors into powers of
  // root * paired root = 1.
  if (!system.reciprocal_pair.empty()) {
    bool symmetric = true;
    for (int i = 0; i < r; ++i)
      if (m[system.reciprocal_pair[i]] != m[i]) symmetric = false;
    if (symmetric) return {VerifyStatus::kCertifiedTrue, false};
  }

  IntervalOutcome first = interval_level(system, m, precision_bits);
  if (first == IntervalOutcome::kExcluded)
    return {VerifyStatus::kCertifiedFalse, false};
  if (first == IntervalOutcome::kCapped)
    return {VerifyStatus::kUndecided, false};
  IntervalOutcome second = interval_level(system, m, 2 * precision_bits);
  if (second == IntervalOutcome::kExcluded)
    return {VerifyStatus::kCertifiedFalse, false};
  if (second == IntervalOutcome::kCapped)
    return {VerifyStatus::kUndecided, false};
  return {VerifyStatus::kCertifiedTrue, true};
}

RelationLattice find_relation_lattice(const ConjugateSystem& system,
                                      mpfr_prec_t precision_bits,
                                      long confidence_bits, long max_coeff) {
  if (!system.is_perron)
    throw MathError("relation detection requires a certified Perron system");
  if (precision_bits < 2 * confidence_bits)
    throw InputError("precision_bits must be at least twice confidence_bits");
  int r = system.degree();

  const ConjugateSystem* sys = &system;
  std::optional<ConjugateSystem> refreshed;
  if (system.precision_bits < precision_bits) {
    refreshed =
        classify(system.polynomial, isolate_roots(system.polynomial, precision_bits));
    sys = &*refreshed;
  }

  // Rows (m_1..m_r, n) against the two scaled linear forms
  // sum m_i log|root_i| and sum m_i arg(root_i) + 2 pi n.
  IntMat rows(r + 1, IntVec(r + 3, 0));
  for (int i = 0; i < r; ++i) {
    rows[i][i] = 1;
    rows[i][r + 1] = scaled_round(sys->log_abs[i], confidence_bits);
    rows[i][r + 2] = scaled_round(sys->args[i], confidence_bits);
  }
  rows[r][r] = 1;
  rows[r][r + 2] =
      scaled_round(rb_mul_si(rb_pi(sys->precision_bits), 2), confidence_bits);
  lll_reduce(rows);

  mpz_class form_limit = mpz_class(1) << static_cast<unsigned long>(
                             std::max<long>(1, confidence_bits / 2));
  IntMat accepted;
  for (const auto& row : rows) {
    if (abs(row[r + 1]) >= form_limit || abs(row[r + 2]) >= form_limit)
      continue;
    IntVec m(row.begin(), row.begin() + r);
    mpz_class biggest = 0;
    for (const auto& v : m) biggest = std::max(biggest, mpz_class(abs(v)));
    if (biggest == 0 || biggest > max_coeff) continue;
    VerifyResult v = verify_relation(system, m, confidence_bits);
    if (v.status == VerifyStatus::kCertifiedTrue) {
      accepted.push_back(std::move(m));
    } else if (v.status == VerifyStatus::kUndecided) {
      throw PrecisionError(
          "candidate relation could not be certified or refuted: " +
          vec_text(m));
    }
    // A refuted candidate is reduction noise and is dropped; absence of
    // further relations stays heuristic at confidence_bits.
  }

  NormClass nc = norm_class(system.polynomial);
  if (nc != NormClass::kNotUnit)
    accepted.push_back(IntVec(r, nc == NormClass::kNormPlusOne ? 1 : 2));

  RelationLattice out;
  out.ambient_rank = r;
  out.confidence_bits = confidence_bits;
  if (!accepted.empty()) out.basis = hnf(accepted);
  out.rank = static_cast<int>(out.basis.size());
  for (const auto& row : out.basis) {
    VerifyResult v = verify_relation(system, row, confidence_bits);
    if (v.status != VerifyStatus::kCertifiedTrue)
      throw PrecisionError("inconsistent relation basis: " + vec_text(row) +
                           " failed verification");
    out.verified.push_back(true);
  }
  return out;
}

RelationLattice h0_lattice(int r) {
  if (r < 1) throw InputError("ambient rank must be positive");
  RelationLattice out;
  out.ambient_rank = r;
  if (r == 1) return out;
  IntMat gens(r - 1, IntVec(r, 0));
  for (int i = 0; i + 1 < r; ++i) {
    gens[i][i] = 1;
    gens[i][r - 1] = -1;
  }
  out.basis = hnf(gens);
  out.rank = static_cast<int>(out.basis.size());
  out.verified.assign(out.rank, false);
  return out;
}

RelationLattice intersect_with_H0(const RelationLattice& L) {
  RelationLattice out;
  out.ambient_rank = L.ambient_rank;
  out.confidence_bits = L.confidence_bits;
  if (L.basis.empty() || L.ambient_rank < 2) return out;
  out.basis = lattice_intersect(L.basis, h0_lattice(L.ambient_rank).basis);
  out.rank = static_cast<int>(out.basis.size());
  // Integer combinations of verified relations are relations exactly.
  out.verified.assign(out.rank, true);
  return out;
}

bool is_trivial(const RelationLattice& L) {
  if (L.rank == 0) return true;
  if (L.rank > 1) return false;
  const IntVec& g = L.basis[0];
  return std::all_of(g.begin(), g.end(),
                     [&](const mpz_class& v) { return v == g[0]; });
}

InjectivityResult decide_injectivity(const ConjugateSystem& system,
                                     mpfr_prec_t precision_bits,
                                     long confidence_bits, long max_coeff) {
  InjectivityResult res;
  res.lattice =
      find_relation_lattice(system, precision_bits, confidence_bits, max_coeff);
  res.h0_intersection = intersect_with_H0(res.lattice);
  res.confidence_bits = confidence_bits;
  res.injective = res.h0_intersection.rank == 0;
  if (!res.injective) {
    const IntMat& b = res.h0_intersection.basis;
    size_t best = 0;
    mpz_class best_norm = -1;
    for (size_t i = 0; i < b.size(); ++i) {
      mpz_class n2 = 0;
      for (const auto& v : b[i]) n2 += v * v;
      if (best_norm < 0 || n2 < best_norm ||
          (n2 == best_norm && b[i] < b[best])) {
        best = i;
        best_norm = n2;
      }
    }
    res.witness = b[best];
  }
  return res;
}

SufficientReport sufficient_conditions(
    const ConjugateSystem& system, const std::set<std::string>& asserted_flags) {
  static const std::set<std::string> known = {
      "galois_full_symmetric", "galois_alternating", "galois_2_homogeneous"};
  for (const auto& f : asserted_flags)
    if (!known.count(f)) throw InputError("unknown assertion flag: " + f);

  SufficientReport rep;
  rep.conditions.push_back({"pisot", system.is_pisot, false});
  rep.conditions.push_back(
      {"prime_degree", is_prime_degree(system.degree()), false});
  for (const auto& name : known)
    rep.conditions.push_back(
        {name, asserted_flags.count(name) > 0, true});
  for (const auto& c : rep.conditions)
    if (c.satisfied) rep.module_trivial = true;
  return rep;
}

RankCheck rank_arithmetic_check(const RelationLattice& a,
                                const RelationLattice& b) {
  if (a.ambient_rank != b.ambient_rank)
    throw InputError("rank check requires matching ambient ranks");
  RankCheck c;
  c.lhs = a.rank + b.rank;
  long sum_rank;
  if (a.basis.empty())
    sum_rank = b.rank;
  else if (b.basis.empty())
    sum_rank = a.rank;
  else
    sum_rank = static_cast<long>(lattice_sum(a.basis, b.basis).size());
  long inter_rank =
      (a.basis.empty() || b.basis.empty())
          ? 0
          : static_cast<long>(lattice_intersect(a.basis, b.basis).size());
  c.rhs = sum_rank + inter_rank;
  return c;
}

}  // namespace rz
