#include "rz/roots.hpp"

#include <algorithm>
#include <numeric>

#include "rz/config.hpp"
#include "rz/errors.hpp"

namespace rz {

namespace {

ComplexBall exact_mid(const ComplexBall& z) {
  ComplexBall out(z.prec());
  out.re.mid = z.re.mid;
  out.im.mid = z.im.mid;
  return out;
}

// All roots satisfy |z| < 1 + max_i |c_i / c_r|.
Real cauchy_bound(const IntPolynomial& p, mpfr_prec_t prec) {
  Real best(prec), t(prec), lead(prec);
  mpfr_set_z(lead.ptr(), p.leading().get_mpz_t(), MPFR_RNDD);
  mpfr_abs(lead.ptr(), lead.ptr(), MPFR_RNDD);
  mpfr_set_zero(best.ptr(), 1);
  for (int k = 0; k < p.degree(); ++k) {
    mpfr_set_z(t.ptr(), p.coeff(k).get_mpz_t(), MPFR_RNDU);
    mpfr_abs(t.ptr(), t.ptr(), MPFR_RNDU);
    mpfr_div(t.ptr(), t.ptr(), lead.ptr(), MPFR_RNDU);
    if (mpfr_cmp(t.ptr(), best.ptr()) > 0) best = t;
  }
  mpfr_add_ui(best.ptr(), best.ptr(), 1, MPFR_RNDU);
  return best;
}

std::vector<ComplexBall> initial_guesses(const IntPolynomial& p, mpfr_prec_t wp,
                                         int variant) {
  int n = p.degree();
  Real r0 = cauchy_bound(p, wp);
  mpfr_mul_d(r0.ptr(), r0.ptr(), 0.5 + 0.125 * variant, MPFR_RNDN);
  RealBall radius(wp);
  mpfr_set(radius.mid.ptr(), r0.ptr(), MPFR_RNDN);
  RealBall two_pi = rb_pi(wp) + rb_pi(wp);
  std::vector<ComplexBall> z;
  z.reserve(n);
  for (int k = 0; k < n; ++k) {
    // Fixed fractional offset so no starting point sits on a symmetry axis;
    // nonzero variants rotate and rescale the whole configuration so a retry
    // never replays the dynamics of a failed attempt.
    mpq_class frac(4 * k + 1, 4 * n);
    frac += mpq_class(3 * variant, 8 * n + 5);
    frac.canonicalize();
    RealBall theta = two_pi * RealBall::from_q(frac, wp);
    ComplexBall g(radius * rb_cos(theta), radius * rb_sin(theta));
    z.push_back(exact_mid(g));
  }
  return z;
}

void perturb(ComplexBall& z, int i) {
  Real eps(z.prec());
  mpfr_set_ui_2exp(eps.ptr(), 2 * i + 3, -9, MPFR_RNDN);
  mpfr_add(z.re.mid.ptr(), z.re.mid.ptr(), eps.ptr(), MPFR_RNDN);
  mpfr_set_ui_2exp(eps.ptr(), i + 5, -10, MPFR_RNDN);
  mpfr_add(z.im.mid.ptr(), z.im.mid.ptr(), eps.ptr(), MPFR_RNDN);
}

// Aberth-Ehrlich simultaneous iteration on exact midpoints. Returns false
// when the sweep limit is reached without meeting the step tolerance.
bool aberth(const IntPolynomial& p, const IntPolynomial& dp,
            std::vector<ComplexBall>& z, mpfr_prec_t wp) {
  const int n = static_cast<int>(z.size());
  Real tol(kRadPrec);
  mpfr_set_ui_2exp(tol.ptr(), 1, -(wp - 32), MPFR_RNDU);
  const int max_sweeps = 400 + 60 * n;
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    bool converged = true;
    for (int i = 0; i < n; ++i) {
      ComplexBall pv = p.eval(z[i]);
      if (pv.contains_zero()) continue;  // residual below rounding noise
      ComplexBall pd = dp.eval(z[i]);
      if (pd.contains_zero()) {
        perturb(z[i], i);
        converged = false;
        continue;
      }
      ComplexBall w = pv / pd;
      ComplexBall s(wp);
      bool collision = false;
      for (int j = 0; j < n && !collision; ++j) {
        if (j == i) continue;
        ComplexBall d = z[i] - z[j];
        if (d.contains_zero())
          collision = true;
        else
          s = s + cb_inv(d);
      }
      if (collision) {
        perturb(z[i], i);
        converged = false;
        continue;
      }
      ComplexBall den = ComplexBall::exact_si(1, 0, wp) - w * s;
      ComplexBall dz = den.contains_zero() ? w : w / den;
      z[i] = exact_mid(z[i] - dz);
      // relative step |dz| <= tol * (1 + |z_i|) counts as converged
      Real step = cb_abs(dz).upper();
      Real scale(kRadPrec);
      mpfr_set(scale.ptr(), cb_abs(z[i]).upper().ptr(), MPFR_RNDU);
      mpfr_add_ui(scale.ptr(), scale.ptr(), 1, MPFR_RNDU);
      mpfr_mul(scale.ptr(), scale.ptr(), tol.ptr(), MPFR_RNDU);
      if (mpfr_cmp(step.ptr(), scale.ptr()) > 0) converged = false;
    }
    if (converged) return true;
  }
  return false;
}

// Weierstrass posterior bound: with W_i = p(z_i) / (lc * prod_{j!=i}(z_i - z_j)),
// the union of the disks D(z_i, n |W_i|) contains every root and a connected
// component made of k disks contains exactly k roots. Pairwise disjoint disks
// therefore certify one root each.
bool weierstrass_boxes(const IntPolynomial& p, const std::vector<ComplexBall>& z,
                       std::vector<ComplexBall>& boxes) {
  const int n = static_cast<int>(z.size());
  boxes.clear();
  for (int i = 0; i < n; ++i) {
    RealBall num = cb_abs(p.eval(z[i]));
    RealBall den = RealBall::exact_z(abs(p.leading()), z[i].prec());
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      den = den * cb_abs(z[i] - z[j]);
    }
    if (!den.is_positive()) return false;
    Real ri = (rb_mul_si(num, n) / den).upper();
    ComplexBall box = exact_mid(z[i]);
    mpfr_set(box.re.rad.ptr(), ri.ptr(), MPFR_RNDU);
    mpfr_set(box.im.rad.ptr(), ri.ptr(), MPFR_RNDU);
    boxes.push_back(box);
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (!disjoint(boxes[i], boxes[j])) return false;
  return true;
}

bool newton_refine(const IntPolynomial& p, const IntPolynomial& dp,
                   ComplexBall& box, const Real& target) {
  for (int it = 0; it < 80; ++it) {
    Real rad = box.radius();
    if (mpfr_cmp(rad.ptr(), target.ptr()) <= 0) return true;
    ComplexBall slope = dp.eval(box);
    if (slope.contains_zero()) return false;
    ComplexBall c = exact_mid(box);
    ComplexBall img = c - p.eval(c) / slope;
    auto meet = cb_intersect(img, box);
    if (!meet) return false;
    Real nrad = meet->radius();
    // demand geometric progress; a stall means the precision is exhausted
    Real eight(kRadPrec);
    mpfr_mul_d(eight.ptr(), rad.ptr(), 0.875, MPFR_RNDD);
    if (mpfr_cmp(nrad.ptr(), eight.ptr()) > 0) return false;
    box = *meet;
  }
  return false;
}

// Match every enclosure with the one holding its complex conjugate. Real
// roots get an exactly-zero imaginary part; conjugate pairs are replaced by
// bit-exact mirrors (positive imaginary part is the master copy).
bool canonicalize_conjugates(std::vector<ComplexBall>& boxes) {
  const int n = static_cast<int>(boxes.size());
  std::vector<int> partner(n, -1);
  for (int i = 0; i < n; ++i) {
    ComplexBall mirror = conj(boxes[i]);
    int hit = -1;
    for (int j = 0; j < n; ++j) {
      if (!boxes_meet(mirror, boxes[j])) continue;
      if (hit >= 0) return false;  // ambiguous at this precision
      hit = j;
    }
    if (hit < 0) return false;
    partner[i] = hit;
  }
  for (int i = 0; i < n; ++i)
    if (partner[partner[i]] != i) return false;
  for (int i = 0; i < n; ++i) {
    if (partner[i] == i) {
      if (!boxes[i].im.contains_zero()) return false;
      boxes[i].im = RealBall(boxes[i].prec());
    } else if (partner[i] > i) {
      int j = partner[i];
      int si = boxes[i].im.mid.sign(), sj = boxes[j].im.mid.sign();
      if (si == sj || si == 0 || sj == 0) return false;
      if (si > 0)
        boxes[j] = conj(boxes[i]);
      else
        boxes[i] = conj(boxes[j]);
    }
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (!disjoint(boxes[i], boxes[j])) return false;
  return true;
}

// Deterministic presentation order: descending real part, then closeness to
// the real axis, so conjugate pairs are adjacent with +imaginary first.
void sort_canonical(std::vector<ComplexBall>& boxes) {
  std::sort(boxes.begin(), boxes.end(),
            [](const ComplexBall& a, const ComplexBall& b) {
              int c = mpfr_cmp(a.re.mid.ptr(), b.re.mid.ptr());
              if (c != 0) return c > 0;
              int m = mpfr_cmpabs(a.im.mid.ptr(), b.im.mid.ptr());
              if (m != 0) return m < 0;
              return mpfr_cmp(a.im.mid.ptr(), b.im.mid.ptr()) > 0;
            });
}

bool attempt_isolation(const IntPolynomial& p, mpfr_prec_t precision_bits,
                       mpfr_prec_t wp, int variant,
                       std::vector<ComplexBall>& out) {
  IntPolynomial dp = p.derivative();
  std::vector<ComplexBall> z = initial_guesses(p, wp, variant);
  if (!aberth(p, dp, z, wp)) return false;
  std::vector<ComplexBall> boxes;
  if (!weierstrass_boxes(p, z, boxes)) return false;
  Real target(kRadPrec);
  mpfr_set_ui_2exp(target.ptr(), 1, -(precision_bits / 2 + 8), MPFR_RNDU);
  for (auto& box : boxes)
    if (!newton_refine(p, dp, box, target)) return false;
  if (!canonicalize_conjugates(boxes)) return false;
  sort_canonical(boxes);
  for (const auto& box : boxes)
    if (!p.eval(box).contains_zero()) return false;
  out = std::move(boxes);
  return true;
}

}  // namespace

std::vector<ComplexBall> isolate_roots(const IntPolynomial& p,
                                       mpfr_prec_t precision_bits) {
  if (precision_bits < 64) throw InputError("precision_bits must be at least 64");
  if (p.degree() < 1) throw MathError("constant polynomial has no roots");
  if (!is_squarefree(p)) throw MathError("polynomial has repeated roots");

  if (p.degree() == 1) {
    mpz_class num = -p.coeff(0);
    mpq_class root(num, p.coeff(1));
    root.canonicalize();
    size_t bits = mpz_sizeinbase(root.get_num().get_mpz_t(), 2) +
                  mpz_sizeinbase(root.get_den().get_mpz_t(), 2);
    mpfr_prec_t wp = precision_bits + 64 + static_cast<mpfr_prec_t>(bits);
    ComplexBall enc(RealBall::from_q(root, wp), RealBall(wp));
    return {enc};
  }

  for (mpfr_prec_t wp = precision_bits + 64; wp <= kPrecisionCap; wp *= 2) {
    for (int variant = 0; variant < 3; ++variant) {
      std::vector<ComplexBall> out;
      if (attempt_isolation(p, precision_bits, wp, variant, out)) return out;
    }
  }
  throw PrecisionError("root isolation failed to certify within the precision cap");
}

namespace {

// Next k-combination of {0..n-1} in lexicographic order.
bool next_combination(std::vector<int>& idx, int n) {
  int k = static_cast<int>(idx.size());
  for (int i = k - 1; i >= 0; --i) {
    if (idx[i] < n - k + i) {
      ++idx[i];
      for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
      return true;
    }
  }
  return false;
}

enum class SubsetVerdict { kExcluded, kUndecided, kFactor };

SubsetVerdict test_subset(const IntPolynomial& p,
                          const std::vector<ComplexBall>& roots,
                          const std::vector<int>& idx) {
  mpfr_prec_t wp = roots[idx[0]].prec();
  // expand prod_{i in idx} (x - root_i) over the enclosures
  std::vector<ComplexBall> f = {ComplexBall::exact_si(1, 0, wp)};
  for (int i : idx) {
    std::vector<ComplexBall> g(f.size() + 1, ComplexBall(wp));
    for (size_t k = 0; k < f.size(); ++k) {
      g[k + 1] = g[k + 1] + f[k];
      g[k] = g[k] - f[k] * roots[i];
    }
    f = std::move(g);
  }
  // A proper monic factor must have integer coefficients; pin each one.
  std::vector<mpz_class> pinned(f.size() - 1);
  for (size_t k = 0; k + 1 < f.size(); ++k) {
    const ComplexBall& b = f[k];
    if (!b.im.contains_zero()) return SubsetVerdict::kExcluded;
    mpz_class lo, hi;
    mpfr_get_z(lo.get_mpz_t(), b.re.lower().ptr(), MPFR_RNDU);   // ceil
    mpfr_get_z(hi.get_mpz_t(), b.re.upper().ptr(), MPFR_RNDD);   // floor
    if (lo > hi) return SubsetVerdict::kExcluded;
    if (lo < hi) return SubsetVerdict::kUndecided;
    pinned[k] = lo;
  }
  pinned.push_back(1);
  IntPolynomial candidate(std::move(pinned));
  if (exact_divide(p, candidate).has_value()) return SubsetVerdict::kFactor;
  // The enclosures allowed exactly one integer candidate and it fails, so no
  // factor is supported by this subset.
  return SubsetVerdict::kExcluded;
}

}  // namespace

bool is_irreducible(const IntPolynomial& p) {
  if (!p.is_monic())
    throw MathError("irreducibility check expects a monic polynomial");
  int r = p.degree();
  if (r < 1) throw MathError("constant polynomial");
  if (r == 1) return true;
  if (p.coeff(0) == 0) return false;  // divisible by x
  if (!is_squarefree(p)) return false;

  for (mpfr_prec_t prec = 192; prec <= kPrecisionCap; prec *= 2) {
    std::vector<ComplexBall> roots = isolate_roots(p, prec);
    bool undecided = false;
    for (int s = 1; s <= r / 2; ++s) {
      std::vector<int> idx(s);
      std::iota(idx.begin(), idx.end(), 0);
      do {
        switch (test_subset(p, roots, idx)) {
          case SubsetVerdict::kFactor:
            return false;
          case SubsetVerdict::kUndecided:
            undecided = true;
            break;
          case SubsetVerdict::kExcluded:
            break;
        }
      } while (next_combination(idx, r));
    }
    if (!undecided) return true;
  }
  throw PrecisionError("irreducibility undecided at the precision cap");
}

namespace {

int count_real(const std::vector<ComplexBall>& roots) {
  int c = 0;
  for (const auto& z : roots)
    if (z.is_certified_real()) ++c;
  return c;
}

}  // namespace

ConjugateSystem classify(const IntPolynomial& p,
                         const std::vector<ComplexBall>& roots) {
  if (!p.is_monic()) throw MathError("polynomial must be monic");
  int r = p.degree();
  if (r < 2)
    throw MathError("degree 1 systems are degenerate here (see zeta module)");
  if (static_cast<int>(roots.size()) != r)
    throw InputError("root count does not match the degree");
  if (!is_irreducible(p)) throw MathError("polynomial is reducible over Q");

  // Dominance order by certified modulus upper bounds.
  std::vector<RealBall> mods;
  mods.reserve(r);
  for (const auto& z : roots) mods.push_back(cb_abs(z));
  std::vector<int> order(r);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    int c = mpfr_cmp(mods[a].upper().ptr(), mods[b].upper().ptr());
    if (c != 0) return c > 0;
    c = mpfr_cmp(roots[a].re.mid.ptr(), roots[b].re.mid.ptr());
    if (c != 0) return c > 0;
    return mpfr_cmp(roots[a].im.mid.ptr(), roots[b].im.mid.ptr()) > 0;
  });

  ConjugateSystem sys{p, {}, 0};
  sys.roots.reserve(r);
  for (int i : order) sys.roots.push_back(roots[i]);
  sys.precision_bits = sys.roots[0].prec();

  const ComplexBall& dom = sys.roots[0];
  RealBall dom_mod = cb_abs(dom);
  if (!dom.is_certified_real()) {
    // The largest modulus belongs to a non-real root; decide whether a real
    // root could still tie it.
    Real best_real(kRadPrec);
    mpfr_set_zero(best_real.ptr(), 1);
    for (const auto& z : sys.roots)
      if (z.is_certified_real()) {
        Real u = cb_abs(z).upper();
        if (mpfr_cmp(u.ptr(), best_real.ptr()) > 0) best_real = u;
      }
    if (mpfr_cmp(best_real.ptr(), dom_mod.lower().ptr()) < 0)
      throw MathError("no real dominant root: the polynomial is not Perron");
    throw PrecisionError("dominance not certifiable at this precision");
  }
  {
    Real lo = dom.re.lower();
    if (mpfr_cmp_ui(lo.ptr(), 1) <= 0) {
      if (mpfr_cmp_ui(dom.re.upper().ptr(), 1) <= 0)
        throw MathError("dominant real root is not greater than 1: not Perron");
      throw PrecisionError("dominance over 1 not certifiable at this precision");
    }
  }
  for (int i = 1; i < r; ++i) {
    if (certified_lt(mods[order[i]], dom_mod)) continue;
    // Exact symmetry p(x) = p(-x) forces a tied pair of dominant roots.
    bool even_support = true;
    for (int k = 1; k <= r; k += 2)
      if (p.coeff(k) != 0) even_support = false;
    if (even_support)
      throw MathError("root set symmetric under negation: not Perron");
    throw PrecisionError("dominance not certifiable at this precision");
  }
  sys.is_perron = true;

  sys.is_unit = (abs(p.coeff(0)) == 1);
  sys.is_reciprocal = p.is_self_reciprocal();

  // Conjugate partners survive the reorder as bit-exact mirrors.
  sys.conj_partner.assign(r, -1);
  for (int i = 0; i < r; ++i) {
    if (sys.roots[i].is_certified_real()) {
      sys.conj_partner[i] = i;
      continue;
    }
    for (int j = 0; j < r; ++j) {
      if (j == i) continue;
      Real mirrored(sys.roots[j].im.mid.prec());
      mpfr_neg(mirrored.ptr(), sys.roots[j].im.mid.ptr(), MPFR_RNDN);
      if (mpfr_equal_p(sys.roots[i].re.mid.ptr(), sys.roots[j].re.mid.ptr()) &&
          mpfr_equal_p(sys.roots[i].im.mid.ptr(), mirrored.ptr())) {
        sys.conj_partner[i] = j;
        break;
      }
    }
    if (sys.conj_partner[i] < 0)
      throw PrecisionError("conjugate pairing lost during classification");
  }

  // Reciprocal pairing: the enclosure of 1/root_i meets exactly one root box,
  // which then certifiably holds the value 1/root_i.
  if (sys.is_reciprocal) {
    std::vector<int> sigma(r, -1);
    bool ok = true;
    for (int i = 0; i < r && ok; ++i) {
      ComplexBall inv_i = cb_inv(sys.roots[i]);
      int hit = -1;
      for (int j = 0; j < r; ++j) {
        if (!boxes_meet(inv_i, sys.roots[j])) continue;
        if (hit >= 0) {
          ok = false;
          break;
        }
        hit = j;
      }
      if (hit < 0) ok = false;
      if (ok) sigma[i] = hit;
    }
    for (int i = 0; i < r && ok; ++i)
      if (sigma[sigma[i]] != i) ok = false;
    if (ok) sys.reciprocal_pair = std::move(sigma);
  }

  bool tail_inside_disk = true;
  for (int i = 1; i < r; ++i) {
    Real u = cb_abs(sys.roots[i]).upper();
    if (mpfr_cmp_ui(u.ptr(), 1) >= 0) tail_inside_disk = false;
  }
  sys.is_pisot = tail_inside_disk;

  if (sys.is_reciprocal && !sys.reciprocal_pair.empty() &&
      count_real(sys.roots) == 2 && r >= 4) {
    // Salem: every non-real conjugate sits exactly on the unit circle, which
    // is certified by 1/root = conj(root), never by comparing |root| to 1.
    bool circle = true;
    for (int i = 0; i < r; ++i) {
      if (sys.roots[i].is_certified_real()) continue;
      if (sys.reciprocal_pair[i] != sys.conj_partner[i]) circle = false;
    }
    sys.is_salem = circle;
  }

  sys.log_alpha = rb_log(dom.re);
  sys.log_abs.reserve(r);
  sys.args.reserve(r);
  for (int i = 0; i < r; ++i) {
    sys.log_abs.push_back(rb_log(cb_abs(sys.roots[i])));
    if (sys.roots[i].is_certified_real()) {
      if (sys.roots[i].re.is_positive())
        sys.args.push_back(RealBall(sys.roots[i].prec()));
      else if (sys.roots[i].re.is_negative())
        sys.args.push_back(rb_pi(sys.roots[i].prec()));
      else
        throw PrecisionError("sign of a real root not certified");
    } else {
      sys.args.push_back(cb_arg(sys.roots[i]));
    }
  }

  // The dominant root is real and positive, so log|alpha_1| is log_alpha bit
  // for bit. The reciprocal pairing certifies root_sigma(i) = 1/root_i, so
  // paired logs are exact negatives, and sigma(i) = conj(i) forces the root
  // onto the unit circle, making its log-modulus exactly zero.
  sys.log_abs[0] = sys.log_alpha;
  if (!sys.reciprocal_pair.empty()) {
    for (int i = 0; i < r; ++i) {
      int j = sys.reciprocal_pair[i];
      if (j == i) continue;
      if (j == sys.conj_partner[i])
        sys.log_abs[i] = RealBall(sys.precision_bits);
      else if (i < j)
        sys.log_abs[j] = neg(sys.log_abs[i]);
    }
  }
  // Mirror arguments of conjugate pairs exactly.
  for (int i = 0; i < r; ++i) {
    int j = sys.conj_partner[i];
    if (j > i) sys.args[j] = neg(sys.args[i]);
  }
  return sys;
}

std::vector<ComplexBall> refine_roots(const ConjugateSystem& system,
                                      mpfr_prec_t precision_bits) {
  if (precision_bits <= system.precision_bits) return system.roots;
  int r = system.degree();
  for (mpfr_prec_t pb = precision_bits;; pb *= 2) {
    if (pb > kPrecisionCap)
      throw PrecisionError("root refinement reached the precision cap");
    std::vector<ComplexBall> fresh = isolate_roots(system.polynomial, pb);
    std::vector<ComplexBall> out;
    out.reserve(r);
    std::vector<bool> used(r, false);
    bool ok = true;
    for (int i = 0; i < r && ok; ++i) {
      int hit = -1;
      for (int j = 0; j < r; ++j) {
        if (!boxes_meet(system.roots[i], fresh[j])) continue;
        if (hit >= 0) {
          hit = -1;
          break;
        }
        hit = j;
      }
      // Both boxes around one true root must meet; a refined box can also
      // graze a neighbouring original box until the radii shrink past the
      // gap, in which case we retry finer.
      if (hit < 0 || used[hit]) {
        ok = false;
        break;
      }
      used[hit] = true;
      out.push_back(fresh[hit]);
    }
    if (ok) return out;
  }
}

}  // namespace rz
