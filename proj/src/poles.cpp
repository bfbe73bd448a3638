#include "rz/poles.hpp"

#include <algorithm>
#include <map>
#include <utility>

#include "rz/errors.hpp"

namespace rz {

namespace {

long total_weight(const MultiIndex& kappa) {
  long t = 0;
  for (long v : kappa) t += v;
  return t;
}

void validate_index(const ConjugateSystem& system, const MultiIndex& kappa) {
  if (static_cast<int>(kappa.size()) != system.degree() - 1)
    throw InputError("multi-index length must be the degree minus one");
  for (long v : kappa)
    if (v < 0) throw InputError("multi-index entries must be nonnegative");
}

// sum_i kappa_i log|alpha_i| over the non-dominant conjugates
RealBall log_modulus_sum(const ConjugateSystem& system, const MultiIndex& kappa) {
  RealBall t(system.precision_bits);
  for (size_t j = 0; j < kappa.size(); ++j)
    if (kappa[j] != 0) t = t + rb_mul_si(system.log_abs[j + 1], kappa[j]);
  return t;
}

RealBall argument_sum(const ConjugateSystem& system, const MultiIndex& kappa) {
  RealBall t(system.precision_bits);
  for (size_t j = 0; j < kappa.size(); ++j)
    if (kappa[j] != 0) t = t + rb_mul_si(system.args[j + 1], kappa[j]);
  return t;
}

RealBall real_part(const ConjugateSystem& system, const MultiIndex& kappa) {
  RealBall shift = log_modulus_sum(system, kappa) / system.log_alpha;
  return RealBall::exact_si(-total_weight(kappa), system.precision_bits) + shift;
}

// Index of the 2 pi branch that moves the angle into (-pi, pi]. Decided from
// a fixed 64-bit rounding of the midpoint so the choice cannot flip when the
// working precision changes. Angles that are exact odd multiples of pi (real
// negative products) land within rounding noise of an integer ratio; they are
// snapped so the boundary always reduces to the included upper edge +pi.
long branch_index(const RealBall& angle) {
  Real t(kRadPrec), pi64(kRadPrec), snapped(kRadPrec);
  mpfr_set(t.ptr(), angle.mid.ptr(), MPFR_RNDN);
  mpfr_const_pi(pi64.ptr(), MPFR_RNDN);
  mpfr_sub(t.ptr(), t.ptr(), pi64.ptr(), MPFR_RNDN);
  mpfr_mul_2ui(pi64.ptr(), pi64.ptr(), 1, MPFR_RNDN);
  mpfr_div(t.ptr(), t.ptr(), pi64.ptr(), MPFR_RNDN);
  mpfr_round(snapped.ptr(), t.ptr());
  Real gap(kRadPrec);
  mpfr_sub(gap.ptr(), t.ptr(), snapped.ptr(), MPFR_RNDN);
  mpfr_abs(gap.ptr(), gap.ptr(), MPFR_RNDN);
  if (mpfr_cmp_ui_2exp(gap.ptr(), 1, -20) < 0)
    return mpfr_get_si(snapped.ptr(), MPFR_RNDN);
  mpfr_ceil(t.ptr(), t.ptr());
  return mpfr_get_si(t.ptr(), MPFR_RNDN);
}

ComplexBall strip_location(const ConjugateSystem& system,
                           const MultiIndex& kappa) {
  return pole_location(system, kappa, -branch_index(argument_sum(system, kappa)));
}

// Visits every multi-index of the given width with entry sum at most budget,
// in ascending lexicographic order.
template <typename F>
void for_each_index(int width, long budget, F&& visit) {
  MultiIndex k(width, 0);
  auto rec = [&](auto&& self, int pos, long remaining) -> void {
    if (pos == width) {
      visit(k);
      return;
    }
    for (long v = 0; v <= remaining; ++v) {
      k[pos] = v;
      self(self, pos + 1, remaining - v);
    }
    k[pos] = 0;
  };
  rec(rec, 0, budget);
}

}  // namespace

IntVec extended_vector(const MultiIndex& kappa) {
  IntVec out;
  out.reserve(kappa.size() + 1);
  out.emplace_back(-total_weight(kappa));
  for (long v : kappa) out.emplace_back(v);
  return out;
}

ComplexBall pole_location(const ConjugateSystem& system, const MultiIndex& kappa,
                          long n) {
  validate_index(system, kappa);
  RealBall re = real_part(system, kappa);
  RealBall angle = argument_sum(system, kappa);
  if (n != 0)
    angle = angle + rb_mul_si(rb_mul_si(rb_pi(system.precision_bits), 2), n);
  return ComplexBall(std::move(re), angle / system.log_alpha);
}

long kappa_bound(const ConjugateSystem& system, const RealBall& sigma0) {
  if (!system.is_perron)
    throw MathError("kappa bound requires a certified Perron system");
  if (sigma0.is_positive()) return 0;
  RealBall gap = system.log_alpha - system.log_abs[1];
  if (!gap.is_positive())
    throw PrecisionError("modulus gap below the dominant root not certified");
  long b = floor_upper(neg(sigma0) * system.log_alpha / gap);
  return b < 0 ? 0 : b;
}

long fibre_size(const ConjugateSystem& system, const RelationLattice& L0,
                const MultiIndex& kappa) {
  validate_index(system, kappa);
  int r = system.degree();
  if (L0.ambient_rank != r)
    throw InputError("lattice ambient rank does not match the system degree");
  if (L0.basis.empty()) return 1;

  // A lattice vector that moved the log-modulus or the coordinate sum would
  // make { kappa + [m] >= 0 } unbounded, contradicting fibre finiteness.
  for (const auto& row : L0.basis) {
    mpz_class coord_sum = 0;
    RealBall w(system.precision_bits);
    for (int i = 0; i < r; ++i) {
      coord_sum += row[i];
      if (row[i] != 0) w = w + rb_mul_z(system.log_abs[i], row[i]);
    }
    if (coord_sum != 0 || !w.contains_zero())
      throw MathError(
          "fibre enumeration region unexpectedly infinite: the lattice "
          "contains a non-relation");
  }

  long bound = kappa_bound(system, real_part(system, kappa));
  IntVec base = extended_vector(kappa);
  long count = 0;
  for_each_index(r - 1, bound, [&](const MultiIndex& eta) {
    IntVec d = extended_vector(eta);
    for (size_t i = 0; i < d.size(); ++i) d[i] -= base[i];
    if (lattice_contains(L0.basis, d)) ++count;
  });
  return count;
}

long fibre_brute_force(const ConjugateSystem& system, const MultiIndex& kappa,
                       long max_kappa, long confidence_bits) {
  validate_index(system, kappa);
  long bound = kappa_bound(system, real_part(system, kappa));
  if (max_kappa < bound)
    throw InputError("max_kappa is below the certified fibre bound");
  IntVec base = extended_vector(kappa);
  long count = 0;
  for_each_index(system.degree() - 1, max_kappa, [&](const MultiIndex& eta) {
    IntVec d = extended_vector(eta);
    for (size_t i = 0; i < d.size(); ++i) d[i] -= base[i];
    if (verify_relation(system, d, confidence_bits).status ==
        VerifyStatus::kCertifiedTrue)
      ++count;
  });
  return count;
}

std::vector<PoleRecord> enumerate_poles(const ConjugateSystem& system,
                                        const RelationLattice& L0,
                                        long max_kappa) {
  if (max_kappa < 0) throw InputError("max_kappa must be nonnegative");
  if (L0.ambient_rank != system.degree())
    throw InputError("lattice ambient rank does not match the system degree");

  // Group by the exact coset of the extended vector; lexicographic visit
  // order makes the first member of each class its smallest.
  std::map<IntVec, std::vector<MultiIndex>> classes;
  for_each_index(system.degree() - 1, max_kappa, [&](const MultiIndex& kappa) {
    classes[coset_reduce(L0.basis, extended_vector(kappa))].push_back(kappa);
  });

  std::vector<PoleRecord> records;
  records.reserve(classes.size());
  for (auto& entry : classes) {
    PoleRecord rec;
    rec.representative = entry.second.front();
    rec.fibre = std::move(entry.second);
    rec.location = strip_location(system, rec.representative);
    rec.fibre_size_total = fibre_size(system, L0, rec.representative);
    records.push_back(std::move(rec));
  }
  // Distinct classes can share a coordinate exactly (reciprocal and derived
  // modulus relations both land on the same integer), and midpoints of such
  // coincident values fall on either side depending on the working precision.
  // Certified comparisons are precision-stable; exact ties fall through to
  // the representative.
  std::sort(records.begin(), records.end(),
            [](const PoleRecord& a, const PoleRecord& b) {
              if (certified_lt(a.location.re, b.location.re)) return true;
              if (certified_lt(b.location.re, a.location.re)) return false;
              if (certified_lt(a.location.im, b.location.im)) return true;
              if (certified_lt(b.location.im, a.location.im)) return false;
              return a.representative < b.representative;
            });
  return records;
}

std::vector<ComplexBall> vertical_translates(const ConjugateSystem& system,
                                             const PoleRecord& record,
                                             long n_min, long n_max) {
  std::vector<ComplexBall> out;
  RealBall two_pi = rb_mul_si(rb_pi(system.precision_bits), 2);
  for (long n = n_min; n <= n_max; ++n) {
    if (n == 0) {
      out.push_back(record.location);
      continue;
    }
    RealBall im = record.location.im + rb_mul_si(two_pi, n) / system.log_alpha;
    out.push_back(ComplexBall(record.location.re, std::move(im)));
  }
  return out;
}

std::vector<PlotRow> plot_data(const std::vector<PoleRecord>& records) {
  std::vector<PlotRow> rows;
  rows.reserve(records.size());
  for (const auto& rec : records)
    rows.push_back(PlotRow{rec.location.re, rec.location.im,
                           rec.fibre_size_total, rec.representative});
  return rows;
}

}  // namespace rz
