#pragma once

#include <vector>

#include "rz/ball.hpp"
#include "rz/relations.hpp"
#include "rz/roots.hpp"

namespace rz {

// Exponents kappa_2, ..., kappa_r for the non-dominant conjugates, all
// nonnegative; |kappa| is the entry sum.
using MultiIndex = std::vector<long>;

// One pole class: every multi-index in `fibre` maps to the same point
// `location` inside the fundamental strip -pi/log(alpha) < Im <= pi/log(alpha).
// `fibre` lists the members found within the enumeration range;
// `fibre_size_total` is the full fibre cardinality, independent of the range.
struct PoleRecord {
  MultiIndex representative;
  ComplexBall location;
  std::vector<MultiIndex> fibre;
  long fibre_size_total = 0;
};

// Extended vector (-|kappa|, kappa_2, ..., kappa_r) in Z^r.
IntVec extended_vector(const MultiIndex& kappa);

// Enclosure of s_{kappa,n} = -|kappa| + sum_i kappa_i log|alpha_i| / log alpha
//                          + i (sum_i kappa_i arg alpha_i + 2 pi n) / log alpha.
ComplexBall pole_location(const ConjugateSystem& system, const MultiIndex& kappa,
                          long n);

// Largest possible |kappa| with Re(s_kappa) >= sigma0, outward-rounded from
// the enclosure of sigma0; 0 when sigma0 is certified positive. Uses the
// second-largest root modulus, so it bounds every member of any fibre whose
// real part meets sigma0.
long kappa_bound(const ConjugateSystem& system, const RealBall& sigma0);

// Number of eta in N_0^{r-1} with s_eta = s_kappa, decided by exact membership
// of extended differences in L0 = R_alpha cap H_0. Throws MathError when a
// basis vector of L0 fails the log-modulus functional test, which would make
// the enumeration region infinite.
long fibre_size(const ConjugateSystem& system, const RelationLattice& L0,
                const MultiIndex& kappa);

// Independent oracle: scans every eta with |eta| <= max_kappa and tests the
// extended difference with verify_relation directly, bypassing L0. Requires
// max_kappa >= kappa_bound at Re(s_kappa).
long fibre_brute_force(const ConjugateSystem& system, const MultiIndex& kappa,
                       long max_kappa, long confidence_bits = 128);

// All pole classes with |kappa| <= max_kappa: indices are grouped exactly by
// the coset of their extended vector modulo L0, never by comparing floating
// locations. Records are sorted by (Re, Im) of the location.
std::vector<PoleRecord> enumerate_poles(const ConjugateSystem& system,
                                        const RelationLattice& L0,
                                        long max_kappa);

// s_{kappa,n} for n in [n_min, n_max]: the record location shifted by
// 2 pi i n / log alpha.
std::vector<ComplexBall> vertical_translates(const ConjugateSystem& system,
                                             const PoleRecord& record,
                                             long n_min, long n_max);

struct PlotRow {
  RealBall re;
  RealBall im;
  long fibre_size = 0;
  MultiIndex representative;
};

// One row per record, in record order.
std::vector<PlotRow> plot_data(const std::vector<PoleRecord>& records);

}  // namespace rz
