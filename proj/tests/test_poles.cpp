#include "rz/poles.hpp"

#include <vector>

#include "doctest.h"
#include "rz/errors.hpp"
#include "rz/relations.hpp"
#include "rz/roots.hpp"

using namespace rz;

namespace {

ConjugateSystem make_system(const char* text, mpfr_prec_t prec = 256) {
  IntPolynomial p = IntPolynomial::parse(text);
  return classify(p, isolate_roots(p, prec));
}

RelationLattice h0_part(const ConjugateSystem& sys) {
  return intersect_with_H0(find_relation_lattice(sys, sys.precision_bits, 128));
}

bool rad_below(const RealBall& b, long bits) {
  Real t(kRadPrec);
  mpfr_set_ui_2exp(t.ptr(), 1, -bits, MPFR_RNDD);
  return mpfr_cmp(b.rad.ptr(), t.ptr()) < 0;
}

constexpr const char* kFib = "x^2-x-1";
constexpr const char* kTrib = "x^3-x^2-x-1";
constexpr const char* kHexa = "x^6-x^5-x^4-x^3-x^2-x-1";
constexpr const char* kSalem = "x^4-x^3-x^2-x+1";
constexpr const char* kSchinzel = "x^6-2x^4-6x^3-2x^2+1";

long salem_formula(const MultiIndex& k) {
  return k[2] + std::min(k[0], k[1]) + 1;
}

template <typename F>
void all_indices(int width, long budget, F&& f) {
  MultiIndex k(width, 0);
  auto rec = [&](auto&& self, int pos, long remaining) -> void {
    if (pos == width) {
      f(k);
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

TEST_CASE("extended vectors") {
  CHECK(extended_vector({2, 3, 1}) ==
        IntVec({mpz_class(-6), mpz_class(2), mpz_class(3), mpz_class(1)}));
  CHECK(extended_vector({0}) == IntVec({mpz_class(0), mpz_class(0)}));
}

TEST_CASE("pole_location basics") {
  auto fib = make_system(kFib);

  auto origin = pole_location(fib, {0}, 0);
  CHECK(origin.re.mid.is_zero());
  CHECK(origin.re.is_exact());
  CHECK(origin.im.mid.is_zero());
  CHECK(origin.im.is_exact());

  // One branch up: purely imaginary 2 pi / log alpha.
  auto up = pole_location(fib, {0}, 1);
  CHECK(up.re.mid.is_zero());
  RealBall expected =
      rb_mul_si(rb_pi(fib.precision_bits), 2) / fib.log_alpha;
  RealBall diff = up.im - expected;
  CHECK(diff.contains_zero());
  CHECK(rad_below(up.im, 200));
  auto down = pole_location(fib, {0}, -1);
  CHECK(mpfr_cmp(down.im.mid.ptr(), up.im.mid.ptr()) < 0);

  CHECK_THROWS_AS(pole_location(fib, {0, 0}, 0), InputError);
  CHECK_THROWS_AS(pole_location(fib, {-1}, 0), InputError);
}

TEST_CASE("pole_location hits -2 exactly for the Salem reciprocal root") {
  auto salem = make_system(kSalem);
  // Roots in dominance order: beta, the unit-circle pair, then 1/beta;
  // the index (0,0,1) selects 1/beta.
  auto s = pole_location(salem, {0, 0, 1}, 0);
  CHECK(mpfr_cmp_si(s.re.mid.ptr(), -2) == 0);
  CHECK(s.im.mid.is_zero());
  CHECK(s.im.is_exact());
  CHECK(rad_below(s.re, 200));
}

TEST_CASE("kappa_bound") {
  auto salem = make_system(kSalem);
  mpfr_prec_t prec = salem.precision_bits;

  CHECK(kappa_bound(salem, RealBall::from_d(0.5, prec)) == 0);
  CHECK(kappa_bound(salem, RealBall::exact_si(0, prec)) == 0);
  CHECK(kappa_bound(salem, RealBall::exact_si(-2, prec)) == 2);
  CHECK(kappa_bound(salem, RealBall::exact_si(-3, prec)) == 3);

  auto fib = make_system(kFib);
  CHECK(kappa_bound(fib, RealBall::exact_si(-1, fib.precision_bits)) == 0);
  CHECK(kappa_bound(fib, RealBall::exact_si(-2, fib.precision_bits)) == 1);
}

TEST_CASE("fibre at the origin is trivial on every fixture") {
  for (auto text : {kFib, kTrib, kHexa, kSalem, kSchinzel}) {
    auto sys = make_system(text);
    auto L0 = h0_part(sys);
    MultiIndex zero(sys.degree() - 1, 0);
    CHECK(fibre_size(sys, L0, zero) == 1);
  }
}

TEST_CASE("Salem fibre sizes follow the closed form up to weight 10") {
  auto salem = make_system(kSalem);
  auto L0 = h0_part(salem);
  REQUIRE(L0.rank == 1);
  int checked = 0;
  all_indices(3, 10, [&](const MultiIndex& k) {
    CHECK(fibre_size(salem, L0, k) == salem_formula(k));
    ++checked;
  });
  CHECK(checked == 286);
}

TEST_CASE("Salem fibre example from the quartic analysis") {
  auto salem = make_system(kSalem);
  auto L0 = h0_part(salem);
  // Exponents (3,1) on the circle pair and 2 on 1/beta.
  CHECK(fibre_size(salem, L0, {3, 1, 2}) == 4);
  CHECK(fibre_brute_force(salem, {3, 1, 2}, 14) == 4);
}

TEST_CASE("hexabonacci fibres are singletons") {
  auto hexa = make_system(kHexa);
  auto L0 = h0_part(hexa);
  REQUIRE(L0.rank == 0);
  CHECK(fibre_size(hexa, L0, {1, 0, 0, 0, 0}) == 1);
  CHECK(fibre_size(hexa, L0, {2, 1, 0, 3, 1}) == 1);
  CHECK(fibre_brute_force(hexa, {1, 0, 0, 0, 0}, 3) == 1);
}

TEST_CASE("Schinzel indices collide") {
  auto sys = make_system(kSchinzel);
  auto L0 = h0_part(sys);
  REQUIRE(L0.rank == 3);
  CHECK(fibre_size(sys, L0, {0, 1, 1, 0, 0}) >= 2);
  long bound = kappa_bound(sys, pole_location(sys, {0, 1, 1, 0, 0}, 0).re);
  CHECK(fibre_brute_force(sys, {0, 1, 1, 0, 0}, bound) ==
        fibre_size(sys, L0, {0, 1, 1, 0, 0}));
}

TEST_CASE("fibre_size rejects a lattice with a non-relation") {
  auto sys = make_system(kSchinzel);
  RelationLattice bogus;
  bogus.ambient_rank = 6;
  bogus.basis = {IntVec{1, -1, 0, 0, 0, 0}};
  bogus.rank = 1;
  bogus.verified = {true};
  CHECK_THROWS_AS(fibre_size(sys, bogus, {0, 0, 0, 0, 0}), MathError);
}

TEST_CASE("fibre oracle agreement on small ranges") {
  struct Setup {
    const char* poly;
    long weight;
  };
  for (auto setup : {Setup{kFib, 8}, Setup{kTrib, 5}, Setup{kSalem, 4},
                     Setup{kSchinzel, 3}, Setup{kHexa, 2}}) {
    auto sys = make_system(setup.poly);
    auto L0 = h0_part(sys);
    all_indices(sys.degree() - 1, setup.weight, [&](const MultiIndex& k) {
      long bound = kappa_bound(sys, pole_location(sys, k, 0).re);
      CHECK(fibre_size(sys, L0, k) == fibre_brute_force(sys, k, bound));
    });
  }
}

TEST_CASE("fibre_brute_force insists on a sufficient range") {
  auto salem = make_system(kSalem);
  CHECK_THROWS_AS(fibre_brute_force(salem, {3, 1, 2}, 3), InputError);
}

TEST_CASE("enumerate_poles at range zero") {
  auto fib = make_system(kFib);
  auto recs = enumerate_poles(fib, h0_part(fib), 0);
  REQUIRE(recs.size() == 1);
  CHECK(recs[0].representative == MultiIndex{0});
  CHECK(recs[0].location.re.mid.is_zero());
  CHECK(recs[0].location.im.mid.is_zero());
  CHECK(recs[0].fibre_size_total == 1);
  CHECK(recs[0].fibre == std::vector<MultiIndex>{MultiIndex{0}});
}

TEST_CASE("hexabonacci enumeration is collision-free") {
  auto hexa = make_system(kHexa);
  auto recs = enumerate_poles(hexa, h0_part(hexa), 6);
  CHECK(recs.size() == 462);
  for (const auto& rec : recs) {
    CHECK(rec.fibre.size() == 1);
    CHECK(rec.fibre_size_total == 1);
  }
}

TEST_CASE("Schinzel enumeration has fewer records than indices") {
  auto sys = make_system(kSchinzel);
  auto recs = enumerate_poles(sys, h0_part(sys), 4);
  size_t members = 0;
  bool saw_collision = false;
  for (const auto& rec : recs) {
    members += rec.fibre.size();
    if (rec.fibre_size_total >= 2) saw_collision = true;
  }
  CHECK(members == 126);
  CHECK(recs.size() < 126);
  CHECK(saw_collision);
}

TEST_CASE("enumeration invariants on the Salem system") {
  auto salem = make_system(kSalem);
  auto L0 = h0_part(salem);
  auto recs = enumerate_poles(salem, L0, 4);

  size_t members = 0;
  for (const auto& rec : recs) members += rec.fibre.size();
  CHECK(members == 35);

  RealBall strip = rb_pi(salem.precision_bits) / salem.log_alpha;
  Real limit = strip.upper();
  mpfr_nextabove(limit.ptr());

  for (size_t i = 0; i < recs.size(); ++i) {
    const auto& rec = recs[i];
    REQUIRE(!rec.fibre.empty());
    CHECK(rec.representative == rec.fibre.front());
    for (size_t j = 0; j + 1 < rec.fibre.size(); ++j) {
      CHECK(rec.fibre[j] < rec.fibre[j + 1]);
      // grouping soundness: extended differences are certified relations
      IntVec d = extended_vector(rec.fibre[j + 1]);
      IntVec base = extended_vector(rec.fibre[j]);
      for (size_t t = 0; t < d.size(); ++t) d[t] -= base[t];
      CHECK(verify_relation(salem, d, 128).status ==
            VerifyStatus::kCertifiedTrue);
    }
    CHECK(rec.fibre_size_total >= static_cast<long>(rec.fibre.size()));
    CHECK(rec.fibre_size_total == salem_formula(rec.representative));

    // fundamental strip, allowing enclosure width at the boundary
    CHECK(mpfr_cmpabs(rec.location.im.mid.ptr(), limit.ptr()) <= 0);
    if (i > 0) {
      int c = mpfr_cmp(recs[i - 1].location.re.mid.ptr(),
                       rec.location.re.mid.ptr());
      CHECK(c <= 0);
      if (c == 0)
        CHECK(mpfr_cmp(recs[i - 1].location.im.mid.ptr(),
                       rec.location.im.mid.ptr()) <= 0);
    }
  }
}

TEST_CASE("range-limited fibres report the full size") {
  auto salem = make_system(kSalem);
  auto L0 = h0_part(salem);
  auto recs = enumerate_poles(salem, L0, 2);
  bool found = false;
  for (const auto& rec : recs) {
    if (rec.representative == MultiIndex{0, 0, 2}) {
      found = true;
      CHECK(rec.fibre.size() == 1);
      CHECK(rec.fibre_size_total == 3);
    }
  }
  CHECK(found);
}

TEST_CASE("vertical translates") {
  auto salem = make_system(kSalem);
  auto recs = enumerate_poles(salem, h0_part(salem), 1);
  REQUIRE(!recs.empty());
  const auto& rec = recs.front();

  auto only = vertical_translates(salem, rec, 0, 0);
  REQUIRE(only.size() == 1);
  CHECK(mpfr_cmp(only[0].im.mid.ptr(), rec.location.im.mid.ptr()) == 0);

  auto three = vertical_translates(salem, rec, -1, 1);
  REQUIRE(three.size() == 3);
  RealBall spacing = rb_mul_si(rb_pi(salem.precision_bits), 2) / salem.log_alpha;
  for (int t = 0; t + 1 < 3; ++t) {
    RealBall gap = three[t + 1].im - three[t].im;
    CHECK((gap - spacing).contains_zero());
    CHECK(mpfr_cmp(three[t + 1].re.mid.ptr(), three[t].re.mid.ptr()) == 0);
  }
  CHECK(vertical_translates(salem, rec, 1, 0).empty());
}

TEST_CASE("plot data mirrors the records") {
  auto hexa = make_system(kHexa);
  auto recs = enumerate_poles(hexa, h0_part(hexa), 2);
  auto rows = plot_data(recs);
  REQUIRE(rows.size() == recs.size());
  for (size_t i = 0; i < rows.size(); ++i) {
    CHECK(rows[i].fibre_size == recs[i].fibre_size_total);
    CHECK(rows[i].representative == recs[i].representative);
    CHECK(mpfr_cmp(rows[i].re.mid.ptr(), recs[i].location.re.mid.ptr()) == 0);
  }
  CHECK(plot_data({}).empty());
}
