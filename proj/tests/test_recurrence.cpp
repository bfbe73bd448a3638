#include "rz/recurrence.hpp"

#include <utility>
#include <vector>

#include "doctest.h"
#include "rz/errors.hpp"
#include "rz/roots.hpp"

using namespace rz;

namespace {

ConjugateSystem make_system(const char* text, mpfr_prec_t prec = 256) {
  IntPolynomial p = IntPolynomial::parse(text);
  return classify(p, isolate_roots(p, prec));
}

std::vector<mpz_class> zvec(std::initializer_list<long> vals) {
  std::vector<mpz_class> out;
  for (long v : vals) out.emplace_back(v);
  return out;
}

Real two_pow(long e) {
  Real t(kRadPrec);
  mpfr_set_ui_2exp(t.ptr(), 1, e, MPFR_RNDU);
  return t;
}

bool balls_overlap(const ComplexBall& a, const ComplexBall& b) {
  return cb_intersect(a, b).has_value();
}

}  // namespace

TEST_CASE("power sums match ball power sums of the roots") {
  auto sys = make_system("x^6-x^5-x^4-x^3-x^2-x-1");
  auto s = power_sum_initial_terms(sys.polynomial);
  REQUIRE(s.size() == 6);
  CHECK(s == zvec({6, 1, 3, 7, 15, 31}));
  // Independent check: the k-th power sum of the certified roots encloses s_k.
  for (int k = 0; k < 6; ++k) {
    ComplexBall acc(sys.precision_bits);
    for (const auto& z : sys.roots) acc = acc + cb_pow_si(z, k);
    CHECK(acc.re.contains_z(s[k]));
    CHECK(acc.im.contains_zero());
  }
}

TEST_CASE("Fibonacci Binet coefficients against the closed form") {
  auto sys = make_system("x^2-x-1");
  auto lam = binet_coefficients(sys, zvec({0, 1}));
  REQUIRE(lam.size() == 2);
  // lambda_1 = 1/sqrt(5), lambda_2 = -1/sqrt(5).
  RealBall inv_sqrt5 = rb_inv(rb_sqrt(RealBall::exact_si(5, 512)));
  CHECK(lam[0].is_certified_real());
  CHECK(lam[1].is_certified_real());
  CHECK((lam[0].re - inv_sqrt5).contains_zero());
  CHECK((lam[1].re + inv_sqrt5).contains_zero());
  CHECK(mpfr_cmp(lam[0].radius().ptr(), two_pow(-128).ptr()) <= 0);
}

TEST_CASE("power-sum initial terms give lambda identically one") {
  for (const char* text : {"x^6-x^5-x^4-x^3-x^2-x-1", "x^4-x^3-x^2-x+1",
                           "x^6-2x^4-6x^3-2x^2+1"}) {
    auto sys = make_system(text);
    auto lam = binet_coefficients(sys, power_sum_initial_terms(sys.polynomial));
    for (const auto& l : lam) CHECK(l.contains_real_si(1));
  }
}

TEST_CASE("conjugate-paired roots carry conjugate-paired lambdas bit for bit") {
  auto sys = make_system("x^3-x^2-x-1");
  auto lam = binet_coefficients(sys, zvec({0, 1, 1}));
  REQUIRE(!sys.roots[1].is_certified_real());
  CHECK(sys.conj_partner[1] == 2);
  CHECK(mpfr_equal_p(lam[1].re.mid.ptr(), lam[2].re.mid.ptr()));
  Real m(lam[1].im.mid.prec());
  mpfr_neg(m.ptr(), lam[1].im.mid.ptr(), MPFR_RNDN);
  CHECK(mpfr_equal_p(m.ptr(), lam[2].im.mid.ptr()));
}

TEST_CASE("negated Fibonacci is rejected") {
  auto sys = make_system("x^2-x-1");
  CHECK_THROWS_AS(binet_coefficients(sys, zvec({0, -1})), MathError);
  CHECK_THROWS_AS(binet_coefficients(sys, zvec({0, 0})), MathError);
  CHECK_THROWS_AS(binet_coefficients(sys, zvec({1})), InputError);
}

TEST_CASE("start index by certified tail plus exact scan") {
  auto fib = make_system("x^2-x-1");

  auto lam01 = binet_coefficients(fib, zvec({0, 1}));
  CHECK(start_index(fib, lam01, zvec({0, 1})) == 2);

  auto lam21 = binet_coefficients(fib, zvec({2, 1}));  // 2,1,3,4,7,11,...
  CHECK(start_index(fib, lam21, zvec({2, 1})) == 1);

  auto lam12 = binet_coefficients(fib, zvec({1, 2}));  // 1,2,3,5,8,...
  CHECK(start_index(fib, lam12, zvec({1, 2})) == 0);

  auto hexa = make_system("x^6-x^5-x^4-x^3-x^2-x-1");
  auto spec = make_recurrence(hexa);  // 6,1,3,7,15,31,63,...
  CHECK(spec.n0 == 1);

  auto salem = make_recurrence(make_system("x^4-x^3-x^2-x+1"));
  // Power sums run 4,1,3,7,7,16,...: the tie at a_3 = a_4 = 7 pushes n0 to 4.
  CHECK(terms(salem, 6) == zvec({4, 1, 3, 7, 7, 16}));
  CHECK(salem.n0 == 4);
}

TEST_CASE("exact terms from the recurrence") {
  auto fib = make_system("x^2-x-1");
  auto spec = make_recurrence(fib, zvec({0, 1}));
  CHECK(terms(spec, 8) == zvec({0, 1, 1, 2, 3, 5, 8, 13}));
  CHECK(terms(spec, 0).empty());
  CHECK(terms(spec, 1) == zvec({0}));
  CHECK_THROWS_AS(terms(spec, -1), InputError);

  auto hexa = make_recurrence(make_system("x^6-x^5-x^4-x^3-x^2-x-1"));
  CHECK(terms(hexa, 3) == zvec({6, 1, 3}));
}

TEST_CASE("Binet consistency over a 64-term window") {
  std::vector<std::pair<const char*, std::vector<mpz_class>>> cases;
  cases.emplace_back("x^2-x-1", zvec({0, 1}));
  cases.emplace_back("x^3-x^2-x-1", zvec({3, 1, 3}));
  for (const auto& setup : cases) {
    auto sys = make_system(setup.first);
    auto spec = make_recurrence(sys, setup.second);
    auto a = terms(spec, 64);
    for (long n = 0; n < 64; ++n) {
      ComplexBall acc(sys.precision_bits);
      for (int i = 0; i < sys.degree(); ++i)
        acc = acc + spec.lambdas[i] * cb_pow_si(sys.roots[i], n);
      CHECK(acc.re.contains_z(a[n]));
      CHECK(acc.im.contains_zero());
    }
  }
}

TEST_CASE("Binet coefficients are additive in the initial terms") {
  auto sys = make_system("x^2-x-1");
  auto lu = binet_coefficients(sys, zvec({0, 1}));
  auto lv = binet_coefficients(sys, zvec({2, 1}));
  auto lw = binet_coefficients(sys, zvec({2, 2}));
  for (int i = 0; i < 2; ++i) CHECK(balls_overlap(lw[i], lu[i] + lv[i]));
}

TEST_CASE("make_recurrence assembles a coherent spec") {
  auto sys = make_system("x^3-x^2-x-1");
  auto spec = make_recurrence(sys);
  CHECK(spec.initial_terms == zvec({3, 1, 3}));
  CHECK(spec.n0 == 1);
  CHECK(spec.lambdas.size() == 3);
  auto a = terms(spec, spec.n0 + 8);
  for (long n = spec.n0; n + 1 < spec.n0 + 8; ++n) {
    CHECK(a[n] >= 1);
    CHECK(a[n + 1] > a[n]);
  }
}
