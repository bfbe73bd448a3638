#include "rz/relations.hpp"

#include <set>
#include <string>
#include <vector>

#include "doctest.h"
#include "rz/errors.hpp"
#include "rz/intlinalg.hpp"
#include "rz/roots.hpp"

using namespace rz;

namespace {

ConjugateSystem make_system(const char* text, mpfr_prec_t prec = 256) {
  IntPolynomial p = IntPolynomial::parse(text);
  return classify(p, isolate_roots(p, prec));
}

IntVec zrow(std::initializer_list<long> vals) {
  IntVec out;
  for (long v : vals) out.emplace_back(v);
  return out;
}

constexpr const char* kFib = "x^2-x-1";
constexpr const char* kTrib = "x^3-x^2-x-1";
constexpr const char* kPenta = "x^5-x^4-x^3-x^2-x-1";
constexpr const char* kHexa = "x^6-x^5-x^4-x^3-x^2-x-1";
constexpr const char* kSalem = "x^4-x^3-x^2-x+1";
constexpr const char* kSchinzel = "x^6-2x^4-6x^3-2x^2+1";

}  // namespace

TEST_CASE("norm classes from the constant term") {
  CHECK(norm_class(IntPolynomial::parse(kFib)) == NormClass::kNormMinusOne);
  CHECK(norm_class(IntPolynomial::parse(kTrib)) == NormClass::kNormPlusOne);
  CHECK(norm_class(IntPolynomial::parse(kHexa)) == NormClass::kNormMinusOne);
  CHECK(norm_class(IntPolynomial::parse(kSalem)) == NormClass::kNormPlusOne);
  CHECK(norm_class(IntPolynomial::parse(kSchinzel)) == NormClass::kNormPlusOne);
  CHECK(norm_class(IntPolynomial::parse(kPenta)) == NormClass::kNormPlusOne);
  CHECK(norm_class(IntPolynomial::parse("x^2-5x+3")) == NormClass::kNotUnit);
  CHECK_THROWS_AS(norm_class(IntPolynomial::parse("2x^2-1")), MathError);
}

TEST_CASE("verify_relation exact certificates") {
  auto fib = make_system(kFib);

  auto zero = verify_relation(fib, zrow({0, 0}), 128);
  CHECK(zero.status == VerifyStatus::kCertifiedTrue);
  CHECK_FALSE(zero.heuristic);

  // Norm -1: odd powers of the norm cannot be 1, even ones are exactly 1.
  CHECK(verify_relation(fib, zrow({1, 1}), 128).status ==
        VerifyStatus::kCertifiedFalse);
  auto even = verify_relation(fib, zrow({2, 2}), 128);
  CHECK(even.status == VerifyStatus::kCertifiedTrue);
  CHECK_FALSE(even.heuristic);
  CHECK(verify_relation(fib, zrow({-2, -2}), 128).status ==
        VerifyStatus::kCertifiedTrue);
  CHECK(verify_relation(fib, zrow({3, 3}), 128).status ==
        VerifyStatus::kCertifiedFalse);

  auto trib = make_system(kTrib);
  auto e3 = verify_relation(trib, zrow({1, 1, 1}), 128);
  CHECK(e3.status == VerifyStatus::kCertifiedTrue);
  CHECK_FALSE(e3.heuristic);
  CHECK(verify_relation(trib, zrow({-1, -1, -1}), 128).status ==
        VerifyStatus::kCertifiedTrue);

  auto notunit = make_system("x^2-5x+3");
  CHECK(verify_relation(notunit, zrow({1, 1}), 128).status ==
        VerifyStatus::kCertifiedFalse);
  CHECK(verify_relation(notunit, zrow({2, 2}), 128).status ==
        VerifyStatus::kCertifiedFalse);

  CHECK_THROWS_AS(verify_relation(fib, zrow({1, 0, 0}), 128), InputError);
}

TEST_CASE("verify_relation pairing certificates on reciprocal systems") {
  auto salem = make_system(kSalem);
  REQUIRE(salem.is_reciprocal);
  REQUIRE_FALSE(salem.reciprocal_pair.empty());

  for (auto m : {zrow({1, 0, 0, 1}), zrow({0, 1, 1, 0}), zrow({1, -1, -1, 1}),
                 zrow({3, 2, 2, 3})}) {
    auto res = verify_relation(salem, m, 128);
    CHECK(res.status == VerifyStatus::kCertifiedTrue);
    CHECK_FALSE(res.heuristic);
  }

  CHECK(verify_relation(salem, zrow({1, 0, 0, 0}), 128).status ==
        VerifyStatus::kCertifiedFalse);
  CHECK(verify_relation(salem, zrow({1, 0, 0, -1}), 128).status ==
        VerifyStatus::kCertifiedFalse);
}

TEST_CASE("verify_relation interval path certifies and refutes") {
  auto schinzel = make_system(kSchinzel);

  // True relation that is neither all-equal nor pairing-symmetric.
  auto res = verify_relation(schinzel, zrow({1, 0, 0, 1, 1, 0}), 128);
  CHECK(res.status == VerifyStatus::kCertifiedTrue);
  CHECK(res.heuristic);

  CHECK(verify_relation(schinzel, zrow({1, 0, 0, 0, 0, 0}), 128).status ==
        VerifyStatus::kCertifiedFalse);
  CHECK(verify_relation(schinzel, zrow({2, 0, 0, 1, 1, 0}), 128).status ==
        VerifyStatus::kCertifiedFalse);

  auto fib = make_system(kFib);
  CHECK(verify_relation(fib, zrow({1, -1}), 128).status ==
        VerifyStatus::kCertifiedFalse);
}

TEST_CASE("find_relation_lattice on the six-root reciprocal example") {
  auto sys = make_system(kSchinzel);
  auto L = find_relation_lattice(sys, 256, 128);

  CHECK(L.ambient_rank == 6);
  CHECK(L.rank == 4);
  CHECK(L.confidence_bits == 128);
  REQUIRE(L.verified.size() == 4);
  for (bool v : L.verified) CHECK(v);

  IntMat known = {zrow({1, 0, 0, 0, 0, 1}), zrow({0, 1, 0, 0, 1, 0}),
                  zrow({0, 0, 1, 1, 0, 0}), zrow({1, 0, 0, 1, 1, 0})};
  CHECK(L.basis == hnf(known));
}

TEST_CASE("find_relation_lattice on the Salem example") {
  auto sys = make_system(kSalem);
  auto L = find_relation_lattice(sys, 256, 128);

  CHECK(L.ambient_rank == 4);
  CHECK(L.rank == 2);
  IntMat known = {zrow({1, 0, 0, 1}), zrow({0, 1, 1, 0})};
  CHECK(L.basis == hnf(known));
}

TEST_CASE("find_relation_lattice norm lattices on the k-bonacci family") {
  auto fib = find_relation_lattice(make_system(kFib), 256, 128);
  CHECK(fib.rank == 1);
  CHECK(fib.basis == IntMat{zrow({2, 2})});

  auto trib = find_relation_lattice(make_system(kTrib), 256, 128);
  CHECK(trib.rank == 1);
  CHECK(trib.basis == IntMat{zrow({1, 1, 1})});

  auto penta = find_relation_lattice(make_system(kPenta), 256, 128);
  CHECK(penta.rank == 1);
  CHECK(penta.basis == IntMat{zrow({1, 1, 1, 1, 1})});

  auto hexa = find_relation_lattice(make_system(kHexa), 256, 128);
  CHECK(hexa.rank == 1);
  CHECK(hexa.basis == IntMat{zrow({2, 2, 2, 2, 2, 2})});
}

TEST_CASE("find_relation_lattice on a non-unit system") {
  auto L = find_relation_lattice(make_system("x^2-5x+3"), 256, 128);
  CHECK(L.rank == 0);
  CHECK(L.basis.empty());
  CHECK(is_trivial(L));
}

TEST_CASE("find_relation_lattice validates the precision contract") {
  auto fib = make_system(kFib);
  CHECK_THROWS_AS(find_relation_lattice(fib, 100, 128), InputError);
}

TEST_CASE("detected lattice is identical across precisions") {
  auto lo = find_relation_lattice(make_system(kSchinzel, 256), 256, 128);
  auto hi = find_relation_lattice(make_system(kSchinzel, 512), 512, 128);
  CHECK(lo.basis == hi.basis);

  auto lo_salem = find_relation_lattice(make_system(kSalem, 256), 256, 128);
  auto hi_salem = find_relation_lattice(make_system(kSalem, 512), 512, 128);
  CHECK(lo_salem.basis == hi_salem.basis);
}

TEST_CASE("intersect_with_H0") {
  auto salem = find_relation_lattice(make_system(kSalem), 256, 128);
  auto s0 = intersect_with_H0(salem);
  CHECK(s0.rank == 1);
  CHECK(s0.basis == IntMat{zrow({1, -1, -1, 1})});
  REQUIRE(s0.verified.size() == 1);
  CHECK(s0.verified[0]);

  auto hexa = find_relation_lattice(make_system(kHexa), 256, 128);
  auto h0 = intersect_with_H0(hexa);
  CHECK(h0.rank == 0);

  auto schinzel = find_relation_lattice(make_system(kSchinzel), 256, 128);
  auto c0 = intersect_with_H0(schinzel);
  CHECK(c0.rank == 3);
  for (const auto& row : c0.basis) {
    mpz_class sum = 0;
    for (const auto& v : row) sum += v;
    CHECK(sum == 0);
    CHECK(lattice_contains(schinzel.basis, row));
  }
}

TEST_CASE("is_trivial recognizes multiples of the all-ones vector") {
  CHECK(is_trivial(find_relation_lattice(make_system(kFib), 256, 128)));
  CHECK(is_trivial(find_relation_lattice(make_system(kTrib), 256, 128)));
  CHECK(is_trivial(find_relation_lattice(make_system(kHexa), 256, 128)));
  CHECK_FALSE(is_trivial(find_relation_lattice(make_system(kSalem), 256, 128)));
  CHECK_FALSE(
      is_trivial(find_relation_lattice(make_system(kSchinzel), 256, 128)));
}

TEST_CASE("h0_lattice shape") {
  auto h0 = h0_lattice(4);
  CHECK(h0.ambient_rank == 4);
  CHECK(h0.rank == 3);
  IntMat expect = {zrow({1, 0, 0, -1}), zrow({0, 1, 0, -1}),
                   zrow({0, 0, 1, -1})};
  CHECK(h0.basis == expect);
  for (bool v : h0.verified) CHECK_FALSE(v);
  CHECK(h0_lattice(1).rank == 0);
  CHECK_THROWS_AS(h0_lattice(0), InputError);
}

TEST_CASE("decide_injectivity") {
  auto hexa = decide_injectivity(make_system(kHexa), 256, 128);
  CHECK(hexa.injective);
  CHECK_FALSE(hexa.witness.has_value());

  auto salem = decide_injectivity(make_system(kSalem), 256, 128);
  CHECK_FALSE(salem.injective);
  REQUIRE(salem.witness.has_value());
  CHECK(*salem.witness == zrow({1, -1, -1, 1}));
  CHECK(salem.confidence_bits == 128);

  auto schinzel = decide_injectivity(make_system(kSchinzel), 256, 128);
  CHECK_FALSE(schinzel.injective);
  REQUIRE(schinzel.witness.has_value());
  mpz_class wnorm = 0, sum = 0;
  for (const auto& v : *schinzel.witness) {
    wnorm += v * v;
    sum += v;
  }
  CHECK(sum == 0);
  CHECK(lattice_contains(schinzel.h0_intersection.basis, *schinzel.witness));
  for (const auto& row : schinzel.h0_intersection.basis) {
    mpz_class n2 = 0;
    for (const auto& v : row) n2 += v * v;
    CHECK(wnorm <= n2);
  }
}

TEST_CASE("sufficient_conditions") {
  auto hexa = sufficient_conditions(make_system(kHexa), {});
  bool saw_pisot = false;
  for (const auto& c : hexa.conditions) {
    if (c.name == "pisot") {
      saw_pisot = true;
      CHECK(c.satisfied);
      CHECK_FALSE(c.user_asserted);
    }
    if (c.name == "prime_degree") CHECK_FALSE(c.satisfied);
  }
  CHECK(saw_pisot);
  CHECK(hexa.module_trivial);

  auto penta = sufficient_conditions(make_system(kPenta), {});
  for (const auto& c : penta.conditions)
    if (c.name == "prime_degree") CHECK(c.satisfied);
  CHECK(penta.module_trivial);

  auto schinzel = sufficient_conditions(make_system(kSchinzel), {});
  CHECK_FALSE(schinzel.module_trivial);
  for (const auto& c : schinzel.conditions) CHECK_FALSE(c.satisfied);

  auto asserted = sufficient_conditions(make_system(kSchinzel),
                                        {"galois_full_symmetric"});
  bool saw_flag = false;
  for (const auto& c : asserted.conditions) {
    if (c.name == "galois_full_symmetric") {
      saw_flag = true;
      CHECK(c.satisfied);
      CHECK(c.user_asserted);
    }
  }
  CHECK(saw_flag);
  CHECK(asserted.module_trivial);

  CHECK_THROWS_AS(sufficient_conditions(make_system(kFib), {"galois_cyclic"}),
                  InputError);
}

TEST_CASE("rank arithmetic on lattice pairs") {
  auto schinzel = find_relation_lattice(make_system(kSchinzel), 256, 128);
  auto rc = rank_arithmetic_check(schinzel, h0_lattice(6));
  CHECK(rc.lhs == 9);
  CHECK(rc.rhs == 9);

  auto salem = find_relation_lattice(make_system(kSalem), 256, 128);
  auto self = rank_arithmetic_check(salem, salem);
  CHECK(self.lhs == self.rhs);
  CHECK(self.lhs == 4);

  auto trib = find_relation_lattice(make_system(kTrib), 256, 128);
  auto split = rank_arithmetic_check(trib, h0_lattice(3));
  CHECK(split.lhs == 3);
  CHECK(split.rhs == 3);

  CHECK_THROWS_AS(rank_arithmetic_check(salem, h0_lattice(6)), InputError);
}

TEST_CASE("norm class agrees with the detected intersection with <e>") {
  struct Case {
    const char* poly;
    long multiple;  // 0 when the intersection should be empty
  };
  for (auto c : {Case{kFib, 2}, Case{kTrib, 1}, Case{kHexa, 2},
                 Case{kSalem, 1}, Case{kSchinzel, 1}}) {
    auto sys = make_system(c.poly);
    auto L = find_relation_lattice(sys, 256, 128);
    int r = sys.degree();
    IntMat e_line = {IntVec(r, 1)};
    auto inter = lattice_intersect(L.basis, e_line);
    REQUIRE(inter.size() == 1);
    CHECK(inter[0] == IntVec(r, c.multiple));
  }
}
