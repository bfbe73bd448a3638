#include "rz/intlinalg.hpp"

#include "doctest.h"

using namespace rz;

namespace {

IntVec vec(std::initializer_list<long> xs) { return IntVec(xs.begin(), xs.end()); }

}  // namespace

TEST_CASE("hermite normal form basics") {
  IntMat m = {vec({2, 4}), vec({6, 8})};
  IntMat h = hnf(m);
  REQUIRE(h.size() == 2);
  CHECK(h[0] == vec({2, 0}));
  CHECK(h[1] == vec({0, 4}));

  // rank deficiency drops rows
  IntMat d = hnf({vec({1, 2, 3}), vec({2, 4, 6}), vec({0, 0, 5})});
  REQUIRE(d.size() == 2);
  CHECK(d[0] == vec({1, 2, 3}));
  CHECK(d[1] == vec({0, 0, 5}));

  // canonical: same lattice, same basis
  IntMat p = hnf({vec({3, 1}), vec({1, 2})});
  IntMat q = hnf({vec({4, 3}), vec({1, 2}), vec({3, 1})});
  CHECK(p == q);

  // negative pivots are normalized
  IntMat n = hnf({vec({-2, 1})});
  REQUIRE(n.size() == 1);
  CHECK(n[0] == vec({2, -1}));

  CHECK(hnf({vec({0, 0})}).empty());
}

TEST_CASE("left kernel") {
  // x*2 + y*3 = 0 along a single column
  IntMat k = left_kernel({vec({2}), vec({3})});
  REQUIRE(k.size() == 1);
  CHECK(k[0] == vec({3, -2}));

  // full-rank square matrix has trivial kernel
  CHECK(left_kernel({vec({1, 0}), vec({0, 1})}).empty());

  // kernel really annihilates
  IntMat m = {vec({1, 2, 1}), vec({2, 4, 2}), vec({0, 1, 3})};
  IntMat ker = left_kernel(m);
  REQUIRE(ker.size() == 1);
  for (size_t j = 0; j < 3; ++j) {
    mpz_class s = 0;
    for (size_t i = 0; i < 3; ++i) s += ker[0][i] * m[i][j];
    CHECK(s == 0);
  }
}

TEST_CASE("lattice sum and intersection") {
  IntMat a = {vec({2, 0}), vec({0, 1})};
  IntMat b = {vec({3, 0}), vec({0, 1})};
  IntMat s = lattice_sum(a, b);
  REQUIRE(s.size() == 2);
  CHECK(s[0] == vec({1, 0}));
  CHECK(s[1] == vec({0, 1}));
  IntMat meet = lattice_intersect(a, b);
  REQUIRE(meet.size() == 2);
  CHECK(meet[0] == vec({6, 0}));
  CHECK(meet[1] == vec({0, 1}));

  // intersection with the sum-zero hyperplane of Z^4
  IntMat rel = {vec({1, 0, 0, 1}), vec({0, 1, 1, 0})};
  IntMat h0 = {vec({1, -1, 0, 0}), vec({0, 1, -1, 0}), vec({0, 0, 1, -1})};
  IntMat cut = lattice_intersect(rel, h0);
  REQUIRE(cut.size() == 1);
  CHECK((cut[0] == vec({1, -1, -1, 1}) || cut[0] == vec({-1, 1, 1, -1})));

  CHECK(lattice_intersect({}, a).empty());
}

TEST_CASE("membership and coset reduction") {
  IntMat basis = hnf({vec({2, 0}), vec({0, 3})});
  CHECK(lattice_contains(basis, vec({4, -3})));
  CHECK(lattice_contains(basis, vec({0, 0})));
  CHECK(!lattice_contains(basis, vec({1, 0})));
  CHECK(!lattice_contains(basis, vec({2, 2})));

  IntVec r1 = coset_reduce(basis, vec({5, 7}));
  CHECK(r1 == vec({1, 1}));
  // same coset, same representative
  CHECK(coset_reduce(basis, vec({7, -2})) == r1);
  // different coset, different representative
  CHECK(coset_reduce(basis, vec({6, 7})) != r1);

  // reduction modulo a non-diagonal lattice stays canonical
  IntMat skew = hnf({vec({2, 1}), vec({0, 5})});
  IntVec w1 = coset_reduce(skew, vec({3, 3}));
  IntVec w2 = coset_reduce(skew, vec({5, 4 + 5 * 9}));
  CHECK(w1 == w2);
}

TEST_CASE("intersection is contained in both lattices") {
  IntMat a = hnf({vec({2, 1, 0}), vec({0, 3, 1})});
  IntMat b = hnf({vec({1, 1, 1}), vec({0, 0, 4})});
  IntMat meet = lattice_intersect(a, b);
  for (const auto& v : meet) {
    CHECK(lattice_contains(a, v));
    CHECK(lattice_contains(b, v));
  }
  IntMat s = lattice_sum(a, b);
  for (const auto& v : a) CHECK(lattice_contains(s, v));
  for (const auto& v : b) CHECK(lattice_contains(s, v));
}
