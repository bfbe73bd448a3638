#include "rz/lll.hpp"

#include <cstddef>
#include <vector>

#include "rz/errors.hpp"

namespace rz {

namespace {

using QVec = std::vector<mpq_class>;

mpq_class dot_zq(const IntVec& a, const QVec& b) {
  mpq_class acc = 0;
  for (size_t i = 0; i < a.size(); ++i) acc += mpq_class(a[i]) * b[i];
  return acc;
}

mpq_class dot_qq(const QVec& a, const QVec& b) {
  mpq_class acc = 0;
  for (size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

// Nearest integer, ties away from the half toward +infinity.
mpz_class nearest(const mpq_class& q) {
  mpz_class num = q.get_num(), den = q.get_den();
  mpz_class r;
  mpz_class t = 2 * num + den;
  mpz_class d = 2 * den;
  mpz_fdiv_q(r.get_mpz_t(), t.get_mpz_t(), d.get_mpz_t());
  return r;
}

struct Gso {
  std::vector<QVec> bstar;
  std::vector<QVec> mu;   // mu[i][j] for j < i
  QVec norm2;             // |bstar_i|^2

  void recompute(const IntMat& b) {
    size_t n = b.size();
    bstar.assign(n, {});
    mu.assign(n, QVec(n, 0));
    norm2.assign(n, 0);
    for (size_t i = 0; i < n; ++i) {
      QVec v(b[i].size());
      for (size_t c = 0; c < b[i].size(); ++c) v[c] = mpq_class(b[i][c]);
      for (size_t j = 0; j < i; ++j) {
        mu[i][j] = dot_zq(b[i], bstar[j]) / norm2[j];
        for (size_t c = 0; c < v.size(); ++c) v[c] -= mu[i][j] * bstar[j][c];
      }
      bstar[i] = std::move(v);
      norm2[i] = dot_qq(bstar[i], bstar[i]);
      if (norm2[i] == 0)
        throw InputError("LLL requires linearly independent rows");
    }
  }
};

}  // namespace

void lll_reduce(IntMat& basis) {
  size_t n = basis.size();
  if (n < 2) return;
  const mpq_class delta(99, 100);

  Gso g;
  g.recompute(basis);

  auto size_reduce = [&](size_t k, size_t j) {
    mpz_class r = nearest(g.mu[k][j]);
    if (r == 0) return;
    for (size_t c = 0; c < basis[k].size(); ++c) basis[k][c] -= r * basis[j][c];
    for (size_t t = 0; t < j; ++t) g.mu[k][t] -= mpq_class(r) * g.mu[j][t];
    g.mu[k][j] -= r;
  };

  size_t k = 1;
  while (k < n) {
    for (size_t j = k; j-- > 0;) size_reduce(k, j);
    mpq_class lhs = g.norm2[k];
    mpq_class rhs = (delta - g.mu[k][k - 1] * g.mu[k][k - 1]) * g.norm2[k - 1];
    if (lhs >= rhs) {
      ++k;
    } else {
      basis[k].swap(basis[k - 1]);
      g.recompute(basis);
      k = k > 1 ? k - 1 : 1;
    }
  }
}

}  // namespace rz
