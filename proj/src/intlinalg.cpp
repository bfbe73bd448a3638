#include "rz/intlinalg.hpp"

#include <stdexcept>
#include <utility>

namespace rz {

namespace {

void check_rect(const IntMat& m) {
  for (const auto& row : m)
    if (row.size() != m.front().size())
      throw std::logic_error("ragged integer matrix");
}

void sub_scaled(IntVec& a, const mpz_class& q, const IntVec& b) {
  if (q == 0) return;
  for (size_t i = 0; i < a.size(); ++i) a[i] -= q * b[i];
}

}  // namespace

IntMat hnf(IntMat m) {
  if (m.empty()) return m;
  check_rect(m);
  const size_t rows = m.size(), cols = m.front().size();
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    // gcd elimination below position r in column c
    while (true) {
      size_t best = rows;
      for (size_t k = r; k < rows; ++k) {
        if (m[k][c] == 0) continue;
        if (best == rows || cmp(abs(m[k][c]), abs(m[best][c])) < 0) best = k;
      }
      if (best == rows) break;  // column c is zero at and below r
      std::swap(m[r], m[best]);
      bool clean = true;
      for (size_t k = r + 1; k < rows; ++k) {
        if (m[k][c] == 0) continue;
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), m[k][c].get_mpz_t(), m[r][c].get_mpz_t());
        sub_scaled(m[k], q, m[r]);
        if (m[k][c] != 0) clean = false;
      }
      if (clean) break;
    }
    if (m[r][c] == 0) continue;
    if (m[r][c] < 0)
      for (auto& x : m[r]) x = -x;
    for (size_t k = 0; k < r; ++k) {
      mpz_class q;
      mpz_fdiv_q(q.get_mpz_t(), m[k][c].get_mpz_t(), m[r][c].get_mpz_t());
      sub_scaled(m[k], q, m[r]);
    }
    ++r;
  }
  m.resize(r);
  return m;
}

IntMat left_kernel(const IntMat& m) {
  if (m.empty()) return {};
  check_rect(m);
  const size_t rows = m.size(), cols = m.front().size();
  // HNF of [m | I]: rows whose m-part vanished carry a kernel basis in the
  // identity part, already in HNF because their pivots lie in the tail block.
  IntMat aug(rows, IntVec(cols + rows, 0));
  for (size_t i = 0; i < rows; ++i) {
    for (size_t j = 0; j < cols; ++j) aug[i][j] = m[i][j];
    aug[i][cols + i] = 1;
  }
  aug = hnf(std::move(aug));
  IntMat kernel;
  for (const auto& row : aug) {
    bool head_zero = true;
    for (size_t j = 0; j < cols; ++j)
      if (row[j] != 0) head_zero = false;
    if (head_zero) kernel.emplace_back(row.begin() + cols, row.end());
  }
  return kernel;
}

IntMat lattice_sum(const IntMat& a, const IntMat& b) {
  IntMat stacked = a;
  stacked.insert(stacked.end(), b.begin(), b.end());
  return hnf(std::move(stacked));
}

IntMat lattice_intersect(const IntMat& a, const IntMat& b) {
  if (a.empty() || b.empty()) return {};
  check_rect(a);
  check_rect(b);
  if (a.front().size() != b.front().size())
    throw std::logic_error("lattice dimension mismatch");
  // Kernel vectors (x | y) of the stacked matrix [a; -b] satisfy xa = yb,
  // so xa runs over the intersection.
  IntMat stacked = a;
  for (const auto& row : b) {
    IntVec nrow(row.size());
    for (size_t j = 0; j < row.size(); ++j) nrow[j] = -row[j];
    stacked.push_back(std::move(nrow));
  }
  IntMat ker = left_kernel(stacked);
  IntMat meet;
  for (const auto& xy : ker) {
    IntVec v(a.front().size(), 0);
    for (size_t i = 0; i < a.size(); ++i)
      for (size_t j = 0; j < v.size(); ++j) v[j] += xy[i] * a[i][j];
    meet.push_back(std::move(v));
  }
  return hnf(std::move(meet));
}

namespace {

// Index of the pivot column of an HNF row.
size_t pivot_col(const IntVec& row) {
  for (size_t j = 0; j < row.size(); ++j)
    if (row[j] != 0) return j;
  throw std::logic_error("zero row in HNF basis");
}

}  // namespace

bool lattice_contains(const IntMat& hnf_basis, const IntVec& v) {
  IntVec w = v;
  for (const auto& row : hnf_basis) {
    size_t j = pivot_col(row);
    if (w[j] == 0) continue;
    mpz_class q, rem;
    mpz_tdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), w[j].get_mpz_t(),
                row[j].get_mpz_t());
    if (rem != 0) return false;
    sub_scaled(w, q, row);
  }
  for (const auto& x : w)
    if (x != 0) return false;
  return true;
}

IntVec coset_reduce(const IntMat& hnf_basis, IntVec v) {
  for (const auto& row : hnf_basis) {
    size_t j = pivot_col(row);
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), v[j].get_mpz_t(), row[j].get_mpz_t());
    sub_scaled(v, q, row);
  }
  return v;
}

}  // namespace rz
