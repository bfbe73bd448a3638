#pragma once

#include <gmpxx.h>

#include <vector>

namespace rz {

using IntVec = std::vector<mpz_class>;
using IntMat = std::vector<IntVec>;  // row major

// Row-style Hermite normal form of the lattice spanned by the rows: pivots
// positive, pivot columns strictly increasing row by row, entries below a
// pivot zero and entries above reduced into [0, pivot). Zero rows are
// dropped, so the result is a canonical basis of the row lattice.
IntMat hnf(IntMat m);

// HNF basis of { x : x * m = 0 }, the left kernel of m.
IntMat left_kernel(const IntMat& m);

// HNF basis of the sum of the two row lattices (widths must agree).
IntMat lattice_sum(const IntMat& a, const IntMat& b);

// HNF basis of the intersection of the two row lattices.
IntMat lattice_intersect(const IntMat& a, const IntMat& b);

// Membership of v in the row lattice given by an HNF basis.
bool lattice_contains(const IntMat& hnf_basis, const IntVec& v);

// Canonical coset representative of v modulo the lattice: pivot coordinates
// are reduced into [0, pivot). Equal cosets reduce to equal vectors.
IntVec coset_reduce(const IntMat& hnf_basis, IntVec v);

}  // namespace rz
