#pragma once

#include "rz/intlinalg.hpp"

namespace rz {

// In-place LLL reduction of the row basis with exact rational Gram-Schmidt
// data and Lovasz parameter 99/100. Rows must be linearly independent. The
// result is deterministic for a fixed input basis.
void lll_reduce(IntMat& basis);

}  // namespace rz
