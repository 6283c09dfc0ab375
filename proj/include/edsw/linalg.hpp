#pragma once

#include "edsw/ratexpr.hpp"

#include <vector>

namespace edsw {

using RatRow = std::vector<RatExpr>;
using RatMatrix = std::vector<RatRow>;

std::size_t rank(const RatMatrix& m);

// Basis of {v : M v = 0}. Fraction-free elimination with pivot columns taken
// in order; basis vectors are denominator-cleared, content-normalized, and
// sign-fixed, one per free column in increasing column order.
std::vector<RatRow> null_space(const RatMatrix& m);

// Clear denominators, divide out the polynomial+numeric content, make the
// first nonzero entry's leading coefficient positive.
void normalize_row(RatRow& v);

}  // namespace edsw
