#pragma once

#include "dimflow/rational.hpp"

#include <vector>

namespace dimflow {

using IntMatrix = std::vector<std::vector<Int>>;

// Row echelon form H = U * A over Z with U unimodular; pivots positive and
// entries above each pivot reduced into [0, pivot).
struct Echelon {
    IntMatrix H;
    IntMatrix U;
    int rank = 0;
};
Echelon hermite(const IntMatrix& A);

// Integer vectors x with x * A = 0 (rows of the result form a basis).
IntMatrix left_kernel(const IntMatrix& A);
// Integer vectors y with A * y = 0.
IntMatrix right_kernel(const IntMatrix& A);
// Basis of span_Q(rows) intersected with Z^n.
IntMatrix saturate(const IntMatrix& rows);

// Clears denominators row by row; each row becomes a primitive integer row.
IntMatrix integral_rows(const QMatrix& rows);
Int gcd_all(const std::vector<Int>& v);

}  // namespace dimflow
