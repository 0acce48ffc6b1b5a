#pragma once
#include <vector>

#include "w3b/rational.hpp"

namespace w3b {

// Fraction-free (Bareiss) elimination over the integers.  Intermediate values
// stay integral, so the routines are exact for arbitrary inputs.
int bareiss_rank(std::vector<std::vector<Int>> m);

// Determinant of a square integer matrix.  The plain entry point consults the
// global parallel switch; the suffixed variants force one code path so tests
// and the benchmark can compare them.
Int bareiss_det(const std::vector<std::vector<Int>>& m);
Int bareiss_det_serial(std::vector<std::vector<Int>> m);
Int bareiss_det_parallel(std::vector<std::vector<Int>> m);

void set_parallel_linalg(bool enabled);
bool parallel_linalg();

// Exact determinant and rank for rational matrices (denominators cleared per
// row, then fraction-free elimination).
Rat det_rational(const std::vector<std::vector<Rat>>& m);
int rank_rational(const std::vector<std::vector<Rat>>& m);

// Exact inverse of a unit lower-triangular integer matrix; the inverse is
// again integral and unit lower-triangular.
std::vector<std::vector<Int>> unit_lower_inverse(const std::vector<std::vector<Int>>& m);

// Floating-point determinant via partial-pivot Gaussian elimination.
double det_double(std::vector<std::vector<double>> m);

}  // namespace w3b
