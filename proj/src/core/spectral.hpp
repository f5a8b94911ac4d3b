#pragma once

#include "types.hpp"

namespace gibbsline {

// Hermitian eigendecomposition. Dispatches to LAPACKE divide-and-conquer /
// two-stage solvers for large matrices and takes a real-symmetric fast path
// when the input has no imaginary part; small problems go through Eigen.
// Throws std::invalid_argument if A is not Hermitian within tol * scale.
Spectrum eigh(const Matrix& a, bool want_vectors, double hermiticity_tol = 1e-9);

// Largest singular value. Uses the Hermitian spectrum when applicable.
double operator_norm(const Matrix& a);

// Trace norm upper bound from the Hermitian/anti-Hermitian split:
// ||H(A)||_1 + ||K(A)||_1 with H, K the Hermitian parts. Exact for Hermitian A.
double trace_norm_upper(const Matrix& a);

}  // namespace gibbsline
