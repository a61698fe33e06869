#pragma once

// Straightforward serial dense implementations of the kernels in linalg.hpp.
// They share no code with the optimized path and serve as test oracles and
// as the baseline in the kernel benchmarks.

#include "adiwave/linalg.hpp"

#include <span>

namespace adiwave::reference {

DenseMatrix matmul(ConstMatrixView a, ConstMatrixView b);

/// Dense tridiagonal matrix from its three diagonals.
DenseMatrix tridiagonal(std::span<const double> lower, std::span<const double> main, std::span<const double> upper);

/// Solves A X = B by Gaussian elimination with partial pivoting.
DenseMatrix solve(ConstMatrixView a, ConstMatrixView b);

/// Naive sum of squares, row-major order.
double frobenius_norm(ConstMatrixView m);

/// Thomas algorithm on a single right-hand side, one division per row,
/// no precomputed factors.
void thomas(std::span<const double> lower, std::span<const double> main, std::span<const double> upper,
            std::span<double> rhs);

} // namespace adiwave::reference
