#pragma once

#include <optional>

#include "vlac/la/dense.hpp"

namespace vlac::la {

// Prover-side Gaussian elimination. Verifiers never call these.

Scalar determinant(DenseMatrix A);
std::size_t rank(DenseMatrix A);
/// Unique solution of A x = b for square nonsingular A, otherwise nullopt.
std::optional<Vec> solve(const DenseMatrix& A, const Vec& b);
std::optional<DenseMatrix> inverse(const DenseMatrix& A);
/// Some nonzero x with A x = 0, or nullopt when A has full column rank.
std::optional<Vec> kernel_vector(const DenseMatrix& A);

}  // namespace vlac::la
