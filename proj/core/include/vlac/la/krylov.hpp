#pragma once

#include <optional>

#include "vlac/ff/poly.hpp"
#include "vlac/ff/sample.hpp"
#include "vlac/la/blackbox.hpp"

namespace vlac::la {

/// (u^T A^i v) for i < length.
Vec krylov_sequence(const Blackbox& A, const Vec& u, const Vec& v, std::size_t length);

/// q(A) v by Horner's rule: deg q applies of A.
Vec apply_poly(const Blackbox& A, const ff::Poly& q, const Vec& v);

/// Solve (shift I - A) w = v given a polynomial P with P(A) v = 0 and
/// P(shift) != 0: w = Q(A) v / P(shift), (shift - x) Q(x) = P(shift) - P(x).
/// Returns nullopt when P(shift) == 0.
std::optional<Vec> shifted_solve_with_annihilator(const Blackbox& A, const ff::Poly& P, Scalar shift,
                                                  const Vec& v);

/// Prover-side linear solve A x = b for square A: dense elimination for
/// small n, Wiedemann iteration with random projections otherwise. Returns
/// nullopt if no solution was found (A singular, or Wiedemann unlucky on
/// every attempt).
std::optional<Vec> prover_solve(const Blackbox& A, const Vec& b, ff::UniformSource& rng);

/// Largest dimension the prover materializes for dense elimination.
inline constexpr std::size_t kDenseProverLimit = 384;

}  // namespace vlac::la
