#include "vlac/la/krylov.hpp"

#include "vlac/error.hpp"
#include "vlac/ff/sequence.hpp"
#include "vlac/la/elimination.hpp"

namespace vlac::la {

Vec krylov_sequence(const Blackbox& A, const Vec& u, const Vec& v, std::size_t length) {
  if (!A.square()) throw Error(ErrorCode::NotSquare, "Krylov sequence needs a square operator");
  if (u.size() != A.rows() || v.size() != A.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "Krylov sequence: projection lengths");
  }
  const auto& F = A.field();
  Vec seq(length);
  Vec x = v;
  for (std::size_t i = 0; i < length; ++i) {
    seq[i] = F.dot(u, x);
    if (i + 1 < length) x = A.apply(x);
  }
  return seq;
}

Vec apply_poly(const Blackbox& A, const ff::Poly& q, const Vec& v) {
  const auto& F = A.field();
  const auto& c = q.coeffs();
  Vec acc(v.size());
  for (std::size_t i = c.size(); i-- > 0;) {
    acc = A.apply(acc);
    for (std::size_t j = 0; j < acc.size(); ++j) acc[j] = F.fma(c[i], v[j], acc[j]);
  }
  return acc;
}

std::optional<Vec> shifted_solve_with_annihilator(const Blackbox& A, const ff::Poly& P, Scalar shift,
                                                  const Vec& v) {
  const auto& F = A.field();
  const Scalar ps = ff::eval(F, P, shift);
  if (ps.is_zero()) return std::nullopt;
  // (P(shift) - P(x)) / (shift - x) by synthetic division of P(x) - P(shift)
  // by (x - shift): quotient q satisfies P(x) - P(shift) = (x - shift) q(x).
  const auto& c = P.coeffs();
  if (c.size() <= 1) return std::nullopt;
  std::vector<Scalar> q(c.size() - 1);
  Scalar carry{};
  for (std::size_t i = c.size(); i-- > 1;) {
    carry = F.fma(carry, shift, c[i]);
    q[i - 1] = carry;
  }
  Vec w = apply_poly(A, ff::Poly(std::move(q)), v);
  const Scalar inv = F.inv(ps);
  for (auto& x : w) x = F.mul(x, inv);
  return w;
}

std::optional<Vec> prover_solve(const Blackbox& A, const Vec& b, ff::UniformSource& rng) {
  if (!A.square()) throw Error(ErrorCode::NotSquare, "solve needs a square operator");
  const auto& F = A.field();
  const std::size_t n = A.rows();
  if (n <= kDenseProverLimit) return solve(materialize(A), b);
  const ff::SampleSet full = ff::SampleSet::full(F);
  for (int attempt = 0; attempt < 4; ++attempt) {
    Vec u(n);
    for (auto& x : u) x = ff::sample(full, rng);
    const ff::Poly f = ff::berlekamp_massey(F, krylov_sequence(A, u, b, 2 * n));
    // f(A) b = 0 with f(0) != 0 gives A * (-(f(x) - f(0)) / x)(A) b / f(0) = b.
    if (f.coeff(0).is_zero()) continue;
    const auto& c = f.coeffs();
    std::vector<Scalar> g(c.begin() + 1, c.end());
    Vec x = apply_poly(A, ff::Poly(std::move(g)), b);
    const Scalar scale = F.neg(F.inv(c[0]));
    for (auto& xi : x) xi = F.mul(xi, scale);
    if (A.apply(x) == b) return x;
  }
  return std::nullopt;
}

}  // namespace vlac::la
