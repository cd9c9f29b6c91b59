#include "vlac/la/elimination.hpp"

#include <utility>

#include "vlac/error.hpp"

namespace vlac::la {

namespace {

// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(DenseMatrix& M, std::size_t col_limit) {
  const auto& F = M.field();
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < col_limit && r < M.rows(); ++c) {
    std::size_t piv = r;
    while (piv < M.rows() && M(piv, c).is_zero()) ++piv;
    if (piv == M.rows()) continue;
    if (piv != r) {
      auto a = M.row(piv);
      auto b = M.row(r);
      std::swap_ranges(a.begin(), a.end(), b.begin());
    }
    const Scalar inv = F.inv(M(r, c));
    for (auto& x : M.row(r)) x = F.mul(x, inv);
    for (std::size_t i = 0; i < M.rows(); ++i) {
      if (i == r || M(i, c).is_zero()) continue;
      const Scalar f = F.neg(M(i, c));
      auto src = M.row(r);
      auto dst = M.row(i);
      for (std::size_t j = c; j < M.cols(); ++j) dst[j] = F.fma(f, src[j], dst[j]);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

Scalar determinant(DenseMatrix A) {
  if (!A.square()) throw Error(ErrorCode::NotSquare, "determinant of a non-square matrix");
  const auto& F = A.field();
  const std::size_t n = A.rows();
  Scalar det = F.one();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && A(piv, c).is_zero()) ++piv;
    if (piv == n) return F.zero();
    if (piv != c) {
      auto a = A.row(piv);
      auto b = A.row(c);
      std::swap_ranges(a.begin(), a.end(), b.begin());
      det = F.neg(det);
    }
    det = F.mul(det, A(c, c));
    const Scalar inv = F.inv(A(c, c));
    for (std::size_t i = c + 1; i < n; ++i) {
      if (A(i, c).is_zero()) continue;
      const Scalar f = F.neg(F.mul(A(i, c), inv));
      auto src = A.row(c);
      auto dst = A.row(i);
      for (std::size_t j = c; j < n; ++j) dst[j] = F.fma(f, src[j], dst[j]);
    }
  }
  return det;
}

std::size_t rank(DenseMatrix A) { return rref(A, A.cols()).size(); }

std::optional<Vec> solve(const DenseMatrix& A, const Vec& b) {
  if (!A.square()) throw Error(ErrorCode::NotSquare, "solve needs a square matrix");
  if (b.size() != A.rows()) throw Error(ErrorCode::DimensionMismatch, "solve: rhs length");
  const std::size_t n = A.rows();
  DenseMatrix aug(A.field(), n, n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = A(i, j);
    aug(i, n) = b[i];
  }
  if (rref(aug, n).size() != n) return std::nullopt;
  Vec x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = aug(i, n);
  return x;
}

std::optional<DenseMatrix> inverse(const DenseMatrix& A) {
  if (!A.square()) throw Error(ErrorCode::NotSquare, "inverse needs a square matrix");
  const std::size_t n = A.rows();
  DenseMatrix aug(A.field(), n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = A(i, j);
    aug(i, n + i) = A.field().one();
  }
  if (rref(aug, n).size() != n) return std::nullopt;
  DenseMatrix W(A.field(), n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) W(i, j) = aug(i, n + j);
  return W;
}

std::optional<Vec> kernel_vector(const DenseMatrix& A) {
  DenseMatrix R = A;
  const auto pivots = rref(R, R.cols());
  if (pivots.size() == A.cols()) return std::nullopt;
  // First free column gets 1; pivot variables follow from the RREF rows.
  std::vector<bool> is_pivot(A.cols(), false);
  for (auto c : pivots) is_pivot[c] = true;
  std::size_t free_col = 0;
  while (is_pivot[free_col]) ++free_col;
  const auto& F = A.field();
  Vec x(A.cols());
  x[free_col] = F.one();
  for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = F.neg(R(r, free_col));
  return x;
}

}  // namespace vlac::la
