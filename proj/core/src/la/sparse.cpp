#include "vlac/la/sparse.hpp"

#include <algorithm>

#include "vlac/error.hpp"

namespace vlac::la {

SparseMatrix::SparseMatrix(const PrimeField& field, std::size_t rows, std::size_t cols)
    : field_(field), rows_(rows), cols_(cols), row_ptr_(rows + 1, 0) {}

SparseMatrix SparseMatrix::from_triplets(const PrimeField& field, std::size_t rows, std::size_t cols,
                                         std::vector<Triplet> entries) {
  std::sort(entries.begin(), entries.end(), [](const Triplet& a, const Triplet& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  SparseMatrix M(field, rows, cols);
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const auto& e = entries[i];
    if (e.row >= rows || e.col >= cols) throw Error(ErrorCode::InvalidArgument, "entry out of range");
    if (i > 0 && entries[i - 1].row == e.row && entries[i - 1].col == e.col) {
      throw Error(ErrorCode::InvalidArgument, "duplicate sparse entry");
    }
    if (!field.contains(e.value)) throw Error(ErrorCode::InvalidArgument, "non-canonical scalar");
    if (e.value.is_zero()) continue;
    M.col_idx_.push_back(e.col);
    M.values_.push_back(e.value);
    ++M.row_ptr_[e.row + 1];
  }
  for (std::size_t r = 0; r < rows; ++r) M.row_ptr_[r + 1] += M.row_ptr_[r];
  return M;
}

SparseMatrix SparseMatrix::from_dense(const DenseMatrix& D) {
  std::vector<Triplet> t;
  for (std::size_t i = 0; i < D.rows(); ++i)
    for (std::size_t j = 0; j < D.cols(); ++j)
      if (!D(i, j).is_zero()) t.push_back({i, j, D(i, j)});
  return from_triplets(D.field(), D.rows(), D.cols(), std::move(t));
}

std::vector<Triplet> SparseMatrix::triplets() const {
  std::vector<Triplet> t;
  t.reserve(nnz());
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) t.push_back({r, col_idx_[k], values_[k]});
  return t;
}

DenseMatrix SparseMatrix::to_dense() const {
  DenseMatrix D(field_, rows_, cols_);
  for (const auto& t : triplets()) D(t.row, t.col) = t.value;
  return D;
}

Vec matvec(const SparseMatrix& M, const Vec& x) {
  if (x.size() != M.cols()) throw Error(ErrorCode::DimensionMismatch, "sparse matvec: length != cols");
  const auto& F = M.field();
  const auto p = F.modulus();
  const auto& rp = M.row_ptr();
  const auto& ci = M.col_idx();
  const auto& v = M.values();
  Vec y(M.rows());
  for (std::size_t r = 0; r < M.rows(); ++r) {
    unsigned __int128 acc = 0;
    std::size_t pending = 0;
    for (std::size_t k = rp[r]; k < rp[r + 1]; ++k) {
      acc += static_cast<unsigned __int128>(v[k].value) * x[ci[k]].value;
      if (++pending == F.lazy_batch()) {
        acc %= p;
        pending = 0;
      }
    }
    y[r] = Scalar{static_cast<std::uint64_t>(acc % p)};
  }
  return y;
}

Vec matvec_transpose(const SparseMatrix& M, const Vec& y) {
  if (y.size() != M.rows()) {
    throw Error(ErrorCode::DimensionMismatch, "sparse matvec_transpose: length != rows");
  }
  const auto& F = M.field();
  Vec x(M.cols());
  const auto& rp = M.row_ptr();
  for (std::size_t r = 0; r < M.rows(); ++r) {
    if (y[r].is_zero()) continue;
    for (std::size_t k = rp[r]; k < rp[r + 1]; ++k) {
      x[M.col_idx()[k]] = F.fma(M.values()[k], y[r], x[M.col_idx()[k]]);
    }
  }
  return x;
}

}  // namespace vlac::la
