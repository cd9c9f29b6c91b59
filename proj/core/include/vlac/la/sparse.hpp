#pragma once

#include <cstddef>
#include <vector>

#include "vlac/la/dense.hpp"

namespace vlac::la {

struct Triplet {
  std::size_t row;
  std::size_t col;
  Scalar value;
};

/// Compressed sparse row storage. Entries are sorted by (row, col), have no
/// duplicates, and store no zeros.
class SparseMatrix {
 public:
  SparseMatrix(const PrimeField& field, std::size_t rows, std::size_t cols);
  /// Zero values are dropped. Throws Error{InvalidArgument} on duplicate
  /// coordinates or out-of-range indices.
  static SparseMatrix from_triplets(const PrimeField& field, std::size_t rows, std::size_t cols,
                                    std::vector<Triplet> entries);
  static SparseMatrix from_dense(const DenseMatrix& M);

  const PrimeField& field() const noexcept { return field_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t nnz() const noexcept { return values_.size(); }
  std::uint64_t mu() const noexcept { return 2ull * nnz(); }

  std::vector<Triplet> triplets() const;
  DenseMatrix to_dense() const;

  const std::vector<std::size_t>& row_ptr() const noexcept { return row_ptr_; }
  const std::vector<std::size_t>& col_idx() const noexcept { return col_idx_; }
  const std::vector<Scalar>& values() const noexcept { return values_; }

 private:
  PrimeField field_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<std::size_t> row_ptr_;
  std::vector<std::size_t> col_idx_;
  std::vector<Scalar> values_;
};

Vec matvec(const SparseMatrix& M, const Vec& x);
Vec matvec_transpose(const SparseMatrix& M, const Vec& y);

}  // namespace vlac::la
