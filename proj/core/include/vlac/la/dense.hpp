#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "vlac/ff/field.hpp"

namespace vlac::la {

using ff::PrimeField;
using ff::Scalar;
using ff::Vec;

/// Tally of field operations (multiplies + adds) spent on one side of a
/// protocol.
class OpCounter {
 public:
  void add(std::uint64_t n) noexcept { ops_ += n; }
  std::uint64_t value() const noexcept { return ops_; }
  void reset() noexcept { ops_ = 0; }

 private:
  std::uint64_t ops_ = 0;
};

/// Row-major dense matrix over a prime field.
class DenseMatrix {
 public:
  DenseMatrix(const PrimeField& field, std::size_t rows, std::size_t cols);
  /// Throws Error{DimensionMismatch} if data.size() != rows * cols.
  DenseMatrix(const PrimeField& field, std::size_t rows, std::size_t cols, std::vector<Scalar> data);
  /// Row-list literal of small unsigned values, reduced mod p.
  static DenseMatrix from_rows(const PrimeField& field,
                               const std::vector<std::vector<std::int64_t>>& rows);
  static DenseMatrix identity(const PrimeField& field, std::size_t n);

  const PrimeField& field() const noexcept { return field_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }

  Scalar operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * cols_ + j]; }
  Scalar& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * cols_ + j]; }
  std::span<const Scalar> row(std::size_t i) const noexcept { return {data_.data() + i * cols_, cols_}; }
  std::span<Scalar> row(std::size_t i) noexcept { return {data_.data() + i * cols_, cols_}; }
  const std::vector<Scalar>& data() const noexcept { return data_; }

  std::size_t nnz() const noexcept;
  /// Multiplies plus adds of one matrix-vector product.
  std::uint64_t mu() const noexcept { return 2ull * rows_ * cols_; }

  friend bool operator==(const DenseMatrix& a, const DenseMatrix& b) {
    return a.field_ == b.field_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  PrimeField field_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Scalar> data_;
};

Vec matvec(const DenseMatrix& M, const Vec& x);
Vec matvec_transpose(const DenseMatrix& M, const Vec& y);
DenseMatrix transpose(const DenseMatrix& M);

/// Schoolbook product with delayed reduction. Throws Error{DimensionMismatch}.
DenseMatrix dense_matmul(const DenseMatrix& A, const DenseMatrix& B);

}  // namespace vlac::la
