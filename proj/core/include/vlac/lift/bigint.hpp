#pragma once

#include <cstdint>
#include <initializer_list>
#include <vector>

#include "vlac/la/dense.hpp"
#include "vlac/numeric.hpp"

namespace vlac::lift {

/// Row-major matrix of arbitrary-precision integers.
class IntMatrix {
 public:
  IntMatrix(std::size_t rows, std::size_t cols);
  /// Throws Error{DimensionMismatch} if data.size() != rows * cols.
  IntMatrix(std::size_t rows, std::size_t cols, std::vector<BigInt> data);
  /// Throws Error{DimensionMismatch} on ragged rows.
  static IntMatrix from_rows(std::initializer_list<std::initializer_list<long long>> rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }
  BigInt& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const BigInt& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  const std::vector<BigInt>& data() const noexcept { return data_; }

  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

 private:
  std::size_t rows_, cols_;
  std::vector<BigInt> data_;
};

/// Canonical residue of x modulo p.
ff::Scalar reduce(const BigInt& x, const ff::PrimeField& F);
la::DenseMatrix reduce(const IntMatrix& A, const ff::PrimeField& F);

/// ceil(prod_i ||row_i||_2) >= |det A|; 0 when a row is zero.
/// Throws Error{NotSquare}.
BigInt hadamard_bound(const IntMatrix& A);

/// Smallest x with x * x >= n, for n >= 0.
BigInt ceil_sqrt(const BigInt& n);

}  // namespace vlac::lift
