#pragma once

#include <memory>
#include <variant>
#include <vector>

#include "vlac/la/dense.hpp"
#include "vlac/la/sparse.hpp"

namespace vlac::la {

/// A linear operator reachable only through products with vectors.
/// mu() is the multiply + add count of one apply() and must not change
/// between calls. Implementations are immutable and re-entrant.
class Blackbox {
 public:
  virtual ~Blackbox() = default;

  virtual const PrimeField& field() const noexcept = 0;
  virtual std::size_t rows() const noexcept = 0;
  virtual std::size_t cols() const noexcept = 0;
  virtual Vec apply(const Vec& x) const = 0;
  virtual Vec apply_transpose(const Vec& y) const = 0;
  virtual std::uint64_t mu() const noexcept = 0;

  bool square() const noexcept { return rows() == cols(); }
};

using BlackboxPtr = std::shared_ptr<const Blackbox>;

BlackboxPtr as_blackbox(DenseMatrix M);
BlackboxPtr as_blackbox(SparseMatrix M);

/// Explicit input matrix in either storage.
using AnyMatrix = std::variant<DenseMatrix, SparseMatrix>;

BlackboxPtr as_blackbox(const AnyMatrix& M);
DenseMatrix to_dense(const AnyMatrix& M);
const PrimeField& field_of(const AnyMatrix& M);
std::size_t rows_of(const AnyMatrix& M);
std::size_t cols_of(const AnyMatrix& M);

/// n x n identity; applying it is free.
BlackboxPtr identity_operator(const PrimeField& field, std::size_t n);

/// diag(d) with every d_i nonzero.
class DiagonalScaling final : public Blackbox {
 public:
  /// Throws Error{InvalidArgument} if any entry is zero.
  DiagonalScaling(const PrimeField& field, Vec d);

  const PrimeField& field() const noexcept override { return field_; }
  std::size_t rows() const noexcept override { return d_.size(); }
  std::size_t cols() const noexcept override { return d_.size(); }
  Vec apply(const Vec& x) const override;
  Vec apply_transpose(const Vec& y) const override { return apply(y); }
  std::uint64_t mu() const noexcept override { return d_.size(); }

  const Vec& entries() const noexcept { return d_; }
  Scalar determinant() const noexcept;

 private:
  PrimeField field_;
  Vec d_;
};

/// ops[0](ops[1](...ops.back()(x))). Throws Error{DimensionMismatch} when
/// neighbouring dimensions disagree or the list is empty.
BlackboxPtr compose(std::vector<BlackboxPtr> ops);

/// Upper-left k x k block of M: zero-pad the input, apply, keep the first k
/// outputs.
BlackboxPtr leading_projection(BlackboxPtr M, std::size_t k);

/// M embedded in the top-left corner of a rows x cols zero operator.
BlackboxPtr zero_pad(BlackboxPtr M, std::size_t rows, std::size_t cols);

/// shift * I - A for square A.
BlackboxPtr shifted(BlackboxPtr A, Scalar shift);

/// Diagonal-scaled product D * A.
BlackboxPtr scaled(std::shared_ptr<const DiagonalScaling> D, BlackboxPtr A);

/// apply() that charges mu() to ops.
Vec apply_counted(const Blackbox& M, const Vec& x, OpCounter& ops);

/// Dense copy through cols() unit-vector applies.
DenseMatrix materialize(const Blackbox& M);

}  // namespace vlac::la
