#pragma once

#include "vlac/certs/det.hpp"

namespace vlac::lift {

using certs::Certified;
using certs::ProtocolRun;
using certs::RunOptions;

/// Matrix over GF(p)[X], row-major.
class PolyMatrix {
 public:
  PolyMatrix(const ff::PrimeField& field, std::size_t rows, std::size_t cols);
  /// Throws Error{DimensionMismatch} if entries.size() != rows * cols.
  PolyMatrix(const ff::PrimeField& field, std::size_t rows, std::size_t cols, std::vector<ff::Poly> entries);

  const ff::PrimeField& field() const noexcept { return field_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }
  ff::Poly& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
  const ff::Poly& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }
  const std::vector<ff::Poly>& entries() const noexcept { return entries_; }

  /// Largest entry degree, 0 for the zero matrix.
  std::size_t degree() const noexcept;
  /// A(alpha) over the ground field.
  la::DenseMatrix evaluate(ff::Scalar alpha) const;

 private:
  ff::PrimeField field_;
  std::size_t rows_, cols_;
  std::vector<ff::Poly> entries_;
};

inline constexpr std::string_view kPolyDetId = "polydet";

/// Unique polynomial of degree <= xs.size() - 1 through (xs[i], ys[i]);
/// the xs must be distinct.
ff::Poly interpolate(const ff::PrimeField& F, const ff::Vec& xs, const ff::Vec& ys);

/// det A by evaluation at n*d + 1 points and interpolation (prover side).
/// Throws Error{InvalidArgument} when the field has too few points.
ff::Poly polydet_prove(const PolyMatrix& A);

/// n*d/|S| + det_error_bound(n, deg_h, S).
Rational polydet_error_bound(const PolyMatrix& A, const ff::SampleSet& S, long deg_h);

proto::Digest polydet_digest(const PolyMatrix& A, const ff::SampleSet& S);

/// Prover commits r(X) under "polydet.r" with deg r <= n*d, the verifier
/// draws alpha under "polydet.alpha", and a determinant certificate for
/// A(alpha) (prefix "polydet.det") must equal r(alpha).
proto::VerifierFn polydet_verifier(PolyMatrix A, ff::SampleSet S,
                                   std::shared_ptr<std::optional<ff::Poly>> result = nullptr);
proto::ProverFn polydet_prover_committing(PolyMatrix A, ff::Poly r, ff::SampleSet S, std::uint64_t prover_seed);

ProtocolRun polydet_protocol(const PolyMatrix& A, const ff::SampleSet& S,
                             std::uint64_t prover_seed = RunOptions{}.prover_seed,
                             const std::shared_ptr<std::optional<ff::Poly>>& result = nullptr);

Certified<ff::Poly> polydet_certify(const PolyMatrix& A, const ff::SampleSet& S, const RunOptions& run = {});

}  // namespace vlac::lift
