#include "vlac/lift/bigint.hpp"

#include "vlac/error.hpp"

namespace vlac::lift {

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols, std::vector<BigInt> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows * cols) throw Error(ErrorCode::DimensionMismatch, "IntMatrix data length");
}

IntMatrix IntMatrix::from_rows(std::initializer_list<std::initializer_list<long long>> rows) {
  const std::size_t m = rows.size();
  const std::size_t n = m ? rows.begin()->size() : 0;
  std::vector<BigInt> data;
  data.reserve(m * n);
  for (const auto& r : rows) {
    if (r.size() != n) throw Error(ErrorCode::DimensionMismatch, "ragged rows");
    for (long long x : r) data.emplace_back(x);
  }
  return IntMatrix(m, n, std::move(data));
}

ff::Scalar reduce(const BigInt& x, const ff::PrimeField& F) {
  BigInt r = x % F.modulus();
  if (r < 0) r += F.modulus();
  return ff::Scalar(static_cast<std::uint64_t>(r));
}

la::DenseMatrix reduce(const IntMatrix& A, const ff::PrimeField& F) {
  std::vector<ff::Scalar> data;
  data.reserve(A.data().size());
  for (const auto& x : A.data()) data.push_back(reduce(x, F));
  return la::DenseMatrix(F, A.rows(), A.cols(), std::move(data));
}

BigInt ceil_sqrt(const BigInt& n) {
  if (n <= 0) return 0;
  BigInt s = boost::multiprecision::sqrt(n);
  if (s * s < n) ++s;
  return s;
}

BigInt hadamard_bound(const IntMatrix& A) {
  if (!A.square()) throw Error(ErrorCode::NotSquare, "Hadamard bound of a non-square matrix");
  BigInt prod = 1;
  for (std::size_t i = 0; i < A.rows(); ++i) {
    BigInt norm2 = 0;
    for (std::size_t j = 0; j < A.cols(); ++j) norm2 += A(i, j) * A(i, j);
    prod *= norm2;
  }
  return ceil_sqrt(prod);
}

}  // namespace vlac::lift
