#include "vlac/la/dense.hpp"

#include <algorithm>
#include <string>
#include <utility>

#include "vlac/error.hpp"

namespace vlac::la {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw Error(ErrorCode::DimensionMismatch, what);
}

}  // namespace

DenseMatrix::DenseMatrix(const PrimeField& field, std::size_t rows, std::size_t cols)
    : field_(field), rows_(rows), cols_(cols), data_(rows * cols) {}

DenseMatrix::DenseMatrix(const PrimeField& field, std::size_t rows, std::size_t cols,
                         std::vector<Scalar> data)
    : field_(field), rows_(rows), cols_(cols), data_(std::move(data)) {
  require(data_.size() == rows * cols, "dense data length != rows * cols");
  for (auto s : data_) {
    if (!field.contains(s)) throw Error(ErrorCode::InvalidArgument, "non-canonical scalar");
  }
}

DenseMatrix DenseMatrix::from_rows(const PrimeField& field,
                                   const std::vector<std::vector<std::int64_t>>& rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r ? rows.front().size() : 0;
  DenseMatrix M(field, r, c);
  for (std::size_t i = 0; i < r; ++i) {
    require(rows[i].size() == c, "ragged row literal");
    for (std::size_t j = 0; j < c; ++j) M(i, j) = field.from_int(rows[i][j]);
  }
  return M;
}

DenseMatrix DenseMatrix::identity(const PrimeField& field, std::size_t n) {
  DenseMatrix M(field, n, n);
  for (std::size_t i = 0; i < n; ++i) M(i, i) = field.one();
  return M;
}

std::size_t DenseMatrix::nnz() const noexcept {
  std::size_t n = 0;
  for (auto s : data_) n += !s.is_zero();
  return n;
}

Vec matvec(const DenseMatrix& M, const Vec& x) {
  require(x.size() == M.cols(), "matvec: vector length != cols");
  const auto& F = M.field();
  const auto p = F.modulus();
  Vec y(M.rows());
  for (std::size_t i = 0; i < M.rows(); ++i) {
    auto r = M.row(i);
    unsigned __int128 acc = 0;
    std::size_t pending = 0;
    for (std::size_t j = 0; j < r.size(); ++j) {
      acc += static_cast<unsigned __int128>(r[j].value) * x[j].value;
      if (++pending == F.lazy_batch()) {
        acc %= p;
        pending = 0;
      }
    }
    y[i] = Scalar{static_cast<std::uint64_t>(acc % p)};
  }
  return y;
}

Vec matvec_transpose(const DenseMatrix& M, const Vec& y) {
  require(y.size() == M.rows(), "matvec_transpose: vector length != rows");
  const auto& F = M.field();
  Vec x(M.cols());
  for (std::size_t i = 0; i < M.rows(); ++i) {
    if (y[i].is_zero()) continue;
    auto r = M.row(i);
    for (std::size_t j = 0; j < r.size(); ++j) x[j] = F.fma(r[j], y[i], x[j]);
  }
  return x;
}

DenseMatrix transpose(const DenseMatrix& M) {
  DenseMatrix T(M.field(), M.cols(), M.rows());
  for (std::size_t i = 0; i < M.rows(); ++i)
    for (std::size_t j = 0; j < M.cols(); ++j) T(j, i) = M(i, j);
  return T;
}

DenseMatrix dense_matmul(const DenseMatrix& A, const DenseMatrix& B) {
  require(A.field() == B.field(), "matmul over different fields");
  require(A.cols() == B.rows(), "matmul: inner dimensions differ");
  const auto p = A.field().modulus();
  const std::size_t m = A.rows(), k = A.cols(), n = B.cols();
  DenseMatrix C(A.field(), m, n);
  const std::size_t batch = A.field().lazy_batch();
  std::vector<unsigned __int128> acc(n);
  for (std::size_t i = 0; i < m; ++i) {
    std::fill(acc.begin(), acc.end(), 0);
    auto a = A.row(i);
    std::size_t pending = 0;
    for (std::size_t t = 0; t < k; ++t) {
      const std::uint64_t av = a[t].value;
      if (av != 0) {
        auto b = B.row(t);
        for (std::size_t j = 0; j < n; ++j) acc[j] += static_cast<unsigned __int128>(av) * b[j].value;
        if (++pending == batch) {
          for (auto& x : acc) x %= p;
          pending = 0;
        }
      }
    }
    auto c = C.row(i);
    for (std::size_t j = 0; j < n; ++j) c[j] = Scalar{static_cast<std::uint64_t>(acc[j] % p)};
  }
  return C;
}

}  // namespace vlac::la
