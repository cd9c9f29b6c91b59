#include "vlac/la/blackbox.hpp"

#include <algorithm>
#include <utility>

#include "vlac/error.hpp"

namespace vlac::la {

namespace {

void check_len(std::size_t got, std::size_t want, const char* what) {
  if (got != want) throw Error(ErrorCode::DimensionMismatch, what);
}

template <class Matrix>
class MatrixBlackbox final : public Blackbox {
 public:
  explicit MatrixBlackbox(Matrix M) : M_(std::move(M)) {}

  const PrimeField& field() const noexcept override { return M_.field(); }
  std::size_t rows() const noexcept override { return M_.rows(); }
  std::size_t cols() const noexcept override { return M_.cols(); }
  Vec apply(const Vec& x) const override { return matvec(M_, x); }
  Vec apply_transpose(const Vec& y) const override { return matvec_transpose(M_, y); }
  std::uint64_t mu() const noexcept override { return M_.mu(); }

 private:
  Matrix M_;
};

class Identity final : public Blackbox {
 public:
  Identity(const PrimeField& field, std::size_t n) : field_(field), n_(n) {}

  const PrimeField& field() const noexcept override { return field_; }
  std::size_t rows() const noexcept override { return n_; }
  std::size_t cols() const noexcept override { return n_; }
  Vec apply(const Vec& x) const override {
    check_len(x.size(), n_, "identity: input length");
    return x;
  }
  Vec apply_transpose(const Vec& y) const override { return apply(y); }
  std::uint64_t mu() const noexcept override { return 0; }

 private:
  PrimeField field_;
  std::size_t n_;
};

class Composed final : public Blackbox {
 public:
  explicit Composed(std::vector<BlackboxPtr> ops) : ops_(std::move(ops)) {
    mu_ = 0;
    for (const auto& op : ops_) mu_ += op->mu();
  }

  const PrimeField& field() const noexcept override { return ops_.front()->field(); }
  std::size_t rows() const noexcept override { return ops_.front()->rows(); }
  std::size_t cols() const noexcept override { return ops_.back()->cols(); }
  Vec apply(const Vec& x) const override {
    check_len(x.size(), cols(), "compose: input length");
    Vec y = x;
    for (auto it = ops_.rbegin(); it != ops_.rend(); ++it) y = (*it)->apply(y);
    return y;
  }
  Vec apply_transpose(const Vec& y) const override {
    check_len(y.size(), rows(), "compose: transpose input length");
    Vec x = y;
    for (const auto& op : ops_) x = op->apply_transpose(x);
    return x;
  }
  std::uint64_t mu() const noexcept override { return mu_; }

 private:
  std::vector<BlackboxPtr> ops_;
  std::uint64_t mu_;
};

// Window of M: rows_ x cols_ operator with M in its top-left corner. Used
// both to shrink (leading projection) and to grow (zero padding).
class Window final : public Blackbox {
 public:
  Window(BlackboxPtr M, std::size_t rows, std::size_t cols) : M_(std::move(M)), rows_(rows), cols_(cols) {}

  const PrimeField& field() const noexcept override { return M_->field(); }
  std::size_t rows() const noexcept override { return rows_; }
  std::size_t cols() const noexcept override { return cols_; }
  Vec apply(const Vec& x) const override {
    check_len(x.size(), cols_, "window: input length");
    Vec in(M_->cols());
    for (std::size_t i = 0; i < std::min(cols_, in.size()); ++i) in[i] = x[i];
    Vec out = M_->apply(in);
    out.resize(rows_);
    return out;
  }
  Vec apply_transpose(const Vec& y) const override {
    check_len(y.size(), rows_, "window: transpose input length");
    Vec in(M_->rows());
    for (std::size_t i = 0; i < std::min(rows_, in.size()); ++i) in[i] = y[i];
    Vec out = M_->apply_transpose(in);
    out.resize(cols_);
    return out;
  }
  std::uint64_t mu() const noexcept override { return M_->mu(); }

 private:
  BlackboxPtr M_;
  std::size_t rows_;
  std::size_t cols_;
};

class Shifted final : public Blackbox {
 public:
  Shifted(BlackboxPtr A, Scalar shift) : A_(std::move(A)), shift_(shift) {}

  const PrimeField& field() const noexcept override { return A_->field(); }
  std::size_t rows() const noexcept override { return A_->rows(); }
  std::size_t cols() const noexcept override { return A_->cols(); }
  Vec apply(const Vec& x) const override { return combine(x, A_->apply(x)); }
  Vec apply_transpose(const Vec& y) const override { return combine(y, A_->apply_transpose(y)); }
  std::uint64_t mu() const noexcept override { return A_->mu() + 2 * A_->rows(); }

 private:
  Vec combine(const Vec& x, Vec ax) const {
    const auto& F = field();
    for (std::size_t i = 0; i < ax.size(); ++i) ax[i] = F.sub(F.mul(shift_, x[i]), ax[i]);
    return ax;
  }

  BlackboxPtr A_;
  Scalar shift_;
};

}  // namespace

BlackboxPtr as_blackbox(DenseMatrix M) { return std::make_shared<MatrixBlackbox<DenseMatrix>>(std::move(M)); }

BlackboxPtr as_blackbox(SparseMatrix M) {
  return std::make_shared<MatrixBlackbox<SparseMatrix>>(std::move(M));
}

BlackboxPtr as_blackbox(const AnyMatrix& M) {
  return std::visit([](const auto& m) { return as_blackbox(m); }, M);
}

DenseMatrix to_dense(const AnyMatrix& M) {
  if (const auto* d = std::get_if<DenseMatrix>(&M)) return *d;
  return std::get<SparseMatrix>(M).to_dense();
}

const PrimeField& field_of(const AnyMatrix& M) {
  return std::visit([](const auto& m) -> const PrimeField& { return m.field(); }, M);
}

std::size_t rows_of(const AnyMatrix& M) {
  return std::visit([](const auto& m) { return m.rows(); }, M);
}

std::size_t cols_of(const AnyMatrix& M) {
  return std::visit([](const auto& m) { return m.cols(); }, M);
}

BlackboxPtr identity_operator(const PrimeField& field, std::size_t n) {
  return std::make_shared<Identity>(field, n);
}

DiagonalScaling::DiagonalScaling(const PrimeField& field, Vec d) : field_(field), d_(std::move(d)) {
  for (auto s : d_) {
    if (s.is_zero() || !field.contains(s)) {
      throw Error(ErrorCode::InvalidArgument, "diagonal scaling entries must be nonzero");
    }
  }
}

Vec DiagonalScaling::apply(const Vec& x) const {
  check_len(x.size(), d_.size(), "diagonal: input length");
  Vec y(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) y[i] = field_.mul(d_[i], x[i]);
  return y;
}

Scalar DiagonalScaling::determinant() const noexcept {
  Scalar det = field_.one();
  for (auto s : d_) det = field_.mul(det, s);
  return det;
}

BlackboxPtr compose(std::vector<BlackboxPtr> ops) {
  if (ops.empty()) throw Error(ErrorCode::DimensionMismatch, "compose of nothing");
  for (std::size_t i = 0; i + 1 < ops.size(); ++i) {
    if (ops[i]->cols() != ops[i + 1]->rows()) {
      throw Error(ErrorCode::DimensionMismatch, "compose: inner dimensions differ");
    }
    if (!(ops[i]->field() == ops[i + 1]->field())) {
      throw Error(ErrorCode::DimensionMismatch, "compose: operators over different fields");
    }
  }
  if (ops.size() == 1) return ops.front();
  return std::make_shared<Composed>(std::move(ops));
}

BlackboxPtr leading_projection(BlackboxPtr M, std::size_t k) {
  if (k > std::min(M->rows(), M->cols())) {
    throw Error(ErrorCode::DimensionMismatch, "leading_projection: k exceeds dimensions");
  }
  return std::make_shared<Window>(std::move(M), k, k);
}

BlackboxPtr zero_pad(BlackboxPtr M, std::size_t rows, std::size_t cols) {
  if (rows < M->rows() || cols < M->cols()) {
    throw Error(ErrorCode::DimensionMismatch, "zero_pad: target smaller than operator");
  }
  if (rows == M->rows() && cols == M->cols()) return M;
  return std::make_shared<Window>(std::move(M), rows, cols);
}

BlackboxPtr shifted(BlackboxPtr A, Scalar shift) {
  if (!A->square()) throw Error(ErrorCode::NotSquare, "shifted operator needs a square matrix");
  return std::make_shared<Shifted>(std::move(A), shift);
}

BlackboxPtr scaled(std::shared_ptr<const DiagonalScaling> D, BlackboxPtr A) {
  return compose({std::move(D), std::move(A)});
}

Vec apply_counted(const Blackbox& M, const Vec& x, OpCounter& ops) {
  ops.add(M.mu());
  return M.apply(x);
}

DenseMatrix materialize(const Blackbox& M) {
  DenseMatrix D(M.field(), M.rows(), M.cols());
  Vec e(M.cols());
  for (std::size_t j = 0; j < M.cols(); ++j) {
    e[j] = M.field().one();
    Vec col = M.apply(e);
    for (std::size_t i = 0; i < M.rows(); ++i) D(i, j) = col[i];
    e[j] = Scalar{};
  }
  return D;
}

}  // namespace vlac::la
