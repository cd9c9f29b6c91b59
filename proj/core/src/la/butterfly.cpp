#include "vlac/la/butterfly.hpp"

#include <utility>

#include "vlac/error.hpp"

namespace vlac::la {

std::size_t Butterfly::padded_size(std::size_t n) noexcept {
  std::size_t m = 1;
  while (m < n) m <<= 1;
  return m;
}

std::size_t Butterfly::layer_count(std::size_t n) noexcept {
  std::size_t l = 0;
  for (std::size_t m = padded_size(n); m > 1; m >>= 1) ++l;
  return l;
}

std::size_t Butterfly::switch_count(std::size_t n) noexcept {
  return padded_size(n) / 2 * layer_count(n);
}

Butterfly::Butterfly(const PrimeField& field, std::size_t n, Vec params)
    : field_(field), n_(n), n_padded_(padded_size(n)), layers_(layer_count(n)), params_(std::move(params)) {
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "butterfly of size 0");
  if (params_.size() != switch_count(n)) {
    throw Error(ErrorCode::InvalidArgument, "butterfly parameter count mismatch");
  }
  for (auto t : params_) {
    if (t.is_zero() || !field.contains(t)) throw Error(ErrorCode::InvalidArgument, "butterfly switch with theta = 0");
  }
}

Butterfly Butterfly::random(std::size_t n, const ff::SampleSet& set, ff::UniformSource& src) {
  Vec params(switch_count(n));
  for (auto& t : params) t = ff::sample_nonzero(set, src);
  return Butterfly(set.field(), n, std::move(params));
}

Vec Butterfly::apply(const Vec& x) const {
  if (x.size() != n_padded_) throw Error(ErrorCode::DimensionMismatch, "butterfly: input length");
  Vec y = x;
  std::size_t k = 0;
  for (std::size_t l = 0; l < layers_; ++l) {
    const std::size_t stride = std::size_t{1} << l;
    for (std::size_t i = 0; i < n_padded_; ++i) {
      if (i & stride) continue;
      const Scalar a = y[i], b = y[i + stride];
      y[i] = field_.add(a, b);
      y[i + stride] = field_.mul(params_[k++], field_.sub(a, b));
    }
  }
  return y;
}

Vec Butterfly::apply_transpose(const Vec& y) const {
  if (y.size() != n_padded_) throw Error(ErrorCode::DimensionMismatch, "butterfly: transpose input length");
  Vec x = y;
  std::size_t k = params_.size();
  for (std::size_t l = layers_; l-- > 0;) {
    const std::size_t stride = std::size_t{1} << l;
    const std::size_t base = k - n_padded_ / 2;
    std::size_t idx = base;
    for (std::size_t i = 0; i < n_padded_; ++i) {
      if (i & stride) continue;
      // [[1, 1], [t, -t]]^T = [[1, t], [1, -t]]
      const Scalar a = x[i];
      const Scalar tb = field_.mul(params_[idx++], x[i + stride]);
      x[i] = field_.add(a, tb);
      x[i + stride] = field_.sub(a, tb);
    }
    k = base;
  }
  return x;
}

Vec butterfly_apply(const Butterfly& U, const Vec& x) {
  if (x.size() > U.cols()) throw Error(ErrorCode::DimensionMismatch, "butterfly_apply: input too long");
  Vec padded = x;
  padded.resize(U.cols());
  return U.apply(padded);
}

}  // namespace vlac::la
