#pragma once

#include <cstddef>

#include "vlac/ff/sample.hpp"
#include "vlac/la/blackbox.hpp"

namespace vlac::la {

/// Butterfly network on GF(p)^n_padded, n_padded the next power of two.
/// Layer l pairs index i with i + 2^l (bit l of i clear) through the switch
///   (a, b) -> (a + b, theta * (a - b)),
/// i.e. [[1, 1], [theta, -theta]], invertible for theta != 0 in odd
/// characteristic. Parameters are stored layer-major, pairs in ascending i.
class Butterfly final : public Blackbox {
 public:
  /// Throws Error{InvalidArgument} if a parameter is zero or the count is
  /// not switch_count(n).
  Butterfly(const PrimeField& field, std::size_t n, Vec params);

  /// Parameters drawn from the nonzero part of set.
  static Butterfly random(std::size_t n, const ff::SampleSet& set, ff::UniformSource& src);

  static std::size_t padded_size(std::size_t n) noexcept;
  static std::size_t layer_count(std::size_t n) noexcept;
  static std::size_t switch_count(std::size_t n) noexcept;

  const PrimeField& field() const noexcept override { return field_; }
  std::size_t rows() const noexcept override { return n_padded_; }
  std::size_t cols() const noexcept override { return n_padded_; }
  Vec apply(const Vec& x) const override;
  Vec apply_transpose(const Vec& y) const override;
  /// Each switch costs one multiply and two additions.
  std::uint64_t mu() const noexcept override { return 3ull * params_.size(); }

  std::size_t logical_size() const noexcept { return n_; }
  std::size_t layers() const noexcept { return layers_; }
  const Vec& params() const noexcept { return params_; }

 private:
  PrimeField field_;
  std::size_t n_;
  std::size_t n_padded_;
  std::size_t layers_;
  Vec params_;
};

/// Apply U to x after embedding x (length <= n_padded) with trailing zeros.
Vec butterfly_apply(const Butterfly& U, const Vec& x);

}  // namespace vlac::la
