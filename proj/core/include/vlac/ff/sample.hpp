#pragma once

#include <cstdint>

#include "vlac/ff/field.hpp"

namespace vlac::ff {

/// Stream of uniformly distributed 64-bit words.
class UniformSource {
 public:
  virtual ~UniformSource() = default;
  virtual std::uint64_t next_u64() = 0;
};

/// Uniform integer in [0, bound) by rejection on next_u64(); bound >= 1.
std::uint64_t uniform_below(UniformSource& src, std::uint64_t bound);

/// Contiguous range {offset, ..., offset + size - 1} inside GF(p).
class SampleSet {
 public:
  /// Throws Error{InvalidArgument} unless 2 <= size and offset + size <= p.
  SampleSet(const PrimeField& field, std::uint64_t size, std::uint64_t offset = 0);

  static SampleSet full(const PrimeField& field) { return SampleSet(field, field.modulus()); }

  const PrimeField& field() const noexcept { return field_; }
  std::uint64_t size() const noexcept { return size_; }
  std::uint64_t offset() const noexcept { return offset_; }
  bool contains(Scalar a) const noexcept { return a.value >= offset_ && a.value - offset_ < size_; }
  /// Number of nonzero members.
  std::uint64_t nonzero_size() const noexcept { return offset_ == 0 ? size_ - 1 : size_; }

  friend bool operator==(const SampleSet& a, const SampleSet& b) {
    return a.field_ == b.field_ && a.size_ == b.size_ && a.offset_ == b.offset_;
  }

 private:
  PrimeField field_;
  std::uint64_t size_;
  std::uint64_t offset_;
};

Scalar sample(const SampleSet& set, UniformSource& src);
/// Uniform over the nonzero members of set.
Scalar sample_nonzero(const SampleSet& set, UniformSource& src);

}  // namespace vlac::ff
