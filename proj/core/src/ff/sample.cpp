#include "vlac/ff/sample.hpp"

#include <limits>
#include <string>

#include "vlac/error.hpp"

namespace vlac::ff {

std::uint64_t uniform_below(UniformSource& src, std::uint64_t bound) {
  if (bound == 0) throw Error(ErrorCode::InvalidArgument, "uniform_below(0)");
  // Accept x below the largest multiple of bound that fits in 2^64.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              (std::numeric_limits<std::uint64_t>::max() % bound + 1) % bound;
  for (;;) {
    const std::uint64_t x = src.next_u64();
    if (x <= limit) return x % bound;
  }
}

SampleSet::SampleSet(const PrimeField& field, std::uint64_t size, std::uint64_t offset)
    : field_(field), size_(size), offset_(offset) {
  if (size < 2 || size > field.modulus() || offset > field.modulus() - size) {
    throw Error(ErrorCode::InvalidArgument,
                "sample set [" + std::to_string(offset) + ", +" + std::to_string(size) +
                    ") does not fit in GF(" + std::to_string(field.modulus()) + ")");
  }
}

Scalar sample(const SampleSet& set, UniformSource& src) {
  return Scalar{set.offset() + uniform_below(src, set.size())};
}

Scalar sample_nonzero(const SampleSet& set, UniformSource& src) {
  for (;;) {
    const Scalar s = sample(set, src);
    if (!s.is_zero()) return s;
  }
}

}  // namespace vlac::ff
