#pragma once

#include <compare>
#include <cstdint>
#include <vector>

namespace vlac::ff {

/// Canonical field element: always reduced into [0, p).
struct Scalar {
  std::uint64_t value = 0;

  constexpr Scalar() = default;
  constexpr explicit Scalar(std::uint64_t v) : value(v) {}

  constexpr bool is_zero() const { return value == 0; }
  friend constexpr auto operator<=>(Scalar, Scalar) = default;
};

using Vec = std::vector<Scalar>;

/// Deterministic Miller-Rabin, exact for every 64-bit input.
bool is_prime(std::uint64_t n) noexcept;

/// Z/pZ for an odd prime p < 2^63.
class PrimeField {
 public:
  /// Throws Error{EvenModulus} for p even (including 2), Error{NotPrime}
  /// for composite p or p < 3.
  explicit PrimeField(std::uint64_t p);

  std::uint64_t modulus() const noexcept { return p_; }

  Scalar zero() const noexcept { return Scalar{0}; }
  Scalar one() const noexcept { return Scalar{1}; }

  Scalar from_uint(std::uint64_t v) const noexcept { return Scalar{v % p_}; }
  Scalar from_int(std::int64_t v) const noexcept;
  /// Symmetric lift into (-p/2, p/2].
  std::int64_t to_signed(Scalar a) const noexcept;
  bool contains(Scalar a) const noexcept { return a.value < p_; }

  Scalar add(Scalar a, Scalar b) const noexcept {
    std::uint64_t s = a.value + b.value;
    return Scalar{s >= p_ ? s - p_ : s};
  }
  Scalar sub(Scalar a, Scalar b) const noexcept {
    return Scalar{a.value >= b.value ? a.value - b.value : a.value + p_ - b.value};
  }
  Scalar neg(Scalar a) const noexcept { return Scalar{a.value == 0 ? 0 : p_ - a.value}; }
  Scalar mul(Scalar a, Scalar b) const noexcept {
    return Scalar{static_cast<std::uint64_t>(
        static_cast<unsigned __int128>(a.value) * b.value % p_)};
  }
  /// a*b + c
  Scalar fma(Scalar a, Scalar b, Scalar c) const noexcept {
    return Scalar{static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(a.value) * b.value + c.value) % p_)};
  }
  /// Throws Error{DivisionByZero} on a == 0.
  Scalar inv(Scalar a) const;
  Scalar div(Scalar a, Scalar b) const { return mul(a, inv(b)); }
  Scalar pow(Scalar a, std::uint64_t e) const noexcept;

  Scalar dot(const Vec& x, const Vec& y) const;

  /// How many products (p-1)^2 a 128-bit accumulator holding a reduced
  /// value can absorb before it must be reduced again.
  std::size_t lazy_batch() const noexcept { return batch_; }

  friend bool operator==(const PrimeField& a, const PrimeField& b) { return a.p_ == b.p_; }

 private:
  std::uint64_t p_;
  std::size_t batch_;
};

}  // namespace vlac::ff
