#include "vlac/ff/field.hpp"

#include <algorithm>
#include <array>
#include <string>

#include "vlac/error.hpp"

namespace vlac {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NotPrime: return "NotPrime";
    case ErrorCode::EvenModulus: return "EvenModulus";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::BothZero: return "BothZero";
    case ErrorCode::GeneratorMismatch: return "GeneratorMismatch";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotSquare: return "NotSquare";
    case ErrorCode::BrokenReference: return "BrokenReference";
    case ErrorCode::Malformed: return "Malformed";
    case ErrorCode::VersionUnsupported: return "VersionUnsupported";
    case ErrorCode::TrailingBytes: return "TrailingBytes";
    case ErrorCode::Timeout: return "Timeout";
    case ErrorCode::TransportError: return "TransportError";
    case ErrorCode::ProtocolViolation: return "ProtocolViolation";
    case ErrorCode::ProverFailed: return "ProverFailed";
    case ErrorCode::DegreeDeficient: return "DegreeDeficient";
  }
  return "Unknown";
}

namespace ff {

namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

}  // namespace

bool is_prime(std::uint64_t n) noexcept {
  if (n < 2) return false;
  static constexpr std::array<std::uint64_t, 12> kBases{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (auto q : kBases) {
    if (n % q == 0) return n == q;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // These twelve bases are a deterministic witness set below 3.3e24.
  for (auto a : kBases) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

PrimeField::PrimeField(std::uint64_t p) : p_(p) {
  if (p % 2 == 0) throw Error(ErrorCode::EvenModulus, "modulus " + std::to_string(p) + " is even");
  if (p >= (std::uint64_t{1} << 63)) {
    throw Error(ErrorCode::InvalidArgument, "modulus must be below 2^63");
  }
  if (p < 3 || !is_prime(p)) throw Error(ErrorCode::NotPrime, std::to_string(p) + " is not prime");
  const unsigned __int128 pp = static_cast<unsigned __int128>(p - 1) * (p - 1);
  const unsigned __int128 room = ~static_cast<unsigned __int128>(0) - p;
  batch_ = static_cast<std::size_t>(std::min<unsigned __int128>(room / pp, 1u << 20));
}

Scalar PrimeField::from_int(std::int64_t v) const noexcept {
  if (v >= 0) return Scalar{static_cast<std::uint64_t>(v) % p_};
  // -(v+1) avoids overflow on INT64_MIN.
  std::uint64_t m = (static_cast<std::uint64_t>(-(v + 1)) % p_ + 1) % p_;
  return neg(Scalar{m});
}

std::int64_t PrimeField::to_signed(Scalar a) const noexcept {
  if (a.value > p_ / 2) return -static_cast<std::int64_t>(p_ - a.value);
  return static_cast<std::int64_t>(a.value);
}

Scalar PrimeField::inv(Scalar a) const {
  if (a.value == 0) throw Error(ErrorCode::DivisionByZero, "inverse of zero");
  // Extended Euclid on signed 128-bit to stay exact for p < 2^63.
  __int128 t = 0, new_t = 1;
  __int128 r = p_, new_r = a.value;
  while (new_r != 0) {
    __int128 q = r / new_r;
    __int128 tmp = t - q * new_t;
    t = new_t;
    new_t = tmp;
    tmp = r - q * new_r;
    r = new_r;
    new_r = tmp;
  }
  if (t < 0) t += p_;
  return Scalar{static_cast<std::uint64_t>(t)};
}

Scalar PrimeField::pow(Scalar a, std::uint64_t e) const noexcept {
  return Scalar{powmod(a.value, e, p_)};
}

Scalar PrimeField::dot(const Vec& x, const Vec& y) const {
  if (x.size() != y.size()) throw Error(ErrorCode::DimensionMismatch, "dot product of unequal lengths");
  unsigned __int128 acc = 0;
  std::size_t pending = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    acc += static_cast<unsigned __int128>(x[i].value) * y[i].value;
    if (++pending == batch_) {
      acc %= p_;
      pending = 0;
    }
  }
  return Scalar{static_cast<std::uint64_t>(acc % p_)};
}

}  // namespace ff
}  // namespace vlac
