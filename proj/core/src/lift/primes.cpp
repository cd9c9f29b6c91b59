#include "vlac/lift/primes.hpp"

#include "vlac/error.hpp"

namespace vlac::lift {

namespace {

const Rational kLn2Low(BigInt(693147), BigInt(1000000));
const Rational kLn2High(BigInt(693148), BigInt(1000000));

}  // namespace

std::uint64_t random_prime(unsigned bits, proto::ChallengeSource& src, std::string_view label) {
  return src.draw_prime(label, bits);
}

BigInt prime_count_lower_bound(unsigned bits) {
  if (bits < 16 || bits > 62) throw Error(ErrorCode::InvalidArgument, "prime size must be 16..62 bits");
  const Rational hi_x(BigInt(1) << bits);
  const Rational lo_x(BigInt(1) << (bits - 1));
  // pi(2^b) from below: ln x <= b * ln2_high.
  const Rational ln_hi = Rational(bits) * kLn2High;
  const Rational pi_hi = hi_x / ln_hi * (1 + 1 / (2 * ln_hi));
  // pi(2^(b-1)) from above: ln x >= (b-1) * ln2_low.
  const Rational ln_lo = Rational(bits - 1) * kLn2Low;
  const Rational pi_lo = lo_x / ln_lo * (1 + 3 / (2 * ln_lo));
  const Rational diff = pi_hi - pi_lo;
  return numerator(diff) / denominator(diff);
}

std::uint64_t ceil_log2(const BigInt& x) {
  if (x < 1) throw Error(ErrorCode::InvalidArgument, "ceil_log2 of a non-positive value");
  if (x == 1) return 0;
  return boost::multiprecision::msb(BigInt(x - 1)) + 1;
}

std::uint64_t bad_prime_bound(const BigInt& bound, unsigned bits) {
  if (bound == 0) return 0;
  const std::uint64_t l = ceil_log2(2 * bound);
  return (l + bits - 2) / (bits - 1);
}

Rational prime_error_bound(const BigInt& bound, unsigned bits) {
  return Rational(BigInt(bad_prime_bound(bound, bits)), prime_count_lower_bound(bits));
}

}  // namespace vlac::lift
