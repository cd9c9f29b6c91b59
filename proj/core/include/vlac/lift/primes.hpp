#pragma once

#include <string_view>

#include "vlac/numeric.hpp"
#include "vlac/proto/challenge.hpp"

namespace vlac::lift {

/// Uniform prime in [2^(bits-1), 2^bits), 16 <= bits <= 62: odd candidates
/// by rejection, Miller-Rabin with a deterministic base set.
std::uint64_t random_prime(unsigned bits, proto::ChallengeSource& src, std::string_view label);

/// Lower bound on the number of primes in [2^(bits-1), 2^bits) from the
/// Rosser-Schoenfeld estimates
///   x/ln x (1 + 1/(2 ln x)) < pi(x) < x/ln x (1 + 3/(2 ln x)),
/// with ln 2 bracketed by 0.693147 < ln 2 < 0.693148 so the value is exact.
BigInt prime_count_lower_bound(unsigned bits);

/// Primes >= 2^(bits-1) that can divide a nonzero integer of magnitude
/// at most 2 * bound: ceil(ceil(log2(2 * bound)) / (bits - 1)); 0 for bound 0.
std::uint64_t bad_prime_bound(const BigInt& bound, unsigned bits);

/// bad_prime_bound / prime_count_lower_bound.
Rational prime_error_bound(const BigInt& bound, unsigned bits);

/// ceil(log2(x)) for x >= 1.
std::uint64_t ceil_log2(const BigInt& x);

}  // namespace vlac::lift
