#pragma once

#include "vlac/certs/det.hpp"
#include "vlac/lift/bigint.hpp"
#include "vlac/lift/primes.hpp"

namespace vlac::lift {

using certs::Certified;
using certs::ProtocolRun;
using certs::RunOptions;

inline constexpr std::string_view kIntDetId = "intdet";
inline constexpr unsigned kDefaultPrimeBits = 62;

/// det A over Z by determinants modulo word primes and Chinese remaindering
/// (prover side).
BigInt intdet_prove(const IntMatrix& A);

/// Declared error: prime_error_bound(hadamard bound, bits) plus the field
/// determinant error over GF(p) with S = [0, p).
Rational intdet_error_bound(const IntMatrix& A, unsigned bits, std::uint64_t p, long deg_h);

proto::Digest intdet_digest(const IntMatrix& A, unsigned bits);

/// Prover commits r under "intdet.r" (|r| <= Hadamard bound), the verifier
/// draws p under "intdet.p", and a determinant certificate over GF(p)
/// (prefix "intdet.det") must agree with r mod p.
proto::VerifierFn intdet_verifier(IntMatrix A, unsigned bits,
                                  std::shared_ptr<std::optional<BigInt>> result = nullptr);
/// Prover that commits r and then certifies det(A mod p) honestly.
proto::ProverFn intdet_prover_committing(IntMatrix A, BigInt r, unsigned bits, std::uint64_t prover_seed);

ProtocolRun intdet_protocol(const IntMatrix& A, unsigned bits = kDefaultPrimeBits,
                            std::uint64_t prover_seed = RunOptions{}.prover_seed,
                            const std::shared_ptr<std::optional<BigInt>>& result = nullptr);

Certified<BigInt> intdet_certify(const IntMatrix& A, unsigned bits = kDefaultPrimeBits, const RunOptions& run = {});

}  // namespace vlac::lift
