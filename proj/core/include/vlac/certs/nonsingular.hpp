#pragma once

#include "vlac/certs/common.hpp"

namespace vlac::certs {

inline constexpr std::string_view kNonsingularId = "nonsingular";

/// Verifier: b <- S^n under "<prefix>.b", expects w under "<prefix>.w" with
/// A w == b. Error 1/|S|.
Rational nonsingular_check(VerifierChannel& ch, const la::Blackbox& A, const SampleSet& S, std::string_view prefix);

/// Honest prover: solves A w = b; ProverFailure when A is singular.
void nonsingular_respond(ProverChannel& ch, const la::Blackbox& A, const SampleSet& S, std::string_view prefix,
                         ff::UniformSource& rng);

/// Digest of an explicit matrix instance; blackbox callers supply their own.
proto::Digest nonsingular_digest(const la::AnyMatrix& A, const SampleSet& S);

ProtocolRun nonsingular_protocol(la::BlackboxPtr A, const SampleSet& S, const proto::Digest& digest,
                                 std::uint64_t prover_seed = RunOptions{}.prover_seed);
proto::VerifierFn nonsingular_verifier(la::BlackboxPtr A, SampleSet S);

Certified<bool> nonsingular_certify(const la::AnyMatrix& A, const SampleSet& S, const RunOptions& run = {});

}  // namespace vlac::certs
