#pragma once

#include "vlac/certs/minpoly.hpp"

namespace vlac::certs {

inline constexpr std::string_view kDetId = "det";

/// Fresh (D, u, v) draws the honest prover makes before giving up with
/// Error{DegreeDeficient}.
inline constexpr int kDetProverTries = 64;

/// Declared error for an n x n determinant whose certificate has numerator
/// degree deg_h: the minimal polynomial bound with deg H = n.
Rational det_error_bound(std::size_t n, long deg_h, const SampleSet& S);

struct DetOutcome {
  Scalar det;
  Rational error_bound;
};

/// Verifier side: receives D, u, v under "<prefix>.Duv", certifies
/// H = f_u^{DA,v} with deg H = n, and returns (-1)^n H(0) / prod(D).
DetOutcome det_check(VerifierChannel& ch, const la::BlackboxPtr& A, const SampleSet& S, std::string_view prefix);

/// Honest prover side. Throws ProverFailure{DegreeDeficient} when no draw
/// gives deg f_u^{DA,v} = n (A has rank below n - 1, or bad luck).
void det_respond(ProverChannel& ch, const la::BlackboxPtr& A, const SampleSet& S, std::string_view prefix,
                 ff::UniformSource& rng);

proto::Digest det_digest(const la::AnyMatrix& A, const SampleSet& S);

ProtocolRun det_protocol(la::BlackboxPtr A, const SampleSet& S, const proto::Digest& digest,
                         std::uint64_t prover_seed = RunOptions{}.prover_seed,
                         const std::shared_ptr<std::optional<Scalar>>& result = nullptr);
proto::VerifierFn det_verifier(la::BlackboxPtr A, SampleSet S, std::shared_ptr<std::optional<Scalar>> result = nullptr);

Certified<Scalar> det_certify(const la::AnyMatrix& A, const SampleSet& S, const RunOptions& run = {});

}  // namespace vlac::certs
