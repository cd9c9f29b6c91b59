#pragma once

#include "vlac/certs/common.hpp"

namespace vlac::certs {

inline constexpr std::string_view kMinPolyId = "minpoly";

/// Declared error for claimed H, h on an n x n operator:
///   (deg H + max(deg h, 0)) / |S|   for the Bezout check at r0
/// + (deg H + n - 1) / |S|           for the rational identity at r1.
/// With deg H = n the second term is (2 deg H - 1) / |S|.
Rational minpoly_error_bound(std::size_t n, long deg_H, long deg_h, const SampleSet& S);

struct MinPolyOutcome {
  ff::Poly H;
  Rational error_bound;
};

/// Verifier side for f_u^{A,v}. Messages under prefix:
///   Commit   .Hh       H (monic), h with deg h < deg H
///   Commit   .bezout   phi, psi
///   Challenge .r0      then phi(r0) H(r0) + psi(r0) h(r0) == 1
///   Challenge .r1      then Response .w with (r1 I - A) w == v and
///                      (u^T w) H(r1) == h(r1), or Response .eigen with a
///                      nonzero z, (r1 I - A) z == 0, and a fresh r1 (64
///                      draws at most).
/// required_degree pins deg H (the determinant needs deg H = n).
MinPolyOutcome minpoly_check(VerifierChannel& ch, const la::BlackboxPtr& A, const Vec& u, const Vec& v,
                             const SampleSet& S, std::string_view prefix,
                             std::optional<std::size_t> required_degree = std::nullopt);

/// The honest certificate (H, h, phi, psi) for a sequence-derived H.
struct MinPolyCertificate {
  ff::Poly H, h, phi, psi;
};
MinPolyCertificate minpoly_certificate(const la::Blackbox& A, const Vec& u, const Vec& v);

/// Honest prover side. cert may be supplied when already computed.
void minpoly_respond(ProverChannel& ch, const la::BlackboxPtr& A, const Vec& u, const Vec& v, const SampleSet& S,
                     std::string_view prefix, ff::UniformSource& rng,
                     std::optional<MinPolyCertificate> cert = std::nullopt);

/// Prover side after a (possibly false) certificate has been chosen: sends
/// it, then answers r1 as an honest prover would for the true operator.
void minpoly_respond_with(ProverChannel& ch, const la::BlackboxPtr& A, const Vec& v, const SampleSet& S,
                          std::string_view prefix, ff::UniformSource& rng, const MinPolyCertificate& cert);

proto::Digest minpoly_digest(const la::AnyMatrix& A, const SampleSet& S);

/// Standalone protocol: the verifier draws u, v from S, then runs the check.
ProtocolRun minpoly_protocol(la::BlackboxPtr A, const SampleSet& S, const proto::Digest& digest,
                             std::uint64_t prover_seed = RunOptions{}.prover_seed,
                             const std::shared_ptr<std::optional<ff::Poly>>& result = nullptr);
proto::VerifierFn minpoly_verifier(la::BlackboxPtr A, SampleSet S,
                                   std::shared_ptr<std::optional<ff::Poly>> result = nullptr);

/// Certified f_u^{A,v} for verifier-drawn u, v.
Certified<ff::Poly> minpoly_certify(const la::AnyMatrix& A, const SampleSet& S, const RunOptions& run = {});

}  // namespace vlac::certs
