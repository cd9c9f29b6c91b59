#pragma once

#include "vlac/certs/common.hpp"
#include "vlac/la/butterfly.hpp"

namespace vlac::certs {

inline constexpr std::string_view kRankUpperId = "rank-upper";
inline constexpr std::string_view kRankId = "rank";

/// Side of the square butterflies used for an m x n matrix.
std::size_t rank_padded_size(std::size_t m, std::size_t n);

/// Declared error of the upper-bound check for claim r on an m x n matrix:
/// ((r + 2) * log2(n_padded) + 1) / |S|.
Rational rank_upper_error_bound(std::size_t m, std::size_t n, std::size_t r, const SampleSet& S);
/// [r > 0] / |S| + [r < min(m, n)] * rank_upper_error_bound.
Rational rank_error_bound(std::size_t m, std::size_t n, std::size_t r, const SampleSet& S);

/// Verifier: draws preconditioners U, V under "<prefix>.U" / "<prefix>.V",
/// expects a nonzero w under "<prefix>.w" killed by the leading (r+1) block
/// of U A V. Requires r < min(m, n) (else Rejection{RankOutOfRange}).
Rational rank_upper_check(VerifierChannel& ch, const la::BlackboxPtr& A, std::size_t r, const SampleSet& S,
                          std::string_view prefix);
void rank_upper_respond(ProverChannel& ch, const la::BlackboxPtr& A, std::size_t r, const SampleSet& S,
                        std::string_view prefix);

/// One side of the rank preconditioner: a P x P butterfly times a nonzero
/// diagonal (B * D on the left of A, D * B on the right). params holds
/// switch_count(P) switch values, then the P diagonal entries.
la::BlackboxPtr rank_preconditioner(const ff::PrimeField& F, std::size_t P, const Vec& params, bool diagonal_first);
/// Leading k x k block of U * pad(A) * V.
la::BlackboxPtr preconditioned_leading(const la::BlackboxPtr& A, const la::BlackboxPtr& U, const la::BlackboxPtr& V,
                                       std::size_t k);

proto::Digest rank_digest(std::string_view protocol_id, const la::AnyMatrix& A, const SampleSet& S,
                          std::optional<std::size_t> r = std::nullopt);

/// rank(A) <= r for a public r.
ProtocolRun rank_upper_protocol(la::BlackboxPtr A, std::size_t r, const SampleSet& S, const proto::Digest& digest);
Certified<bool> rank_upper_certify(const la::AnyMatrix& A, std::size_t r, const SampleSet& S,
                                   const RunOptions& run = {});

/// rank(A) == r for an r the prover claims: a lower phase (non-singular
/// leading r x r block of U A V, redrawn at most 64 times on a proven
/// singular block) and the upper-bound phase.
ProtocolRun rank_protocol(la::BlackboxPtr A, const SampleSet& S, const proto::Digest& digest,
                          std::uint64_t prover_seed = RunOptions{}.prover_seed,
                          const std::shared_ptr<std::optional<std::size_t>>& result = nullptr);
proto::VerifierFn rank_verifier(la::BlackboxPtr A, SampleSet S,
                                std::shared_ptr<std::optional<std::size_t>> result = nullptr);
/// Prover that claims rank r and then plays honestly where it can.
proto::ProverFn rank_prover_claiming(la::BlackboxPtr A, std::size_t r, SampleSet S, std::uint64_t prover_seed);

Certified<std::size_t> rank_certify(const la::AnyMatrix& A, const SampleSet& S, const RunOptions& run = {});

}  // namespace vlac::certs
