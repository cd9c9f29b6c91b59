#pragma once

#include <string_view>

#include "vlac/certs/common.hpp"
#include "vlac/la/blackbox.hpp"

namespace vlac::certs {

enum class FreivaldsVariant {
  /// One r from S, v = (1, r, ..., r^(n-1)); error (n-1)/|S|.
  Geometric,
  /// rounds independent 0/1 vectors; error 2^-rounds.
  ZeroOne,
};

struct FreivaldsOptions {
  FreivaldsVariant variant = FreivaldsVariant::Geometric;
  unsigned rounds = 1;  // ZeroOne only
};

/// Declared error of one check of an (m x n) product claim.
Rational freivalds_error_bound(std::size_t n, const SampleSet& S, const FreivaldsOptions& opts);

/// Verifier side of one Freivalds check of A * B == C: draws its challenge
/// under label, computes A(Bv) right to left and compares with Cv. Throws
/// Rejection{CheckFailed}; returns the declared error.
Rational freivalds_check(VerifierChannel& ch, const la::Blackbox& A, const la::Blackbox& B, const la::Blackbox& C,
                         const SampleSet& S, const FreivaldsOptions& opts, std::string_view label);

/// Prover side of the same check: consumes the challenge(s) it mirrors.
void freivalds_respond(ProverChannel& ch, std::size_t n, const SampleSet& S, const FreivaldsOptions& opts,
                       std::string_view label);

/// The challenge vectors a check draws, for tests and cheating provers.
std::vector<Vec> freivalds_vectors(const Vec& challenge, std::size_t n, const SampleSet& S,
                                   const FreivaldsOptions& opts);

// ---- matrix multiplication ---------------------------------------------------

inline constexpr std::string_view kMatMulId = "matmul";

la::DenseMatrix matmul_prove(const la::AnyMatrix& A, const la::AnyMatrix& B);

proto::Digest matmul_digest(const la::AnyMatrix& A, const la::AnyMatrix& B, const SampleSet& S,
                            const FreivaldsOptions& opts);

/// Prover commits C = A * B; verifier runs one Freivalds check.
ProtocolRun matmul_protocol(const la::AnyMatrix& A, const la::AnyMatrix& B, const SampleSet& S,
                            const FreivaldsOptions& opts,
                            const std::shared_ptr<std::optional<la::DenseMatrix>>& result = nullptr);

/// Same verifier with a caller-supplied prover (cheating provers, tests).
proto::VerifierFn matmul_verifier(la::AnyMatrix A, la::AnyMatrix B, SampleSet S, FreivaldsOptions opts,
                                  std::shared_ptr<std::optional<la::DenseMatrix>> result = nullptr);
/// Prover that commits the given C and then plays along.
proto::ProverFn matmul_prover_committing(la::DenseMatrix C, SampleSet S, FreivaldsOptions opts);

Certified<la::DenseMatrix> matmul_certify(const la::AnyMatrix& A, const la::AnyMatrix& B, const SampleSet& S,
                                          const FreivaldsOptions& opts = {}, const RunOptions& run = {});

/// Offline check of an explicit claim A * B == C with challenges from src.
/// Dimension mismatch rejects with ProtocolViolation.
Verdict freivalds_verify(const la::AnyMatrix& A, const la::AnyMatrix& B, const la::AnyMatrix& C,
                         proto::ChallengeSource& src, const SampleSet& S, const FreivaldsOptions& opts = {});

// ---- inverse -------------------------------------------------------------------

inline constexpr std::string_view kInverseId = "inverse";

proto::Digest inverse_digest(const la::AnyMatrix& A, const SampleSet& S, const FreivaldsOptions& opts);

/// Prover commits W = A^-1 (aborts when A is singular); verifier checks
/// A * W == I with one Freivalds check.
ProtocolRun inverse_protocol(const la::AnyMatrix& A, const SampleSet& S, const FreivaldsOptions& opts,
                             const std::shared_ptr<std::optional<la::DenseMatrix>>& result = nullptr);

Certified<la::DenseMatrix> inverse_prove_and_certify(const la::AnyMatrix& A, const SampleSet& S,
                                                     const FreivaldsOptions& opts = {}, const RunOptions& run = {});

/// Offline check of a claimed inverse W. Throws Error{DimensionMismatch}
/// unless A and W are square of the same size.
Verdict inverse_certify(const la::AnyMatrix& A, const la::DenseMatrix& W, proto::ChallengeSource& src,
                        const SampleSet& S, const FreivaldsOptions& opts = {});

}  // namespace vlac::certs
