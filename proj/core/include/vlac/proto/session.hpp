#pragma once

#include <chrono>
#include <functional>
#include <string>

#include "vlac/error.hpp"
#include "vlac/proto/channel.hpp"

namespace vlac::proto {

using ProverFn = std::function<void(ProverChannel&)>;
/// Returns Accept with the declared error bound, or throws Rejection.
using VerifierFn = std::function<Verdict(VerifierChannel&)>;

struct SessionConfig {
  std::string protocol_id;
  Digest instance_digest{};
  std::uint64_t field_modulus = 0;
  Mode mode = Mode::Interactive;
  /// Seed of the interactive challenge RNG.
  std::uint64_t seed = 0;
  std::chrono::milliseconds timeout{std::chrono::seconds(60)};
};

struct SessionResult {
  Verdict verdict;
  Transcript transcript;
  /// Compute time on each side, excluding time blocked on the other.
  double prover_seconds = 0;
  double verifier_seconds = 0;
  std::uint64_t verifier_ops = 0;
};

/// Raised by prover code that cannot produce its next message (singular
/// input, exhausted retries). The session reports it as Reject{ProverFailed}.
class ProverFailure : public Error {
 public:
  explicit ProverFailure(const std::string& what, ErrorCode code = ErrorCode::ProverFailed)
      : Error(code, what) {}
};

/// Runs prover and verifier against each other over an in-process pipe.
/// Throws Error{TransportError} / Error{Timeout} when the exchange breaks
/// off without a verdict.
SessionResult run_session(const ProverFn& prover, const VerifierFn& verifier, const SessionConfig& config);

/// Verifier half of a session over any transport.
SessionResult run_verifier(Transport& transport, const VerifierFn& verifier, const SessionConfig& config);

/// Prover half of a session over any transport. A ProverFailure is sent to
/// the verifier as an abort message. Returns the prover's compute seconds.
double run_prover(Transport& transport, const ProverFn& prover);

/// Non-interactive run: the prover derives every challenge by Fiat-Shamir.
/// ProverFailure propagates to the caller.
Transcript prove_noninteractive(const ProverFn& prover, const SessionConfig& config);

/// Replays a recorded Fiat-Shamir transcript against the verifier. The
/// header must match expected (protocol id, field modulus, instance digest);
/// a foreign digest rejects with DigestMismatch, a challenge that is not the
/// hash-chain value with ChallengeMismatch.
Verdict verify_recorded(const Transcript& transcript, const VerifierFn& verifier, const SessionConfig& expected);

}  // namespace vlac::proto
