#include "vlac/proto/session.hpp"

#include <exception>
#include <thread>

#include "vlac/error.hpp"

namespace vlac::proto {

namespace {

using Clock = std::chrono::steady_clock;

double seconds(Clock::duration d) { return std::chrono::duration<double>(d).count(); }

ChallengeSource source_for(const SessionConfig& c) {
  return c.mode == Mode::FiatShamir ? ChallengeSource::fiat_shamir(c.protocol_id, c.instance_digest)
                                    : ChallengeSource::interactive(c.seed);
}

Verdict finish(Verdict v, Mode mode) {
  if (v.accepted && mode == Mode::FiatShamir) v.fiat_shamir_heuristic = true;
  return v;
}

}  // namespace

SessionResult run_verifier(Transport& transport, const VerifierFn& verifier, const SessionConfig& config) {
  SessionResult result;
  result.transcript = Transcript(config.protocol_id, config.instance_digest, config.mode, config.field_modulus);
  LiveVerifierChannel ch(transport, source_for(config), result.transcript);
  const auto t0 = Clock::now();
  try {
    result.verdict = verifier(ch);
  } catch (const Rejection& r) {
    result.verdict = Verdict::reject(r.reason(), r.what());
  }
  result.verifier_seconds = seconds(Clock::now() - t0 - ch.waiting());
  result.verifier_ops = ch.ops().value();
  result.verdict = finish(std::move(result.verdict), config.mode);
  return result;
}

double run_prover(Transport& transport, const ProverFn& prover) {
  LiveProverChannel ch(transport);
  const auto t0 = Clock::now();
  try {
    prover(ch);
  } catch (const ProverFailure& e) {
    try {
      ch.send(Tag::Claim, kAbortLabel, {std::string(e.what())});
    } catch (const Error&) {
      // verifier already gone
    }
  }
  return seconds(Clock::now() - t0 - ch.waiting());
}

SessionResult run_session(const ProverFn& prover, const VerifierFn& verifier, const SessionConfig& config) {
  auto [prover_end, verifier_end] = make_memory_pipe(config.timeout);
  double prover_seconds = 0;
  std::exception_ptr prover_error;
  std::thread worker([&, end = prover_end.get()] {
    try {
      prover_seconds = run_prover(*end, prover);
    } catch (...) {
      prover_error = std::current_exception();
    }
    end->close();
  });

  SessionResult result;
  std::exception_ptr verifier_error;
  try {
    result = run_verifier(*verifier_end, verifier, config);
  } catch (...) {
    verifier_error = std::current_exception();
  }
  verifier_end->close();
  worker.join();
  if (verifier_error) std::rethrow_exception(verifier_error);
  result.prover_seconds = prover_seconds;
  return result;
}

Transcript prove_noninteractive(const ProverFn& prover, const SessionConfig& config) {
  Transcript t(config.protocol_id, config.instance_digest, Mode::FiatShamir, config.field_modulus);
  SelfChallengingProverChannel ch(t);
  prover(ch);
  return t;
}

Verdict verify_recorded(const Transcript& transcript, const VerifierFn& verifier, const SessionConfig& expected) {
  if (transcript.mode() != Mode::FiatShamir) {
    return Verdict::reject(RejectReason::ProtocolViolation, "only Fiat-Shamir transcripts can be replayed");
  }
  if (transcript.protocol_id() != expected.protocol_id) {
    return Verdict::reject(RejectReason::ProtocolViolation,
                           "transcript is for protocol '" + transcript.protocol_id() + "'");
  }
  if (transcript.instance_digest() != expected.instance_digest) {
    return Verdict::reject(RejectReason::DigestMismatch, "transcript was made for a different instance");
  }
  if (transcript.field_modulus() != expected.field_modulus) {
    return Verdict::reject(RejectReason::ProtocolViolation, "transcript header names a different field");
  }
  ReplayVerifierChannel ch(transcript);
  Verdict v;
  try {
    v = verifier(ch);
  } catch (const Rejection& r) {
    return Verdict::reject(r.reason(), r.what());
  }
  if (v.accepted && !ch.exhausted()) {
    return Verdict::reject(RejectReason::ProtocolViolation, "transcript has messages after the protocol ends");
  }
  return finish(std::move(v), Mode::FiatShamir);
}

}  // namespace vlac::proto
