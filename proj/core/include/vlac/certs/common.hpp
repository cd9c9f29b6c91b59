#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "vlac/ff/poly.hpp"
#include "vlac/ff/sample.hpp"
#include "vlac/la/blackbox.hpp"
#include "vlac/numeric.hpp"
#include "vlac/proto/instance.hpp"
#include "vlac/proto/session.hpp"

namespace vlac::certs {

using ff::SampleSet;
using ff::Scalar;
using ff::Vec;
using proto::ProverChannel;
using proto::Verdict;
using proto::VerifierChannel;

/// How an in-process certification is run.
struct RunOptions {
  proto::Mode mode = proto::Mode::FiatShamir;
  /// Interactive challenge seed.
  std::uint64_t seed = 1;
  /// Seed of the honest prover's private randomness.
  std::uint64_t prover_seed = 0x9e3779b97f4a7c15ull;
};

/// Prover and verifier of one protocol instance, ready for any transport.
struct ProtocolRun {
  std::string protocol_id;
  proto::Digest instance_digest{};
  std::uint64_t field_modulus = 0;
  proto::ProverFn prover;
  proto::VerifierFn verifier;

  proto::SessionConfig config(proto::Mode mode, std::uint64_t seed = 1) const {
    proto::SessionConfig c;
    c.protocol_id = protocol_id;
    c.instance_digest = instance_digest;
    c.field_modulus = field_modulus;
    c.mode = mode;
    c.seed = seed;
    return c;
  }
};

/// A certified result: verdict, the value on Accept, and the transcript.
template <class T>
struct Certified {
  Verdict verdict;
  std::optional<T> value;
  proto::Transcript transcript;
};

/// In-process session of run; value is read from *slot after an Accept.
template <class T>
Certified<T> execute(const ProtocolRun& run, const std::shared_ptr<std::optional<T>>& slot,
                     const RunOptions& options) {
  auto result = proto::run_session(run.prover, run.verifier, run.config(options.mode, options.seed));
  Certified<T> out{std::move(result.verdict), std::nullopt, std::move(result.transcript)};
  if (out.verdict.accepted && slot) out.value = *slot;
  return out;
}

Rational ratio(std::uint64_t num, std::uint64_t den);

/// Adds an explicit input matrix (dense or sparse encoding) to a digest.
void hash_matrix(proto::InstanceHasher& h, const la::AnyMatrix& M);

// Verifier-side helpers that charge their cost to the channel's counter.
Scalar eval_counted(VerifierChannel& ch, const ff::PrimeField& F, const ff::Poly& f, Scalar x);
Scalar dot_counted(VerifierChannel& ch, const ff::PrimeField& F, const Vec& a, const Vec& b);
Vec apply_counted(VerifierChannel& ch, const la::Blackbox& M, const Vec& x);
bool is_zero_vector(const Vec& x);

/// Verifier channel with no prover: challenges come from a source and
/// receiving anything is a protocol violation. Used to check explicit
/// claims offline.
class OfflineVerifierChannel final : public VerifierChannel {
 public:
  explicit OfflineVerifierChannel(proto::ChallengeSource& source) : source_(source) {}

  proto::Message receive(proto::Tag tag, std::string_view label) override;
  proto::Message receive_any(proto::Tag tag) override;
  Vec challenge(std::string_view label, const SampleSet& set, std::size_t count, bool nonzero) override;
  std::uint64_t challenge_prime(std::string_view label, unsigned bits) override;
  proto::Mode mode() const noexcept override { return source_.mode(); }

 private:
  proto::ChallengeSource& source_;
};

/// Runs an offline verifier body, turning a Rejection into a Reject verdict.
template <class Body>
Verdict run_offline(proto::ChallengeSource& src, Body&& body) {
  OfflineVerifierChannel ch(src);
  Verdict v;
  try {
    v = body(ch);
  } catch (const proto::Rejection& r) {
    return Verdict::reject(r.reason(), r.what());
  }
  if (v.accepted && src.mode() == proto::Mode::FiatShamir) v.fiat_shamir_heuristic = true;
  return v;
}

}  // namespace vlac::certs
