#pragma once

#include <chrono>
#include <string_view>

#include "vlac/ff/sample.hpp"
#include "vlac/la/dense.hpp"
#include "vlac/proto/challenge.hpp"
#include "vlac/proto/transcript.hpp"
#include "vlac/proto/transport.hpp"
#include "vlac/proto/verdict.hpp"

namespace vlac::proto {

/// Label of the message a prover sends instead of its next move when it
/// cannot continue.
inline constexpr std::string_view kAbortLabel = "abort";
/// Label of the opening Claim naming the protocol.
inline constexpr std::string_view kProtocolLabel = "protocol";

/// Verifier's view of a session. Protocol code is written once against
/// this interface and runs live, over TCP, and in transcript replay.
class VerifierChannel {
 public:
  virtual ~VerifierChannel() = default;

  /// Next prover message. Throws Rejection{ProtocolViolation} if it is not
  /// a prover message with this tag and label, Rejection{ProverFailed} if
  /// the prover aborted.
  virtual Message receive(Tag tag, std::string_view label) = 0;
  /// Next prover message with the given tag, any label.
  virtual Message receive_any(Tag tag) = 0;
  /// Draw and announce a challenge vector.
  virtual ff::Vec challenge(std::string_view label, const ff::SampleSet& set, std::size_t count,
                            bool nonzero = false) = 0;
  virtual std::uint64_t challenge_prime(std::string_view label, unsigned bits) = 0;

  virtual Mode mode() const noexcept = 0;
  la::OpCounter& ops() noexcept { return ops_; }

 private:
  la::OpCounter ops_;
};

/// Prover's view of a session.
class ProverChannel {
 public:
  virtual ~ProverChannel() = default;

  virtual void send(Message m) = 0;
  /// The verifier's next challenge; set/count/nonzero must match what the
  /// verifier draws (a self-challenging prover computes it locally).
  virtual ff::Vec challenge(std::string_view label, const ff::SampleSet& set, std::size_t count,
                            bool nonzero = false) = 0;
  virtual std::uint64_t challenge_prime(std::string_view label, unsigned bits) = 0;

  void send(Tag tag, std::string_view label, std::vector<Item> items) {
    send(Message{Role::Prover, tag, std::string(label), std::move(items)});
  }
};

/// Live verifier: draws from a ChallengeSource, records every message.
class LiveVerifierChannel final : public VerifierChannel {
 public:
  LiveVerifierChannel(Transport& transport, ChallengeSource source, Transcript& transcript);

  Message receive(Tag tag, std::string_view label) override;
  Message receive_any(Tag tag) override;
  ff::Vec challenge(std::string_view label, const ff::SampleSet& set, std::size_t count,
                    bool nonzero) override;
  std::uint64_t challenge_prime(std::string_view label, unsigned bits) override;
  Mode mode() const noexcept override { return source_.mode(); }

  /// Time spent blocked waiting for the prover.
  std::chrono::nanoseconds waiting() const noexcept { return waiting_; }

 private:
  void record_challenge(Message m);

  Transport& transport_;
  ChallengeSource source_;
  Transcript& transcript_;
  std::chrono::nanoseconds waiting_{0};
};

/// Replays a recorded Fiat-Shamir transcript, recomputing every challenge.
class ReplayVerifierChannel final : public VerifierChannel {
 public:
  explicit ReplayVerifierChannel(const Transcript& transcript);

  Message receive(Tag tag, std::string_view label) override;
  Message receive_any(Tag tag) override;
  ff::Vec challenge(std::string_view label, const ff::SampleSet& set, std::size_t count,
                    bool nonzero) override;
  std::uint64_t challenge_prime(std::string_view label, unsigned bits) override;
  Mode mode() const noexcept override { return Mode::FiatShamir; }

  bool exhausted() const noexcept { return cursor_ == transcript_.messages().size(); }

 private:
  const Message& next_recorded(Role role, Tag tag);

  const Transcript& transcript_;
  ChallengeSource source_;
  std::size_t cursor_ = 0;
};

/// Live prover over a transport.
class LiveProverChannel final : public ProverChannel {
 public:
  explicit LiveProverChannel(Transport& transport) : transport_(transport) {}

  using ProverChannel::send;
  void send(Message m) override;
  ff::Vec challenge(std::string_view label, const ff::SampleSet& set, std::size_t count,
                    bool nonzero) override;
  std::uint64_t challenge_prime(std::string_view label, unsigned bits) override;

  std::chrono::nanoseconds waiting() const noexcept { return waiting_; }

 private:
  Message next_challenge(std::string_view label);

  Transport& transport_;
  std::chrono::nanoseconds waiting_{0};
};

/// Non-interactive prover: derives its own Fiat-Shamir challenges and
/// writes the transcript a verifier will later replay.
class SelfChallengingProverChannel final : public ProverChannel {
 public:
  explicit SelfChallengingProverChannel(Transcript& transcript);

  using ProverChannel::send;
  void send(Message m) override;
  ff::Vec challenge(std::string_view label, const ff::SampleSet& set, std::size_t count,
                    bool nonzero) override;
  std::uint64_t challenge_prime(std::string_view label, unsigned bits) override;

 private:
  void record(Message m);

  Transcript& transcript_;
  ChallengeSource source_;
};

/// Prover message announcing the protocol id; first message of every run.
void send_protocol(ProverChannel& ch, std::string_view protocol_id);
/// Receives the announcement and rejects on a different id.
void expect_protocol(VerifierChannel& ch, std::string_view protocol_id);

}  // namespace vlac::proto
