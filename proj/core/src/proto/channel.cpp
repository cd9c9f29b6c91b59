#include "vlac/proto/channel.hpp"

#include <string>

#include "vlac/error.hpp"

namespace vlac::proto {

namespace {

using Clock = std::chrono::steady_clock;

void check_prover_message(const Message& m, Tag tag) {
  if (m.role != Role::Prover) {
    throw Rejection(RejectReason::ProtocolViolation, "expected a prover message, got '" + m.label + "'");
  }
  if (m.tag == Tag::Claim && m.label == kAbortLabel) {
    std::string why = m.items.size() == 1 && std::holds_alternative<std::string>(m.items[0])
                          ? std::get<std::string>(m.items[0])
                          : std::string("prover aborted");
    throw Rejection(RejectReason::ProverFailed, why);
  }
  if (m.tag != tag) {
    throw Rejection(RejectReason::ProtocolViolation, "expected " + std::string(to_string(tag)) + ", got " +
                                                          std::string(to_string(m.tag)) + " '" + m.label + "'");
  }
}

void check_label(const Message& m, std::string_view label) {
  if (m.label != label) {
    throw Rejection(RejectReason::ProtocolViolation,
                    "expected message '" + std::string(label) + "', got '" + m.label + "'");
  }
}

Message challenge_message(std::string_view label, Item payload) {
  return Message{Role::Verifier, Tag::Challenge, std::string(label), {std::move(payload)}};
}

}  // namespace

// ---- live verifier ----------------------------------------------------------

LiveVerifierChannel::LiveVerifierChannel(Transport& transport, ChallengeSource source, Transcript& transcript)
    : transport_(transport), source_(std::move(source)), transcript_(transcript) {}

Message LiveVerifierChannel::receive_any(Tag tag) {
  const auto t0 = Clock::now();
  Message m = transport_.receive();
  waiting_ += Clock::now() - t0;
  check_prover_message(m, tag);
  source_.absorb(m);
  transcript_.append(m);
  return m;
}

Message LiveVerifierChannel::receive(Tag tag, std::string_view label) {
  Message m = receive_any(tag);
  check_label(m, label);
  return m;
}

void LiveVerifierChannel::record_challenge(Message m) {
  source_.absorb(m);
  transcript_.append(m);
  transport_.send(m);
}

ff::Vec LiveVerifierChannel::challenge(std::string_view label, const ff::SampleSet& set, std::size_t count,
                                       bool nonzero) {
  ff::Vec v = source_.draw(label, set, count, nonzero);
  record_challenge(challenge_message(label, v));
  return v;
}

std::uint64_t LiveVerifierChannel::challenge_prime(std::string_view label, unsigned bits) {
  const std::uint64_t p = source_.draw_prime(label, bits);
  record_challenge(challenge_message(label, p));
  return p;
}

// ---- replay -----------------------------------------------------------------

ReplayVerifierChannel::ReplayVerifierChannel(const Transcript& transcript)
    : transcript_(transcript),
      source_(ChallengeSource::fiat_shamir(transcript.protocol_id(), transcript.instance_digest())) {}

const Message& ReplayVerifierChannel::next_recorded(Role role, Tag tag) {
  const auto& msgs = transcript_.messages();
  if (cursor_ == msgs.size()) {
    throw Rejection(RejectReason::ProtocolViolation, "transcript ends before the protocol does");
  }
  const Message& m = msgs[cursor_++];
  if (role == Role::Prover) {
    check_prover_message(m, tag);
  } else if (m.role != Role::Verifier || m.tag != Tag::Challenge) {
    throw Rejection(RejectReason::ProtocolViolation, "expected a recorded challenge, got '" + m.label + "'");
  }
  return m;
}

Message ReplayVerifierChannel::receive_any(Tag tag) {
  const Message& m = next_recorded(Role::Prover, tag);
  source_.absorb(m);
  return m;
}

Message ReplayVerifierChannel::receive(Tag tag, std::string_view label) {
  Message m = receive_any(tag);
  check_label(m, label);
  return m;
}

ff::Vec ReplayVerifierChannel::challenge(std::string_view label, const ff::SampleSet& set, std::size_t count,
                                         bool nonzero) {
  const Message& m = next_recorded(Role::Verifier, Tag::Challenge);
  ff::Vec expected = source_.draw(label, set, count, nonzero);
  const Message want = challenge_message(label, expected);
  if (!(m == want)) {
    throw Rejection(RejectReason::ChallengeMismatch,
                    "recorded challenge '" + m.label + "' differs from the hash chain");
  }
  source_.absorb(m);
  return expected;
}

std::uint64_t ReplayVerifierChannel::challenge_prime(std::string_view label, unsigned bits) {
  const Message& m = next_recorded(Role::Verifier, Tag::Challenge);
  const std::uint64_t expected = source_.draw_prime(label, bits);
  if (!(m == challenge_message(label, expected))) {
    throw Rejection(RejectReason::ChallengeMismatch,
                    "recorded prime '" + m.label + "' differs from the hash chain");
  }
  source_.absorb(m);
  return expected;
}

// ---- provers ----------------------------------------------------------------

void LiveProverChannel::send(Message m) {
  m.role = Role::Prover;
  transport_.send(m);
}

Message LiveProverChannel::next_challenge(std::string_view label) {
  const auto t0 = Clock::now();
  Message m = transport_.receive();
  waiting_ += Clock::now() - t0;
  if (m.role != Role::Verifier || m.tag != Tag::Challenge || m.label != label || m.items.size() != 1) {
    throw Error(ErrorCode::ProtocolViolation, "expected challenge '" + std::string(label) + "', got '" + m.label + "'");
  }
  return m;
}

ff::Vec LiveProverChannel::challenge(std::string_view label, const ff::SampleSet& set, std::size_t count,
                                     bool) {
  Message m = next_challenge(label);
  const auto* v = std::get_if<ff::Vec>(&m.items[0]);
  if (v == nullptr || v->size() != count) {
    throw Error(ErrorCode::ProtocolViolation, "challenge '" + std::string(label) + "' has the wrong shape");
  }
  for (auto s : *v) {
    if (!set.contains(s)) throw Error(ErrorCode::ProtocolViolation, "challenge outside the sample set");
  }
  return *v;
}

std::uint64_t LiveProverChannel::challenge_prime(std::string_view label, unsigned) {
  Message m = next_challenge(label);
  const auto* p = std::get_if<std::uint64_t>(&m.items[0]);
  if (p == nullptr || !ff::is_prime(*p) || *p < 3) {
    throw Error(ErrorCode::ProtocolViolation, "challenge '" + std::string(label) + "' is not an odd prime");
  }
  return *p;
}

SelfChallengingProverChannel::SelfChallengingProverChannel(Transcript& transcript)
    : transcript_(transcript),
      source_(ChallengeSource::fiat_shamir(transcript.protocol_id(), transcript.instance_digest())) {}

void SelfChallengingProverChannel::record(Message m) {
  source_.absorb(m);
  transcript_.append(std::move(m));
}

void SelfChallengingProverChannel::send(Message m) {
  m.role = Role::Prover;
  record(std::move(m));
}

ff::Vec SelfChallengingProverChannel::challenge(std::string_view label, const ff::SampleSet& set,
                                                std::size_t count, bool nonzero) {
  ff::Vec v = source_.draw(label, set, count, nonzero);
  record(challenge_message(label, v));
  return v;
}

std::uint64_t SelfChallengingProverChannel::challenge_prime(std::string_view label, unsigned bits) {
  const std::uint64_t p = source_.draw_prime(label, bits);
  record(challenge_message(label, p));
  return p;
}

void send_protocol(ProverChannel& ch, std::string_view protocol_id) {
  ch.send(Tag::Claim, kProtocolLabel, {std::string(protocol_id)});
}

void expect_protocol(VerifierChannel& ch, std::string_view protocol_id) {
  Message m = ch.receive(Tag::Claim, kProtocolLabel);
  expect_items(m, 1);
  const std::string got = item_text(m, 0);
  check(got == protocol_id, RejectReason::ProtocolViolation,
        "prover runs protocol '" + got + "', verifier expects '" + std::string(protocol_id) + "'");
}

}  // namespace vlac::proto
