#include "vlac/certs/common.hpp"

#include <algorithm>

namespace vlac::certs {

using proto::Message;
using proto::RejectReason;
using proto::Rejection;

Rational ratio(std::uint64_t num, std::uint64_t den) { return Rational(BigInt(num), BigInt(den)); }

void hash_matrix(proto::InstanceHasher& h, const la::AnyMatrix& M) {
  std::visit([&](const auto& m) { h.matrix(m); }, M);
}

Scalar eval_counted(VerifierChannel& ch, const ff::PrimeField& F, const ff::Poly& f, Scalar x) {
  ch.ops().add(2 * f.coeffs().size());
  return ff::eval(F, f, x);
}

Scalar dot_counted(VerifierChannel& ch, const ff::PrimeField& F, const Vec& a, const Vec& b) {
  ch.ops().add(2 * a.size());
  return F.dot(a, b);
}

Vec apply_counted(VerifierChannel& ch, const la::Blackbox& M, const Vec& x) {
  return la::apply_counted(M, x, ch.ops());
}

bool is_zero_vector(const Vec& x) {
  return std::all_of(x.begin(), x.end(), [](Scalar a) { return a.is_zero(); });
}

Message OfflineVerifierChannel::receive(proto::Tag, std::string_view label) {
  throw Rejection(RejectReason::ProtocolViolation, "no prover to receive '" + std::string(label) + "' from");
}

Message OfflineVerifierChannel::receive_any(proto::Tag) {
  throw Rejection(RejectReason::ProtocolViolation, "no prover in an offline check");
}

Vec OfflineVerifierChannel::challenge(std::string_view label, const SampleSet& set, std::size_t count,
                                      bool nonzero) {
  Vec v = source_.draw(label, set, count, nonzero);
  source_.absorb(Message{proto::Role::Verifier, proto::Tag::Challenge, std::string(label), {v}});
  return v;
}

std::uint64_t OfflineVerifierChannel::challenge_prime(std::string_view label, unsigned bits) {
  const std::uint64_t p = source_.draw_prime(label, bits);
  source_.absorb(Message{proto::Role::Verifier, proto::Tag::Challenge, std::string(label), {p}});
  return p;
}

}  // namespace vlac::certs
