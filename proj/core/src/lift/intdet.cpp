#include "vlac/lift/intdet.hpp"

#include "vlac/error.hpp"
#include "vlac/la/elimination.hpp"

namespace vlac::lift {

using proto::RejectReason;
using proto::Tag;

namespace {

void require_square(const IntMatrix& A) {
  if (!A.square() || A.rows() == 0) throw Error(ErrorCode::NotSquare, "integer determinant needs square n >= 1");
}

// Primes just below 2^62, largest first.
std::uint64_t next_prime_below(std::uint64_t x) {
  for (x -= (x % 2 == 0) ? 1 : 2; !ff::is_prime(x); x -= 2) {
  }
  return x;
}

}  // namespace

BigInt intdet_prove(const IntMatrix& A) {
  require_square(A);
  const BigInt bound = hadamard_bound(A);
  // Residue x modulo M with M > 2 * bound determines det in (-M/2, M/2].
  BigInt x = 0, M = 1;
  std::uint64_t p = std::uint64_t{1} << 62;
  while (M <= 2 * bound) {
    p = next_prime_below(p);
    const ff::PrimeField F(p);
    const std::uint64_t d = la::determinant(reduce(A, F)).value;
    // x' = x + M * ((d - x) * M^-1 mod p)
    const std::uint64_t xm = reduce(x, F).value;
    const std::uint64_t minv = F.inv(reduce(M, F)).value;
    const std::uint64_t t = F.mul(F.sub(ff::Scalar(d), ff::Scalar(xm)), ff::Scalar(minv)).value;
    x += M * t;
    M *= p;
  }
  if (2 * x > M) x -= M;
  return x;
}

Rational intdet_error_bound(const IntMatrix& A, unsigned bits, std::uint64_t p, long deg_h) {
  const ff::PrimeField F(p);
  return prime_error_bound(hadamard_bound(A), bits) + certs::det_error_bound(A.rows(), deg_h, ff::SampleSet::full(F));
}

proto::Digest intdet_digest(const IntMatrix& A, unsigned bits) {
  proto::InstanceHasher h(kIntDetId);
  h.u64(bits).u64(A.rows()).u64(A.cols());
  for (const auto& x : A.data()) h.item(x);
  return h.finish();
}

proto::VerifierFn intdet_verifier(IntMatrix A, unsigned bits, std::shared_ptr<std::optional<BigInt>> result) {
  require_square(A);
  const BigInt bound = hadamard_bound(A);
  return [A = std::move(A), bits, bound, result](certs::VerifierChannel& ch) {
    proto::expect_protocol(ch, kIntDetId);
    const auto m = ch.receive(Tag::Commit, "intdet.r");
    proto::expect_items(m, 1);
    const BigInt r = proto::item_bigint(m, 0);
    proto::check(abs(r) <= bound, RejectReason::CommitmentOutOfBounds, "committed determinant exceeds the Hadamard bound");
    const std::uint64_t p = ch.challenge_prime("intdet.p", bits);
    proto::check(ff::is_prime(p) && p >> (bits - 1) == 1, RejectReason::ProtocolViolation, "challenge is not a prime of the agreed size");
    const ff::PrimeField F(p);
    const ff::SampleSet S = ff::SampleSet::full(F);
    ch.ops().add(A.data().size());
    auto out = certs::det_check(ch, la::as_blackbox(reduce(A, F)), S, "intdet.det");
    proto::check(out.det == reduce(r, F), RejectReason::CheckFailed, "det mod p disagrees with the commitment");
    if (result) *result = r;
    return certs::Verdict::accept(prime_error_bound(bound, bits) + out.error_bound);
  };
}

proto::ProverFn intdet_prover_committing(IntMatrix A, BigInt r, unsigned bits, std::uint64_t prover_seed) {
  return [A = std::move(A), r = std::move(r), bits, prover_seed](certs::ProverChannel& ch) {
    proto::RngSource rng(prover_seed);
    proto::send_protocol(ch, kIntDetId);
    ch.send(Tag::Commit, "intdet.r", {r});
    const std::uint64_t p = ch.challenge_prime("intdet.p", bits);
    const ff::PrimeField F(p);
    certs::det_respond(ch, la::as_blackbox(reduce(A, F)), ff::SampleSet::full(F), "intdet.det", rng);
  };
}

ProtocolRun intdet_protocol(const IntMatrix& A, unsigned bits, std::uint64_t prover_seed,
                            const std::shared_ptr<std::optional<BigInt>>& result) {
  require_square(A);
  if (bits < 16 || bits > 62) throw Error(ErrorCode::InvalidArgument, "prime size must be 16..62 bits");
  ProtocolRun run;
  run.protocol_id = std::string(kIntDetId);
  run.instance_digest = intdet_digest(A, bits);
  run.field_modulus = 0;
  run.verifier = intdet_verifier(A, bits, result);
  run.prover = [A, bits, prover_seed](certs::ProverChannel& ch) {
    intdet_prover_committing(A, intdet_prove(A), bits, prover_seed)(ch);
  };
  return run;
}

Certified<BigInt> intdet_certify(const IntMatrix& A, unsigned bits, const RunOptions& run) {
  auto slot = std::make_shared<std::optional<BigInt>>();
  return certs::execute(intdet_protocol(A, bits, run.prover_seed, slot), slot, run);
}

}  // namespace vlac::lift
