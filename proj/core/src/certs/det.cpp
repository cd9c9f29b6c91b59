#include "vlac/certs/det.hpp"

#include "vlac/error.hpp"
#include "vlac/ff/sequence.hpp"
#include "vlac/la/krylov.hpp"

namespace vlac::certs {

using proto::RejectReason;
using proto::Tag;

Rational det_error_bound(std::size_t n, long deg_h, const SampleSet& S) {
  return minpoly_error_bound(n, static_cast<long>(n), deg_h, S);
}

DetOutcome det_check(VerifierChannel& ch, const la::BlackboxPtr& A, const SampleSet& S, std::string_view prefix) {
  const auto& F = A->field();
  const std::size_t n = A->rows();
  const auto m = ch.receive(Tag::Commit, std::string(prefix) + ".Duv");
  proto::expect_items(m, 3);
  Vec d = proto::item_vec(m, 0, F, n);
  const Vec u = proto::item_vec(m, 1, F, n);
  const Vec v = proto::item_vec(m, 2, F, n);
  ch.ops().add(n);
  Scalar prod = F.one();
  for (Scalar di : d) {
    proto::check(!di.is_zero(), RejectReason::ProtocolViolation, "D has a zero entry");
    prod = F.mul(prod, di);
  }
  const auto D = std::make_shared<la::DiagonalScaling>(F, std::move(d));
  auto out = minpoly_check(ch, la::scaled(D, A), u, v, S, prefix, n);
  Scalar det = F.div(out.H.coeff(0), prod);
  if (n % 2 == 1) det = F.neg(det);
  return {det, std::move(out.error_bound)};
}

void det_respond(ProverChannel& ch, const la::BlackboxPtr& A, const SampleSet& S, std::string_view prefix,
                 ff::UniformSource& rng) {
  const auto& F = A->field();
  const std::size_t n = A->rows();
  for (int attempt = 0; attempt < kDetProverTries; ++attempt) {
    Vec d(n), u(n), v(n);
    for (auto& x : d) x = ff::sample_nonzero(S, rng);
    for (auto& x : u) x = ff::sample(S, rng);
    for (auto& x : v) x = ff::sample(S, rng);
    const auto B = la::scaled(std::make_shared<la::DiagonalScaling>(F, d), A);
    auto cert = minpoly_certificate(*B, u, v);
    if (cert.H.degree() != static_cast<long>(n)) continue;
    ch.send(Tag::Commit, std::string(prefix) + ".Duv", {std::move(d), u, v});
    minpoly_respond_with(ch, B, v, S, prefix, rng, cert);
    return;
  }
  throw proto::ProverFailure("no projection reached deg f_u^{DA,v} = n", ErrorCode::DegreeDeficient);
}

proto::Digest det_digest(const la::AnyMatrix& A, const SampleSet& S) {
  proto::InstanceHasher h(kDetId);
  h.sample_set(S);
  hash_matrix(h, A);
  return h.finish();
}

proto::VerifierFn det_verifier(la::BlackboxPtr A, SampleSet S, std::shared_ptr<std::optional<Scalar>> result) {
  if (!A->square() || A->rows() == 0) throw Error(ErrorCode::NotSquare, "determinant needs a square n >= 1 operator");
  return [A = std::move(A), S, result](VerifierChannel& ch) {
    proto::expect_protocol(ch, kDetId);
    auto out = det_check(ch, A, S, kDetId);
    if (result) *result = out.det;
    return Verdict::accept(std::move(out.error_bound));
  };
}

ProtocolRun det_protocol(la::BlackboxPtr A, const SampleSet& S, const proto::Digest& digest,
                         std::uint64_t prover_seed, const std::shared_ptr<std::optional<Scalar>>& result) {
  ProtocolRun run;
  run.protocol_id = std::string(kDetId);
  run.instance_digest = digest;
  run.field_modulus = S.field().modulus();
  run.verifier = det_verifier(A, S, result);
  run.prover = [A, S, prover_seed](ProverChannel& ch) {
    proto::RngSource rng(prover_seed);
    proto::send_protocol(ch, kDetId);
    det_respond(ch, A, S, kDetId, rng);
  };
  return run;
}

Certified<Scalar> det_certify(const la::AnyMatrix& A, const SampleSet& S, const RunOptions& run) {
  auto slot = std::make_shared<std::optional<Scalar>>();
  return execute(det_protocol(la::as_blackbox(A), S, det_digest(A, S), run.prover_seed, slot), slot, run);
}

}  // namespace vlac::certs
