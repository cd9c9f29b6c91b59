#include "vlac/certs/nonsingular.hpp"

#include "vlac/error.hpp"
#include "vlac/la/krylov.hpp"

namespace vlac::certs {

using proto::RejectReason;
using proto::Tag;

Rational nonsingular_check(VerifierChannel& ch, const la::Blackbox& A, const SampleSet& S, std::string_view prefix) {
  const std::string p(prefix);
  const Vec b = ch.challenge(p + ".b", S, A.rows());
  const auto m = ch.receive(Tag::Response, p + ".w");
  proto::expect_items(m, 1);
  const Vec w = proto::item_vec(m, 0, A.field(), A.cols());
  ch.ops().add(A.rows());
  proto::check(apply_counted(ch, A, w) == b, RejectReason::CheckFailed, "A w != b");
  return ratio(1, S.size());
}

void nonsingular_respond(ProverChannel& ch, const la::Blackbox& A, const SampleSet& S, std::string_view prefix,
                         ff::UniformSource& rng) {
  const std::string p(prefix);
  const Vec b = ch.challenge(p + ".b", S, A.rows());
  auto w = la::prover_solve(A, b, rng);
  if (!w) throw proto::ProverFailure("matrix is singular: no solution of A w = b");
  ch.send(Tag::Response, p + ".w", {std::move(*w)});
}

proto::Digest nonsingular_digest(const la::AnyMatrix& A, const SampleSet& S) {
  proto::InstanceHasher h(kNonsingularId);
  h.sample_set(S);
  hash_matrix(h, A);
  return h.finish();
}

proto::VerifierFn nonsingular_verifier(la::BlackboxPtr A, SampleSet S) {
  return [A = std::move(A), S](VerifierChannel& ch) {
    proto::expect_protocol(ch, kNonsingularId);
    return Verdict::accept(nonsingular_check(ch, *A, S, kNonsingularId));
  };
}

ProtocolRun nonsingular_protocol(la::BlackboxPtr A, const SampleSet& S, const proto::Digest& digest,
                                 std::uint64_t prover_seed) {
  if (!A->square()) throw Error(ErrorCode::NotSquare, "non-singularity of a non-square matrix");
  ProtocolRun run;
  run.protocol_id = std::string(kNonsingularId);
  run.instance_digest = digest;
  run.field_modulus = S.field().modulus();
  run.prover = [A, S, prover_seed](ProverChannel& ch) {
    proto::RngSource rng(prover_seed);
    proto::send_protocol(ch, kNonsingularId);
    nonsingular_respond(ch, *A, S, kNonsingularId, rng);
  };
  run.verifier = nonsingular_verifier(A, S);
  return run;
}

Certified<bool> nonsingular_certify(const la::AnyMatrix& A, const SampleSet& S, const RunOptions& run) {
  auto slot = std::make_shared<std::optional<bool>>(true);
  return execute(nonsingular_protocol(la::as_blackbox(A), S, nonsingular_digest(A, S), run.prover_seed), slot, run);
}

}  // namespace vlac::certs
