#include "vlac/certs/freivalds.hpp"

#include "vlac/error.hpp"
#include "vlac/la/elimination.hpp"

namespace vlac::certs {

using proto::RejectReason;
using proto::Tag;

namespace {

std::string geometric_label(std::string_view prefix) { return std::string(prefix) + ".r"; }
std::string bits_label(std::string_view prefix) { return std::string(prefix) + ".bits"; }

SampleSet bits_set(const ff::PrimeField& F) { return SampleSet(F, 2); }

std::size_t challenge_count(std::size_t n, const FreivaldsOptions& opts) {
  return opts.variant == FreivaldsVariant::Geometric ? 1 : n * opts.rounds;
}

Vec draw(VerifierChannel& ch, std::size_t n, const SampleSet& S, const FreivaldsOptions& opts,
         std::string_view prefix) {
  if (opts.variant == FreivaldsVariant::Geometric) return ch.challenge(geometric_label(prefix), S, 1);
  return ch.challenge(bits_label(prefix), bits_set(S.field()), challenge_count(n, opts));
}

void validate(const FreivaldsOptions& opts) {
  if (opts.variant == FreivaldsVariant::ZeroOne && opts.rounds == 0) {
    throw Error(ErrorCode::InvalidArgument, "zero-one Freivalds needs at least one round");
  }
}

void check_product_dims(const la::AnyMatrix& A, const la::AnyMatrix& B) {
  if (la::cols_of(A) != la::rows_of(B)) throw Error(ErrorCode::DimensionMismatch, "A.cols != B.rows");
  if (la::field_of(A) != la::field_of(B)) throw Error(ErrorCode::DimensionMismatch, "operands over different fields");
}

}  // namespace

Rational freivalds_error_bound(std::size_t n, const SampleSet& S, const FreivaldsOptions& opts) {
  validate(opts);
  if (opts.variant == FreivaldsVariant::Geometric) return ratio(n == 0 ? 0 : n - 1, S.size());
  return Rational(BigInt(1), BigInt(1) << opts.rounds);
}

std::vector<Vec> freivalds_vectors(const Vec& challenge, std::size_t n, const SampleSet& S,
                                   const FreivaldsOptions& opts) {
  const auto& F = S.field();
  std::vector<Vec> out;
  if (opts.variant == FreivaldsVariant::Geometric) {
    Vec v(n);
    Scalar x = F.one();
    for (auto& vi : v) {
      vi = x;
      x = F.mul(x, challenge.at(0));
    }
    out.push_back(std::move(v));
    return out;
  }
  for (unsigned k = 0; k < opts.rounds; ++k) {
    out.emplace_back(challenge.begin() + static_cast<std::ptrdiff_t>(k * n),
                     challenge.begin() + static_cast<std::ptrdiff_t>((k + 1) * n));
  }
  return out;
}

Rational freivalds_check(VerifierChannel& ch, const la::Blackbox& A, const la::Blackbox& B, const la::Blackbox& C,
                         const SampleSet& S, const FreivaldsOptions& opts, std::string_view label) {
  validate(opts);
  proto::check(A.cols() == B.rows() && C.rows() == A.rows() && C.cols() == B.cols(),
               RejectReason::ProtocolViolation, "product claim has incompatible dimensions");
  const std::size_t n = B.cols();
  const Vec challenge = draw(ch, n, S, opts, label);
  ch.ops().add(opts.variant == FreivaldsVariant::Geometric ? n : 0);
  for (const Vec& v : freivalds_vectors(challenge, n, S, opts)) {
    const Vec abv = apply_counted(ch, A, apply_counted(ch, B, v));
    const Vec cv = apply_counted(ch, C, v);
    ch.ops().add(A.rows());
    proto::check(abv == cv, RejectReason::CheckFailed, "A(Bv) != Cv");
  }
  return freivalds_error_bound(n, S, opts);
}

void freivalds_respond(ProverChannel& ch, std::size_t n, const SampleSet& S, const FreivaldsOptions& opts,
                       std::string_view label) {
  validate(opts);
  if (opts.variant == FreivaldsVariant::Geometric) {
    ch.challenge(geometric_label(label), S, 1);
  } else {
    ch.challenge(bits_label(label), bits_set(S.field()), challenge_count(n, opts));
  }
}

// ---- matrix multiplication ---------------------------------------------------

la::DenseMatrix matmul_prove(const la::AnyMatrix& A, const la::AnyMatrix& B) {
  check_product_dims(A, B);
  return la::dense_matmul(la::to_dense(A), la::to_dense(B));
}

proto::Digest matmul_digest(const la::AnyMatrix& A, const la::AnyMatrix& B, const SampleSet& S,
                            const FreivaldsOptions& opts) {
  proto::InstanceHasher h(kMatMulId);
  h.sample_set(S).u64(static_cast<std::uint64_t>(opts.variant)).u64(opts.rounds);
  hash_matrix(h, A);
  hash_matrix(h, B);
  return h.finish();
}

proto::VerifierFn matmul_verifier(la::AnyMatrix A, la::AnyMatrix B, SampleSet S, FreivaldsOptions opts,
                                  std::shared_ptr<std::optional<la::DenseMatrix>> result) {
  auto a = la::as_blackbox(A);
  auto b = la::as_blackbox(B);
  return [a, b, S, opts, result](VerifierChannel& ch) {
    proto::expect_protocol(ch, kMatMulId);
    const auto m = ch.receive(Tag::Commit, "matmul.C");
    proto::expect_items(m, 1);
    la::DenseMatrix C = proto::item_matrix(m, 0, S.field(), a->rows(), b->cols());
    const auto c = la::as_blackbox(C);
    Rational eps = freivalds_check(ch, *a, *b, *c, S, opts, "freivalds");
    if (result) *result = std::move(C);
    return Verdict::accept(std::move(eps));
  };
}

proto::ProverFn matmul_prover_committing(la::DenseMatrix C, SampleSet S, FreivaldsOptions opts) {
  return [C = std::move(C), S, opts](ProverChannel& ch) {
    proto::send_protocol(ch, kMatMulId);
    ch.send(Tag::Commit, "matmul.C", {proto::to_payload(C)});
    freivalds_respond(ch, C.cols(), S, opts, "freivalds");
  };
}

ProtocolRun matmul_protocol(const la::AnyMatrix& A, const la::AnyMatrix& B, const SampleSet& S,
                            const FreivaldsOptions& opts,
                            const std::shared_ptr<std::optional<la::DenseMatrix>>& result) {
  check_product_dims(A, B);
  validate(opts);
  ProtocolRun run;
  run.protocol_id = std::string(kMatMulId);
  run.instance_digest = matmul_digest(A, B, S, opts);
  run.field_modulus = S.field().modulus();
  run.prover = [A, B, S, opts](ProverChannel& ch) { matmul_prover_committing(matmul_prove(A, B), S, opts)(ch); };
  run.verifier = matmul_verifier(A, B, S, opts, result);
  return run;
}

Certified<la::DenseMatrix> matmul_certify(const la::AnyMatrix& A, const la::AnyMatrix& B, const SampleSet& S,
                                          const FreivaldsOptions& opts, const RunOptions& run) {
  auto slot = std::make_shared<std::optional<la::DenseMatrix>>();
  return execute(matmul_protocol(A, B, S, opts, slot), slot, run);
}

Verdict freivalds_verify(const la::AnyMatrix& A, const la::AnyMatrix& B, const la::AnyMatrix& C,
                         proto::ChallengeSource& src, const SampleSet& S, const FreivaldsOptions& opts) {
  const auto a = la::as_blackbox(A);
  const auto b = la::as_blackbox(B);
  const auto c = la::as_blackbox(C);
  return run_offline(src, [&](VerifierChannel& ch) {
    return Verdict::accept(freivalds_check(ch, *a, *b, *c, S, opts, "freivalds"));
  });
}

// ---- inverse -------------------------------------------------------------------

proto::Digest inverse_digest(const la::AnyMatrix& A, const SampleSet& S, const FreivaldsOptions& opts) {
  proto::InstanceHasher h(kInverseId);
  h.sample_set(S).u64(static_cast<std::uint64_t>(opts.variant)).u64(opts.rounds);
  hash_matrix(h, A);
  return h.finish();
}

ProtocolRun inverse_protocol(const la::AnyMatrix& A, const SampleSet& S, const FreivaldsOptions& opts,
                             const std::shared_ptr<std::optional<la::DenseMatrix>>& result) {
  const std::size_t n = la::rows_of(A);
  if (la::cols_of(A) != n) throw Error(ErrorCode::NotSquare, "inverse of a non-square matrix");
  validate(opts);
  ProtocolRun run;
  run.protocol_id = std::string(kInverseId);
  run.instance_digest = inverse_digest(A, S, opts);
  run.field_modulus = S.field().modulus();
  run.prover = [A, S, opts](ProverChannel& ch) {
    proto::send_protocol(ch, kInverseId);
    auto W = la::inverse(la::to_dense(A));
    if (!W) throw proto::ProverFailure("matrix is singular");
    ch.send(Tag::Commit, "inverse.W", {proto::to_payload(*W)});
    freivalds_respond(ch, W->cols(), S, opts, "inverse");
  };
  auto a = la::as_blackbox(A);
  run.verifier = [a, n, S, opts, result](VerifierChannel& ch) {
    proto::expect_protocol(ch, kInverseId);
    const auto m = ch.receive(Tag::Commit, "inverse.W");
    proto::expect_items(m, 1);
    la::DenseMatrix W = proto::item_matrix(m, 0, S.field(), n, n);
    const auto w = la::as_blackbox(W);
    Rational eps = freivalds_check(ch, *a, *w, *la::identity_operator(S.field(), n), S, opts, "inverse");
    if (result) *result = std::move(W);
    return Verdict::accept(std::move(eps));
  };
  return run;
}

Certified<la::DenseMatrix> inverse_prove_and_certify(const la::AnyMatrix& A, const SampleSet& S,
                                                     const FreivaldsOptions& opts, const RunOptions& run) {
  auto slot = std::make_shared<std::optional<la::DenseMatrix>>();
  return execute(inverse_protocol(A, S, opts, slot), slot, run);
}

Verdict inverse_certify(const la::AnyMatrix& A, const la::DenseMatrix& W, proto::ChallengeSource& src,
                        const SampleSet& S, const FreivaldsOptions& opts) {
  const std::size_t n = la::rows_of(A);
  if (la::cols_of(A) != n || W.rows() != n || W.cols() != n) {
    throw Error(ErrorCode::DimensionMismatch, "inverse claim needs square A and W of the same size");
  }
  const auto a = la::as_blackbox(A);
  const auto w = la::as_blackbox(W);
  const auto id = la::identity_operator(S.field(), n);
  return run_offline(src, [&](VerifierChannel& ch) {
    return Verdict::accept(freivalds_check(ch, *a, *w, *id, S, opts, "inverse"));
  });
}

}  // namespace vlac::certs
