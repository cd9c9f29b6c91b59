#include "vlac/certs/minpoly.hpp"

#include "vlac/error.hpp"
#include "vlac/ff/sequence.hpp"
#include "vlac/la/krylov.hpp"

namespace vlac::certs {

using ff::Poly;
using proto::RejectReason;
using proto::Tag;

namespace {

constexpr int kShiftDraws = 64;
constexpr int kAnnihilatorTries = 16;

std::string label(std::string_view prefix, std::string_view what) {
  return std::string(prefix) + "." + std::string(what);
}

// Minimal polynomial P of v under A (P(A) v = 0), found from random
// projections and confirmed by applying it.
Poly annihilator(const la::Blackbox& A, const Vec& v, const Poly& hint, ff::UniformSource& rng) {
  const auto& F = A.field();
  if (is_zero_vector(v)) return Poly::constant(F.one());
  if (hint.degree() > 0 && is_zero_vector(la::apply_poly(A, hint, v))) return hint;
  const SampleSet full = SampleSet::full(F);
  const std::size_t n = A.rows();
  for (int t = 0; t < kAnnihilatorTries; ++t) {
    Vec u(n);
    for (auto& x : u) x = ff::sample(full, rng);
    Poly P = ff::berlekamp_massey(F, la::krylov_sequence(A, u, v, 2 * n));
    if (is_zero_vector(la::apply_poly(A, P, v))) return P;
  }
  throw proto::ProverFailure("no annihilating polynomial of v found");
}

}  // namespace

Rational minpoly_error_bound(std::size_t n, long deg_H, long deg_h, const SampleSet& S) {
  const long r0 = deg_H + std::max(deg_h, 0L);
  const long r1 = std::max(deg_H + static_cast<long>(n) - 1, 0L);
  return Rational(BigInt(r0 + r1), BigInt(S.size()));
}

MinPolyOutcome minpoly_check(VerifierChannel& ch, const la::BlackboxPtr& A, const Vec& u, const Vec& v,
                             const SampleSet& S, std::string_view prefix,
                             std::optional<std::size_t> required_degree) {
  const auto& F = A->field();
  const std::size_t n = A->rows();

  const auto hh = ch.receive(Tag::Commit, label(prefix, "Hh"));
  proto::expect_items(hh, 2);
  const Poly H = proto::item_poly(hh, 0, F);
  const Poly h = proto::item_poly(hh, 1, F);
  proto::check(H.is_monic(), RejectReason::DegreeViolation, "H is not monic");
  proto::check(H.degree() <= static_cast<long>(n), RejectReason::DegreeViolation, "deg H exceeds n");
  proto::check(h.degree() < H.degree(), RejectReason::DegreeViolation, "deg h >= deg H");
  if (required_degree) {
    proto::check(H.degree() == static_cast<long>(*required_degree), RejectReason::DegreeViolation,
                 "deg H differs from the required degree");
  }

  const auto bz = ch.receive(Tag::Commit, label(prefix, "bezout"));
  proto::expect_items(bz, 2);
  const Poly phi = proto::item_poly(bz, 0, F);
  const Poly psi = proto::item_poly(bz, 1, F);
  const long phi_bound = h.is_zero() ? 0 : h.degree() - 1;
  proto::check(phi.degree() <= phi_bound, RejectReason::DegreeViolation, "deg phi too large");
  proto::check(psi.degree() <= H.degree() - 1, RejectReason::DegreeViolation, "deg psi too large");

  const Scalar r0 = ch.challenge(label(prefix, "r0"), S, 1)[0];
  const Scalar bez = F.add(F.mul(eval_counted(ch, F, phi, r0), eval_counted(ch, F, H, r0)),
                           F.mul(eval_counted(ch, F, psi, r0), eval_counted(ch, F, h, r0)));
  proto::check(bez == F.one(), RejectReason::BezoutFail, "phi H + psi h != 1 at r0");

  for (int draw = 0; draw < kShiftDraws; ++draw) {
    const Scalar r1 = ch.challenge(label(prefix, "r1"), S, 1)[0];
    const auto shifted = la::shifted(A, r1);
    const auto m = ch.receive_any(Tag::Response);
    if (m.label == label(prefix, "eigen")) {
      proto::expect_items(m, 1);
      const Vec z = proto::item_vec(m, 0, F, n);
      ch.ops().add(n);
      proto::check(!is_zero_vector(z), RejectReason::ZeroWitness, "eigenvector witness is zero");
      proto::check(is_zero_vector(apply_counted(ch, *shifted, z)), RejectReason::CheckFailed,
                   "eigenvector witness is not in the kernel of r1 I - A");
      continue;
    }
    proto::check(m.label == label(prefix, "w"), RejectReason::ProtocolViolation,
                 "unexpected message '" + m.label + "' after r1");
    proto::expect_items(m, 1);
    const Vec w = proto::item_vec(m, 0, F, n);
    ch.ops().add(n);
    proto::check(apply_counted(ch, *shifted, w) == v, RejectReason::CheckFailed, "(r1 I - A) w != v");
    const Scalar lhs = F.mul(dot_counted(ch, F, u, w), eval_counted(ch, F, H, r1));
    proto::check(lhs == eval_counted(ch, F, h, r1), RejectReason::CheckFailed, "(u^T w) H(r1) != h(r1)");
    return {H, minpoly_error_bound(n, H.degree(), h.degree(), S)};
  }
  throw proto::Rejection(RejectReason::SingularShift, "r1 was an eigenvalue on every draw");
}

MinPolyCertificate minpoly_certificate(const la::Blackbox& A, const Vec& u, const Vec& v) {
  const auto& F = A.field();
  const Vec seq = la::krylov_sequence(A, u, v, 2 * A.rows());
  MinPolyCertificate c;
  c.H = ff::berlekamp_massey(F, seq);
  c.h = ff::numerator_from_sequence(F, c.H, seq);
  auto g = ff::xgcd(F, c.H, c.h);
  c.phi = std::move(g.s);
  c.psi = std::move(g.t);
  return c;
}

void minpoly_respond_with(ProverChannel& ch, const la::BlackboxPtr& A, const Vec& v, const SampleSet& S,
                          std::string_view prefix, ff::UniformSource& rng, const MinPolyCertificate& cert) {
  const auto& F = A->field();
  ch.send(Tag::Commit, label(prefix, "Hh"), {cert.H, cert.h});
  ch.send(Tag::Commit, label(prefix, "bezout"), {cert.phi, cert.psi});
  ch.challenge(label(prefix, "r0"), S, 1);

  const Poly P = annihilator(*A, v, cert.H, rng);
  for (int draw = 0; draw < kShiftDraws; ++draw) {
    const Scalar r1 = ch.challenge(label(prefix, "r1"), S, 1)[0];
    if (P.degree() == 0) {
      ch.send(Tag::Response, label(prefix, "w"), {Vec(v.size())});
      return;
    }
    if (auto w = la::shifted_solve_with_annihilator(*A, P, r1, v)) {
      ch.send(Tag::Response, label(prefix, "w"), {std::move(*w)});
      return;
    }
    // P(r1) = 0: z = (P / (x - r1))(A) v is a nonzero eigenvector.
    const Poly root({F.neg(r1).value, 1});
    const Vec z = la::apply_poly(*A, ff::divmod(F, P, root).quotient, v);
    ch.send(Tag::Response, label(prefix, "eigen"), {z});
  }
}

void minpoly_respond(ProverChannel& ch, const la::BlackboxPtr& A, const Vec& u, const Vec& v, const SampleSet& S,
                     std::string_view prefix, ff::UniformSource& rng, std::optional<MinPolyCertificate> cert) {
  if (!cert) cert = minpoly_certificate(*A, u, v);
  minpoly_respond_with(ch, A, v, S, prefix, rng, *cert);
}

proto::Digest minpoly_digest(const la::AnyMatrix& A, const SampleSet& S) {
  proto::InstanceHasher h(kMinPolyId);
  h.sample_set(S);
  hash_matrix(h, A);
  return h.finish();
}

proto::VerifierFn minpoly_verifier(la::BlackboxPtr A, SampleSet S, std::shared_ptr<std::optional<Poly>> result) {
  if (!A->square()) throw Error(ErrorCode::NotSquare, "minimal polynomial of a non-square operator");
  return [A = std::move(A), S, result](VerifierChannel& ch) {
    proto::expect_protocol(ch, kMinPolyId);
    const Vec u = ch.challenge("minpoly.u", S, A->rows());
    const Vec v = ch.challenge("minpoly.v", S, A->rows());
    auto out = minpoly_check(ch, A, u, v, S, kMinPolyId);
    if (result) *result = std::move(out.H);
    return Verdict::accept(std::move(out.error_bound));
  };
}

ProtocolRun minpoly_protocol(la::BlackboxPtr A, const SampleSet& S, const proto::Digest& digest,
                             std::uint64_t prover_seed, const std::shared_ptr<std::optional<Poly>>& result) {
  ProtocolRun run;
  run.protocol_id = std::string(kMinPolyId);
  run.instance_digest = digest;
  run.field_modulus = S.field().modulus();
  run.verifier = minpoly_verifier(A, S, result);
  run.prover = [A, S, prover_seed](ProverChannel& ch) {
    proto::RngSource rng(prover_seed);
    proto::send_protocol(ch, kMinPolyId);
    const Vec u = ch.challenge("minpoly.u", S, A->rows());
    const Vec v = ch.challenge("minpoly.v", S, A->rows());
    minpoly_respond(ch, A, u, v, S, kMinPolyId, rng);
  };
  return run;
}

Certified<Poly> minpoly_certify(const la::AnyMatrix& A, const SampleSet& S, const RunOptions& run) {
  auto slot = std::make_shared<std::optional<Poly>>();
  return execute(minpoly_protocol(la::as_blackbox(A), S, minpoly_digest(A, S), run.prover_seed, slot), slot, run);
}

}  // namespace vlac::certs
