#include "vlac/lift/polydet.hpp"

#include <algorithm>

#include "vlac/error.hpp"
#include "vlac/la/elimination.hpp"

namespace vlac::lift {

using ff::Poly;
using ff::Scalar;
using proto::RejectReason;
using proto::Tag;

PolyMatrix::PolyMatrix(const ff::PrimeField& field, std::size_t rows, std::size_t cols)
    : field_(field), rows_(rows), cols_(cols), entries_(rows * cols) {}

PolyMatrix::PolyMatrix(const ff::PrimeField& field, std::size_t rows, std::size_t cols, std::vector<Poly> entries)
    : field_(field), rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (entries_.size() != rows * cols) throw Error(ErrorCode::DimensionMismatch, "PolyMatrix entry count");
  for (const auto& e : entries_) {
    for (Scalar c : e.coeffs()) {
      if (!field_.contains(c)) throw Error(ErrorCode::InvalidArgument, "coefficient outside the field");
    }
  }
}

std::size_t PolyMatrix::degree() const noexcept {
  long d = 0;
  for (const auto& e : entries_) d = std::max(d, e.degree());
  return static_cast<std::size_t>(d);
}

la::DenseMatrix PolyMatrix::evaluate(Scalar alpha) const {
  std::vector<Scalar> data;
  data.reserve(entries_.size());
  for (const auto& e : entries_) data.push_back(ff::eval(field_, e, alpha));
  return la::DenseMatrix(field_, rows_, cols_, std::move(data));
}

Poly interpolate(const ff::PrimeField& F, const ff::Vec& xs, const ff::Vec& ys) {
  if (xs.size() != ys.size()) throw Error(ErrorCode::DimensionMismatch, "interpolation point count");
  // Newton divided differences, then expansion of the Newton form.
  const std::size_t N = xs.size();
  ff::Vec c = ys;
  for (std::size_t j = 1; j < N; ++j) {
    for (std::size_t i = N - 1; i >= j; --i) {
      const Scalar dx = F.sub(xs[i], xs[i - j]);
      if (dx.is_zero()) throw Error(ErrorCode::InvalidArgument, "repeated interpolation point");
      c[i] = F.div(F.sub(c[i], c[i - 1]), dx);
    }
  }
  Poly r;
  for (std::size_t i = N; i-- > 0;) {
    r = ff::add(F, ff::mul(F, r, Poly({F.neg(xs[i]).value, 1})), Poly::constant(c[i]));
  }
  return r;
}

Poly polydet_prove(const PolyMatrix& A) {
  if (!A.square() || A.rows() == 0) throw Error(ErrorCode::NotSquare, "determinant needs square n >= 1");
  const auto& F = A.field();
  const std::size_t points = A.rows() * A.degree() + 1;
  if (points > F.modulus()) throw Error(ErrorCode::InvalidArgument, "field too small to interpolate the determinant");
  ff::Vec xs(points), ys(points);
  for (std::size_t i = 0; i < points; ++i) {
    xs[i] = Scalar(i);
    ys[i] = la::determinant(A.evaluate(xs[i]));
  }
  return interpolate(F, xs, ys);
}

Rational polydet_error_bound(const PolyMatrix& A, const ff::SampleSet& S, long deg_h) {
  return certs::ratio(A.rows() * A.degree(), S.size()) + certs::det_error_bound(A.rows(), deg_h, S);
}

proto::Digest polydet_digest(const PolyMatrix& A, const ff::SampleSet& S) {
  proto::InstanceHasher h(kPolyDetId);
  h.sample_set(S).u64(A.rows()).u64(A.cols());
  for (const auto& e : A.entries()) h.item(e);
  return h.finish();
}

proto::VerifierFn polydet_verifier(PolyMatrix A, ff::SampleSet S, std::shared_ptr<std::optional<Poly>> result) {
  if (!A.square() || A.rows() == 0) throw Error(ErrorCode::NotSquare, "determinant needs square n >= 1");
  if (A.field() != S.field()) throw Error(ErrorCode::InvalidArgument, "sample set over a different field");
  return [A = std::move(A), S, result](certs::VerifierChannel& ch) {
    const auto& F = A.field();
    proto::expect_protocol(ch, kPolyDetId);
    const auto m = ch.receive(Tag::Commit, "polydet.r");
    proto::expect_items(m, 1);
    const Poly r = proto::item_poly(m, 0, F);
    const std::size_t nd = A.rows() * A.degree();
    proto::check(r.degree() <= static_cast<long>(nd), RejectReason::DegreeOutOfBounds, "deg r exceeds n * d");
    const Scalar alpha = ch.challenge("polydet.alpha", S, 1)[0];
    std::uint64_t eval_cost = 0;
    for (const auto& e : A.entries()) eval_cost += 2 * e.coeffs().size();
    ch.ops().add(eval_cost);
    auto out = certs::det_check(ch, la::as_blackbox(A.evaluate(alpha)), S, "polydet.det");
    proto::check(certs::eval_counted(ch, F, r, alpha) == out.det, RejectReason::CheckFailed,
                 "r(alpha) differs from det A(alpha)");
    if (result) *result = r;
    return certs::Verdict::accept(certs::ratio(nd, S.size()) + out.error_bound);
  };
}

proto::ProverFn polydet_prover_committing(PolyMatrix A, Poly r, ff::SampleSet S, std::uint64_t prover_seed) {
  return [A = std::move(A), r = std::move(r), S, prover_seed](certs::ProverChannel& ch) {
    proto::RngSource rng(prover_seed);
    proto::send_protocol(ch, kPolyDetId);
    ch.send(Tag::Commit, "polydet.r", {r});
    const Scalar alpha = ch.challenge("polydet.alpha", S, 1)[0];
    certs::det_respond(ch, la::as_blackbox(A.evaluate(alpha)), S, "polydet.det", rng);
  };
}

ProtocolRun polydet_protocol(const PolyMatrix& A, const ff::SampleSet& S, std::uint64_t prover_seed,
                             const std::shared_ptr<std::optional<Poly>>& result) {
  ProtocolRun run;
  run.protocol_id = std::string(kPolyDetId);
  run.instance_digest = polydet_digest(A, S);
  run.field_modulus = S.field().modulus();
  run.verifier = polydet_verifier(A, S, result);
  run.prover = [A, S, prover_seed](certs::ProverChannel& ch) {
    polydet_prover_committing(A, polydet_prove(A), S, prover_seed)(ch);
  };
  return run;
}

Certified<Poly> polydet_certify(const PolyMatrix& A, const ff::SampleSet& S, const RunOptions& run) {
  auto slot = std::make_shared<std::optional<Poly>>();
  return certs::execute(polydet_protocol(A, S, run.prover_seed, slot), slot, run);
}

}  // namespace vlac::lift
