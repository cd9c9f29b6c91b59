#include "vlac/certs/rank.hpp"

#include <algorithm>

#include "vlac/certs/nonsingular.hpp"
#include "vlac/error.hpp"
#include "vlac/la/elimination.hpp"

namespace vlac::certs {

using proto::RejectReason;
using proto::Tag;

namespace {

constexpr int kLowerAttempts = 64;

struct Preconditioners {
  la::BlackboxPtr U, V;
};

template <class Channel>
Preconditioners draw_butterflies(Channel& ch, std::size_t P, const SampleSet& S, const std::string& prefix) {
  const std::size_t count = la::Butterfly::switch_count(P) + P;
  const Vec u = ch.challenge(prefix + ".U", S, count, true);
  const Vec v = ch.challenge(prefix + ".V", S, count, true);
  return {rank_preconditioner(S.field(), P, u, false), rank_preconditioner(S.field(), P, v, true)};
}

std::size_t min_dim(const la::Blackbox& A) { return std::min(A.rows(), A.cols()); }

std::size_t true_rank(const la::Blackbox& A) { return la::rank(la::materialize(A)); }

}  // namespace

std::size_t rank_padded_size(std::size_t m, std::size_t n) { return la::Butterfly::padded_size(std::max(m, n)); }

Rational rank_upper_error_bound(std::size_t m, std::size_t n, std::size_t r, const SampleSet& S) {
  const std::size_t L = la::Butterfly::layer_count(rank_padded_size(m, n));
  return ratio((r + 2) * L + 1, S.size());
}

Rational rank_error_bound(std::size_t m, std::size_t n, std::size_t r, const SampleSet& S) {
  Rational eps{0};
  if (r > 0) eps += ratio(1, S.size());
  if (r < std::min(m, n)) eps += rank_upper_error_bound(m, n, r, S);
  return eps;
}

la::BlackboxPtr rank_preconditioner(const ff::PrimeField& F, std::size_t P, const Vec& params, bool diagonal_first) {
  const std::size_t switches = la::Butterfly::switch_count(P);
  if (params.size() != switches + P) throw Error(ErrorCode::InvalidArgument, "preconditioner parameter count mismatch");
  auto B = std::make_shared<la::Butterfly>(F, P, Vec(params.begin(), params.begin() + switches));
  auto D = std::make_shared<la::DiagonalScaling>(F, Vec(params.begin() + switches, params.end()));
  // the first row of a bare butterfly is all ones; the diagonal breaks that
  return diagonal_first ? la::compose({D, B}) : la::compose({B, D});
}

la::BlackboxPtr preconditioned_leading(const la::BlackboxPtr& A, const la::BlackboxPtr& U, const la::BlackboxPtr& V,
                                       std::size_t k) {
  const std::size_t P = U->rows();
  return la::leading_projection(la::compose({U, la::zero_pad(A, P, P), V}), k);
}

Rational rank_upper_check(VerifierChannel& ch, const la::BlackboxPtr& A, std::size_t r, const SampleSet& S,
                          std::string_view prefix) {
  proto::check(r < min_dim(*A), RejectReason::RankOutOfRange, "upper bound needs r < min(m, n)");
  const std::string p(prefix);
  const auto [U, V] = draw_butterflies(ch, rank_padded_size(A->rows(), A->cols()), S, p);
  const auto m = ch.receive(Tag::Response, p + ".w");
  proto::expect_items(m, 1);
  const Vec w = proto::item_vec(m, 0, A->field(), r + 1);
  ch.ops().add(w.size());
  proto::check(!is_zero_vector(w), RejectReason::ZeroWitness, "kernel witness is zero");
  const auto M = preconditioned_leading(A, U, V, r + 1);
  proto::check(is_zero_vector(apply_counted(ch, *M, w)), RejectReason::CheckFailed,
               "witness not in the kernel of the leading block");
  return rank_upper_error_bound(A->rows(), A->cols(), r, S);
}

void rank_upper_respond(ProverChannel& ch, const la::BlackboxPtr& A, std::size_t r, const SampleSet& S,
                        std::string_view prefix) {
  const std::string p(prefix);
  const auto [U, V] = draw_butterflies(ch, rank_padded_size(A->rows(), A->cols()), S, p);
  auto w = la::kernel_vector(la::materialize(*preconditioned_leading(A, U, V, r + 1)));
  if (!w) throw proto::ProverFailure("leading block is non-singular: rank exceeds the claim");
  ch.send(Tag::Response, p + ".w", {std::move(*w)});
}

proto::Digest rank_digest(std::string_view protocol_id, const la::AnyMatrix& A, const SampleSet& S,
                          std::optional<std::size_t> r) {
  proto::InstanceHasher h(protocol_id);
  h.sample_set(S);
  if (r) h.u64(*r);
  hash_matrix(h, A);
  return h.finish();
}

ProtocolRun rank_upper_protocol(la::BlackboxPtr A, std::size_t r, const SampleSet& S, const proto::Digest& digest) {
  ProtocolRun run;
  run.protocol_id = std::string(kRankUpperId);
  run.instance_digest = digest;
  run.field_modulus = S.field().modulus();
  run.prover = [A, r, S](ProverChannel& ch) {
    proto::send_protocol(ch, kRankUpperId);
    rank_upper_respond(ch, A, r, S, "rank");
  };
  run.verifier = [A, r, S](VerifierChannel& ch) {
    proto::expect_protocol(ch, kRankUpperId);
    return Verdict::accept(rank_upper_check(ch, A, r, S, "rank"));
  };
  return run;
}

Certified<bool> rank_upper_certify(const la::AnyMatrix& A, std::size_t r, const SampleSet& S, const RunOptions& run) {
  auto slot = std::make_shared<std::optional<bool>>(true);
  return execute(rank_upper_protocol(la::as_blackbox(A), r, S, rank_digest(kRankUpperId, A, S, r)), slot, run);
}

proto::VerifierFn rank_verifier(la::BlackboxPtr A, SampleSet S, std::shared_ptr<std::optional<std::size_t>> result) {
  return [A = std::move(A), S, result](VerifierChannel& ch) {
    proto::expect_protocol(ch, kRankId);
    const auto claim = ch.receive(Tag::Claim, "rank.r");
    proto::expect_items(claim, 1);
    const std::uint64_t r = proto::item_u64(claim, 0);
    const std::size_t mn = min_dim(*A);
    proto::check(r <= mn, RejectReason::RankOutOfRange, "claimed rank exceeds min(m, n)");
    Rational eps{0};
    if (r > 0) {
      const std::size_t P = rank_padded_size(A->rows(), A->cols());
      bool done = false;
      for (int attempt = 0; attempt < kLowerAttempts && !done; ++attempt) {
        const auto [U, V] = draw_butterflies(ch, P, S, "rank.lower");
        const auto M = preconditioned_leading(A, U, V, r);
        const auto m = ch.receive_any(Tag::Response);
        if (m.label == "rank.lower.singular") {
          proto::expect_items(m, 1);
          const Vec z = proto::item_vec(m, 0, A->field(), r);
          proto::check(!is_zero_vector(z) && is_zero_vector(apply_counted(ch, *M, z)), RejectReason::CheckFailed,
                       "invalid singularity witness for the leading block");
          continue;
        }
        proto::check(m.label == "rank.lower.ok", RejectReason::ProtocolViolation,
                     "unexpected message '" + m.label + "' in the rank lower phase");
        proto::expect_items(m, 0);
        eps += nonsingular_check(ch, *M, S, "rank.lower");
        done = true;
      }
      proto::check(done, RejectReason::PreconditionFailed, "leading block singular on every preconditioner draw");
    }
    if (r < mn) eps += rank_upper_check(ch, A, r, S, "rank");
    if (result) *result = r;
    return Verdict::accept(std::move(eps));
  };
}

proto::ProverFn rank_prover_claiming(la::BlackboxPtr A, std::size_t r, SampleSet S, std::uint64_t prover_seed) {
  return [A = std::move(A), r, S, prover_seed](ProverChannel& ch) {
    proto::RngSource rng(prover_seed);
    proto::send_protocol(ch, kRankId);
    ch.send(Tag::Claim, "rank.r", {std::uint64_t{r}});
    const std::size_t mn = min_dim(*A);
    if (r > 0 && r <= mn) {
      const std::size_t P = rank_padded_size(A->rows(), A->cols());
      for (int attempt = 0; attempt < kLowerAttempts; ++attempt) {
        const auto [U, V] = draw_butterflies(ch, P, S, "rank.lower");
        const auto M = preconditioned_leading(A, U, V, r);
        if (auto z = la::kernel_vector(la::materialize(*M))) {
          ch.send(Tag::Response, "rank.lower.singular", {std::move(*z)});
          continue;
        }
        ch.send(Tag::Response, "rank.lower.ok", {});
        nonsingular_respond(ch, *M, S, "rank.lower", rng);
        break;
      }
    }
    if (r < mn) rank_upper_respond(ch, A, r, S, "rank");
  };
}

ProtocolRun rank_protocol(la::BlackboxPtr A, const SampleSet& S, const proto::Digest& digest,
                          std::uint64_t prover_seed, const std::shared_ptr<std::optional<std::size_t>>& result) {
  ProtocolRun run;
  run.protocol_id = std::string(kRankId);
  run.instance_digest = digest;
  run.field_modulus = S.field().modulus();
  run.prover = [A, S, prover_seed](ProverChannel& ch) {
    rank_prover_claiming(A, true_rank(*A), S, prover_seed)(ch);
  };
  run.verifier = rank_verifier(A, S, result);
  return run;
}

Certified<std::size_t> rank_certify(const la::AnyMatrix& A, const SampleSet& S, const RunOptions& run) {
  auto slot = std::make_shared<std::optional<std::size_t>>();
  return execute(rank_protocol(la::as_blackbox(A), S, rank_digest(kRankId, A, S), run.prover_seed, slot), slot, run);
}

}  // namespace vlac::certs
