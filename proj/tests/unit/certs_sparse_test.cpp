#include <doctest.h>

#include "oracle.hpp"
#include "random.hpp"
#include "vlac/certs/det.hpp"
#include "vlac/certs/minpoly.hpp"
#include "vlac/certs/nonsingular.hpp"
#include "vlac/certs/rank.hpp"
#include "vlac/error.hpp"
#include "vlac/ff/sequence.hpp"
#include "vlac/la/krylov.hpp"
#include "vlac/proto/challenge.hpp"
#include "vlac/proto/session.hpp"

using namespace vlac;
using namespace vlac::certs;
using ff::Poly;
using ff::PrimeField;
using ff::Scalar;
using la::DenseMatrix;
using proto::Mode;
using proto::RejectReason;
using proto::Tag;

namespace {

proto::SessionConfig config(std::string id, std::uint64_t modulus, Mode mode, std::uint64_t seed) {
  proto::SessionConfig c;
  c.protocol_id = std::move(id);
  c.field_modulus = modulus;
  c.mode = mode;
  c.seed = seed;
  c.instance_digest[0] = std::uint8_t(seed);
  c.instance_digest[1] = std::uint8_t(seed >> 8);
  return c;
}

// f_u^{A,v} for caller-fixed u, v.
struct FixedMinpoly {
  std::shared_ptr<std::optional<MinPolyOutcome>> out = std::make_shared<std::optional<MinPolyOutcome>>();
  proto::SessionResult result;
};

FixedMinpoly run_fixed_minpoly(const la::BlackboxPtr& A, const ff::Vec& u, const ff::Vec& v, const ff::SampleSet& S,
                               std::uint64_t seed, std::optional<MinPolyCertificate> cert = std::nullopt) {
  FixedMinpoly f;
  const auto prover = [&](proto::ProverChannel& ch) {
    proto::RngSource rng(seed);
    if (cert) {
      minpoly_respond_with(ch, A, v, S, "mp", rng, *cert);
    } else {
      minpoly_respond(ch, A, u, v, S, "mp", rng);
    }
  };
  const auto verifier = [&, out = f.out](proto::VerifierChannel& ch) {
    auto o = minpoly_check(ch, A, u, v, S, "mp");
    const auto eps = o.error_bound;
    *out = std::move(o);
    return proto::Verdict::accept(eps);
  };
  f.result = proto::run_session(prover, verifier, config("mp", S.field().modulus(), Mode::Interactive, seed));
  return f;
}

ff::Vec vec_of(std::initializer_list<std::uint64_t> xs) {
  ff::Vec v;
  for (auto x : xs) v.emplace_back(x);
  return v;
}

DenseMatrix random_nonsingular(const PrimeField& F, std::size_t n, testing::Rng& rng) {
  for (;;) {
    auto A = testing::random_dense(F, n, n, rng);
    if (!oracle::brute_det_field(A).is_zero()) return A;
  }
}

// Coprime forged certificate with H replaced by H + delta.
std::optional<MinPolyCertificate> forge(const PrimeField& F, const MinPolyCertificate& honest, Scalar delta) {
  MinPolyCertificate c = honest;
  c.H = ff::add(F, c.H, Poly::constant(delta));
  if (c.h.is_zero()) return std::nullopt;
  const auto g = ff::xgcd(F, c.H, c.h);
  if (g.gcd != Poly{1}) return std::nullopt;
  c.phi = g.s;
  c.psi = g.t;
  return c;
}

}  // namespace

TEST_CASE("nonsingularity") {
  const PrimeField F(101);
  const ff::SampleSet S(F, 101);
  auto c = nonsingular_certify(DenseMatrix::identity(F, 3), S);
  CHECK(c.verdict.accepted);
  CHECK(c.verdict.error_bound == Rational(1, 101));

  c = nonsingular_certify(DenseMatrix(F, 2, 2), S);
  CHECK_FALSE(c.verdict.accepted);
  CHECK(c.verdict.reason == RejectReason::ProverFailed);

  testing::Rng rng(1);
  for (int t = 0; t < 200; ++t) {
    const auto A = random_nonsingular(F, 8, rng);
    const bool sparse = t % 2;
    const auto r = sparse ? nonsingular_certify(la::SparseMatrix::from_dense(A), S, {Mode::Interactive, std::uint64_t(t)})
                          : nonsingular_certify(A, S, {Mode::FiatShamir});
    CHECK(r.verdict.accepted);
  }
  CHECK_THROWS_AS(nonsingular_protocol(la::as_blackbox(DenseMatrix(F, 2, 3)), S, {}), Error);
}

TEST_CASE("a singular matrix passes only when b lands in its image") {
  // Over GF(5) the image of a rank-1 2x2 matrix holds 5 of 25 vectors.
  const PrimeField F(5);
  const ff::SampleSet S = ff::SampleSet::full(F);
  const auto A = DenseMatrix::from_rows(F, {{1, 2}, {2, 4}});
  const auto bb = la::as_blackbox(A);
  const auto cheat = [&](proto::ProverChannel& ch) {
    proto::send_protocol(ch, kNonsingularId);
    const auto b = ch.challenge("nonsingular.b", S, 2);
    ff::Vec best(2);
    for (std::uint64_t x = 0; x < 25; ++x) {
      const ff::Vec w{Scalar(x % 5), Scalar(x / 5)};
      if (la::matvec(A, w) == b) best = w;
    }
    ch.send(Tag::Response, "nonsingular.w", {best});
  };
  const int trials = 2000;
  int accepted = 0;
  for (int t = 0; t < trials; ++t) {
    accepted += proto::run_session(cheat, nonsingular_verifier(bb, S), config("nonsingular", 5, Mode::Interactive, t))
                    .verdict.accepted;
  }
  CHECK(double(accepted) / trials <= 0.2 + testing::three_sigma(0.2, trials));
  CHECK(accepted > 0);
}

TEST_CASE("rank upper bounds") {
  const PrimeField F(101);
  const ff::SampleSet S(F, 101);
  auto c = rank_upper_certify(DenseMatrix(F, 2, 2), 0, S);
  CHECK(c.verdict.accepted);
  CHECK(c.verdict.error_bound == Rational(2 * 1 + 1, 101));

  c = rank_upper_certify(DenseMatrix::from_rows(F, {{1, 2}, {2, 4}}), 1, S);
  CHECK(c.verdict.accepted);
  CHECK(c.verdict.error_bound == rank_upper_error_bound(2, 2, 1, S));

  c = rank_upper_certify(DenseMatrix::identity(F, 3), 3, S);
  CHECK_FALSE(c.verdict.accepted);
  CHECK(c.verdict.reason == RejectReason::RankOutOfRange);

  CHECK(rank_padded_size(3, 5) == 8);
  CHECK(rank_upper_error_bound(4, 4, 2, S) == Rational(9, 101));
  CHECK(rank_upper_error_bound(3, 5, 1, S) == Rational(10, 101));

  // I4 claimed to have rank <= 2
  const auto I4 = la::as_blackbox(DenseMatrix::identity(F, 4));
  const auto run = rank_upper_protocol(I4, 2, S, {});
  const int trials = 1000;
  int accepted = 0;
  for (int t = 0; t < trials; ++t) {
    accepted += proto::run_session(run.prover, run.verifier, run.config(Mode::Interactive, t)).verdict.accepted;
  }
  const double eps = 9.0 / 101;
  CHECK(double(accepted) / trials <= eps + testing::three_sigma(eps, trials));

  // a zero witness is refused
  const auto zero = [&](proto::ProverChannel& ch) {
    proto::send_protocol(ch, kRankUpperId);
    ch.challenge("rank.U", S, la::Butterfly::switch_count(4) + 4, true);
    ch.challenge("rank.V", S, la::Butterfly::switch_count(4) + 4, true);
    ch.send(Tag::Response, "rank.w", {ff::Vec(3)});
  };
  const auto z = proto::run_session(zero, run.verifier, run.config(Mode::Interactive));
  CHECK(z.verdict.reason == RejectReason::ZeroWitness);
}

TEST_CASE("column space orthogonal to the all-ones vector") {
  // A = x y^T with x = (1, -1): a bare butterfly's first row sums the rows
  // of A, so its leading entry would vanish for every draw
  const PrimeField F(101);
  const ff::SampleSet S(F, 101);
  const auto A = DenseMatrix::from_rows(F, {{1, 2}, {100, 99}});
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    const auto c = rank_certify(A, S, {Mode::Interactive, seed});
    REQUIRE(c.verdict.accepted);
    CHECK(*c.value == 1);
  }
  const auto run = rank_upper_protocol(la::as_blackbox(A), 0, S, {});
  const int trials = 2000;
  int accepted = 0;
  for (int t = 0; t < trials; ++t) {
    accepted += proto::run_session(run.prover, run.verifier, run.config(Mode::Interactive, t)).verdict.accepted;
  }
  const double eps = 3.0 / 101;
  CHECK(double(accepted) / trials <= eps + testing::three_sigma(eps, trials));
}

TEST_CASE("rank") {
  const PrimeField F(101);
  const ff::SampleSet S(F, 101);
  auto c = rank_certify(DenseMatrix::from_rows(F, {{1, 0, 0}, {0, 1, 0}, {0, 0, 0}}), S);
  REQUIRE(c.verdict.accepted);
  CHECK(*c.value == 2);
  CHECK(c.verdict.error_bound == rank_error_bound(3, 3, 2, S));

  c = rank_certify(DenseMatrix(F, 3, 3), S);
  REQUIRE(c.verdict.accepted);
  CHECK(*c.value == 0);
  CHECK(c.verdict.error_bound == rank_upper_error_bound(3, 3, 0, S));

  c = rank_certify(DenseMatrix::identity(F, 4), S);
  REQUIRE(c.verdict.accepted);
  CHECK(*c.value == 4);
  CHECK(c.verdict.error_bound == Rational(1, 101));

  const PrimeField G(10007);
  const ff::SampleSet SG(G, 10007);
  testing::Rng rng(2);
  for (int t = 0; t < 100; ++t) {
    const std::size_t m = 1 + rng.below(8), n = 1 + rng.below(8);
    const std::size_t r = rng.below(std::min(m, n) + 1);
    const auto A = testing::random_rank(G, m, n, r, rng, oracle::brute_rank);
    const auto cr = t % 2 ? rank_certify(A, SG) : rank_certify(la::SparseMatrix::from_dense(A), SG, {Mode::Interactive});
    REQUIRE(cr.verdict.accepted);
    CHECK(*cr.value == oracle::brute_rank(A));
    CHECK(cr.verdict.error_bound == rank_error_bound(m, n, r, SG));
  }

  // claims off by one in either direction
  const auto A = testing::random_rank(G, 6, 6, 3, rng, oracle::brute_rank);
  const auto bb = la::as_blackbox(A);
  const auto cfg = rank_protocol(bb, SG, {}).config(Mode::Interactive);
  const auto high = proto::run_session(rank_prover_claiming(bb, 4, SG, 1), rank_verifier(bb, SG), cfg);
  CHECK_FALSE(high.verdict.accepted);
  CHECK(high.verdict.reason == RejectReason::PreconditionFailed);
  const auto low = proto::run_session(rank_prover_claiming(bb, 2, SG, 1), rank_verifier(bb, SG), cfg);
  CHECK_FALSE(low.verdict.accepted);
  const auto huge = proto::run_session(rank_prover_claiming(bb, 7, SG, 1), rank_verifier(bb, SG), cfg);
  CHECK(huge.verdict.reason == RejectReason::RankOutOfRange);
}

TEST_CASE("minpoly hand examples") {
  const PrimeField F(101);
  const ff::SampleSet S(F, 101);
  const auto I2 = la::as_blackbox(DenseMatrix::identity(F, 2));
  const auto e1 = vec_of({1, 0});
  const auto cert = minpoly_certificate(*I2, e1, e1);
  CHECK(cert.H == Poly{100, 1});
  CHECK(cert.h == Poly{1});
  CHECK(cert.phi == Poly{});
  CHECK(cert.psi == Poly{1});
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    auto f = run_fixed_minpoly(I2, e1, e1, S, seed);
    REQUIRE(f.result.verdict.accepted);
    CHECK((*f.out)->H == Poly{100, 1});
    CHECK(f.result.verdict.error_bound == minpoly_error_bound(2, 1, 0, S));
  }

  const auto N = la::as_blackbox(DenseMatrix::from_rows(F, {{0, 1}, {0, 0}}));
  const auto ones = vec_of({1, 1});
  const auto cn = minpoly_certificate(*N, ones, ones);
  CHECK(cn.H == Poly{0, 0, 1});
  CHECK(cn.h == Poly{1, 2});
  auto f = run_fixed_minpoly(N, ones, ones, S, 3);
  CHECK(f.result.verdict.accepted);
  CHECK(f.result.verdict.error_bound == Rational(2 + 1 + 2 + 2 - 1, 101));

  // v = 0: the sequence is zero
  auto z = run_fixed_minpoly(N, ones, ff::Vec(2), S, 4);
  CHECK(z.result.verdict.accepted);
  CHECK((*z.out)->H == Poly{1});
}

TEST_CASE("minpoly error bound") {
  const PrimeField F(10007);
  const ff::SampleSet S(F, 10007);
  CHECK(minpoly_error_bound(6, 6, 5, S) == Rational(6 + 5 + 11, 10007));
  CHECK(minpoly_error_bound(6, 3, 2, S) == Rational(3 + 2 + 8, 10007));
  CHECK(minpoly_error_bound(4, 0, -1, S) == Rational(3, 10007));
}

TEST_CASE("minpoly agrees with the Hankel oracle") {
  const PrimeField F(10007);
  const ff::SampleSet S(F, 10007);
  testing::Rng rng(5);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 1 + rng.below(6);
    // low-rank and repeated-eigenvalue cases alongside generic ones
    DenseMatrix A = t % 3 == 0 ? testing::random_rank(F, n, n, rng.below(n + 1), rng, oracle::brute_rank)
                               : testing::random_dense(F, n, n, rng);
    if (t % 5 == 0) A = DenseMatrix::identity(F, n);
    const auto u = rng.vec(F, n), v = rng.vec(F, n);
    const auto bb = la::as_blackbox(A);
    const auto cert = minpoly_certificate(*bb, u, v);
    CHECK(cert.H == oracle::brute_minpoly_fuv(A, u, v, n));
    // phi H + psi h - 1 == 0
    const auto id = oracle::poly_add(F, oracle::poly_add(F, oracle::poly_mul(F, cert.phi, cert.H),
                                                          oracle::poly_mul(F, cert.psi, cert.h)),
                                     Poly{F.modulus() - 1});
    CHECK(id.is_zero());
    auto f = run_fixed_minpoly(bb, u, v, S, t);
    REQUIRE(f.result.verdict.accepted);
    CHECK((*f.out)->H == cert.H);
  }
}

TEST_CASE("standalone minpoly protocol") {
  const PrimeField F(10007);
  const ff::SampleSet S(F, 10007);
  testing::Rng rng(6);
  for (int t = 0; t < 50; ++t) {
    const auto A = testing::random_dense(F, 6, 6, rng);
    const auto c = minpoly_certify(t % 2 ? la::AnyMatrix(A) : la::SparseMatrix::from_dense(A), S,
                                   {t % 3 ? Mode::FiatShamir : Mode::Interactive, std::uint64_t(t)});
    REQUIRE(c.verdict.accepted);
    ff::Vec u, v;
    for (const auto& m : c.transcript.messages()) {
      if (m.label == "minpoly.u") u = std::get<ff::Vec>(m.items[0]);
      if (m.label == "minpoly.v") v = std::get<ff::Vec>(m.items[0]);
    }
    CHECK(*c.value == oracle::brute_minpoly_fuv(A, u, v, 6));
  }
  CHECK_THROWS_AS(minpoly_verifier(la::as_blackbox(DenseMatrix(F, 2, 3)), S), Error);
}

TEST_CASE("malformed minpoly certificates") {
  const PrimeField F(101);
  const ff::SampleSet S(F, 101);
  const auto A = la::as_blackbox(DenseMatrix::from_rows(F, {{1, 2}, {3, 4}}));
  const auto u = vec_of({1, 0}), v = vec_of({0, 1});
  const auto honest = minpoly_certificate(*A, u, v);

  auto c = honest;
  c.H = ff::scale(F, c.H, Scalar(2));
  CHECK(run_fixed_minpoly(A, u, v, S, 1, c).result.verdict.reason == RejectReason::DegreeViolation);
  c = honest;
  c.h = c.H;
  CHECK(run_fixed_minpoly(A, u, v, S, 1, c).result.verdict.reason == RejectReason::DegreeViolation);
  c = honest;
  c.H = ff::mul(F, c.H, Poly{1, 1, 1});
  CHECK(run_fixed_minpoly(A, u, v, S, 1, c).result.verdict.reason == RejectReason::DegreeViolation);
  c = honest;
  c.psi = ff::mul(F, c.psi, Poly{0, 0, 1});
  CHECK(run_fixed_minpoly(A, u, v, S, 1, c).result.verdict.reason == RejectReason::DegreeViolation);
  c = honest;
  c.psi = ff::add(F, c.psi, Poly{1});
  CHECK(run_fixed_minpoly(A, u, v, S, 1, c).result.verdict.reason == RejectReason::BezoutFail);
}

TEST_CASE("a forged minimal polynomial is caught at the declared rate") {
  const PrimeField F(101);
  const ff::SampleSet S(F, 101);
  testing::Rng rng(7);
  const std::size_t n = 4;
  const int trials = 2000;
  int accepted = 0;
  Rational worst = 0;
  for (int t = 0; t < trials; ++t) {
    const auto A = testing::random_dense(F, n, n, rng);
    const auto u = rng.vec(F, n), v = rng.vec(F, n);
    const auto bb = la::as_blackbox(A);
    std::optional<MinPolyCertificate> forged;
    while (!forged) forged = forge(F, minpoly_certificate(*bb, u, v), rng.nonzero(F));
    auto f = run_fixed_minpoly(bb, u, v, S, t, forged);
    accepted += f.result.verdict.accepted;
    worst = std::max(worst, minpoly_error_bound(n, forged->H.degree(), forged->h.degree(), S));
  }
  const double eps = worst.convert_to<double>();
  CHECK(double(accepted) / trials <= eps + testing::three_sigma(eps, trials));
}

TEST_CASE("determinant examples and sign") {
  const PrimeField F(101);
  const ff::SampleSet S(F, 101);
  auto c = det_certify(DenseMatrix::identity(F, 2), S);
  REQUIRE(c.verdict.accepted);
  CHECK(*c.value == Scalar(1));
  c = det_certify(DenseMatrix::from_rows(F, {{2, 1}, {1, 1}}), S);
  REQUIRE(c.verdict.accepted);
  CHECK(*c.value == Scalar(1));
  c = det_certify(DenseMatrix::from_rows(F, {{7}}), S);
  REQUIRE(c.verdict.accepted);
  CHECK(*c.value == Scalar(7));
  c = det_certify(DenseMatrix::from_rows(F, {{0, 1}, {1, 0}}), S);
  REQUIRE(c.verdict.accepted);
  CHECK(*c.value == Scalar(100));

  const PrimeField G(10007);
  const ff::SampleSet SG(G, 10007);
  testing::Rng rng(8);
  for (std::size_t n = 1; n <= 8; ++n) {
    for (int t = 0; t < 25; ++t) {
      const auto A = random_nonsingular(G, n, rng);
      const auto r = det_certify(t % 2 ? la::AnyMatrix(A) : la::SparseMatrix::from_dense(A), SG,
                                 {t % 3 ? Mode::FiatShamir : Mode::Interactive, std::uint64_t(t)});
      REQUIRE(r.verdict.accepted);
      CHECK(*r.value == oracle::brute_det_field(A));
      CHECK(r.verdict.error_bound <= det_error_bound(n, long(n) - 1, SG));
    }
  }
}

TEST_CASE("determinant of singular inputs") {
  const PrimeField G(10007);
  const ff::SampleSet SG(G, 10007);
  testing::Rng rng(9);
  // rank n - 1 still certifies det = 0
  for (int t = 0; t < 20; ++t) {
    const auto A = testing::random_rank(G, 5, 5, 4, rng, oracle::brute_rank);
    const auto r = det_certify(A, SG);
    REQUIRE(r.verdict.accepted);
    CHECK(r.value->is_zero());
  }
  const auto r = det_certify(DenseMatrix(G, 3, 3), SG);
  CHECK_FALSE(r.verdict.accepted);
  CHECK(r.verdict.reason == RejectReason::ProverFailed);
  CHECK_THROWS_AS(det_verifier(la::as_blackbox(DenseMatrix(G, 2, 3)), SG), Error);
}

TEST_CASE("a forged determinant is caught at the declared rate") {
  const PrimeField F(101);
  const ff::SampleSet S(F, 101);
  testing::Rng rng(10);
  const std::size_t n = 4;
  const int trials = 1000;
  int accepted = 0;
  for (int t = 0; t < trials; ++t) {
    const auto A = la::as_blackbox(random_nonsingular(F, n, rng));
    const auto cheat = [&](proto::ProverChannel& ch) {
      proto::RngSource prng(t);
      proto::send_protocol(ch, kDetId);
      for (;;) {
        ff::Vec d(n), u(n), v(n);
        for (auto& x : d) x = ff::sample_nonzero(S, prng);
        for (auto& x : u) x = ff::sample(S, prng);
        for (auto& x : v) x = ff::sample(S, prng);
        const auto B = la::scaled(std::make_shared<la::DiagonalScaling>(F, d), A);
        const auto honest = minpoly_certificate(*B, u, v);
        if (honest.H.degree() != long(n)) continue;
        const auto forged = forge(F, honest, Scalar(1 + prng.next_u64() % 100));
        if (!forged) continue;
        ch.send(Tag::Commit, "det.Duv", {d, u, v});
        minpoly_respond_with(ch, B, v, S, kDetId, prng, *forged);
        return;
      }
    };
    accepted += proto::run_session(cheat, det_verifier(A, S), config("det", 101, Mode::Interactive, t)).verdict.accepted;
  }
  const double eps = det_error_bound(n, long(n) - 1, S).convert_to<double>();
  CHECK(double(accepted) / trials <= eps + testing::three_sigma(eps, trials));
}

TEST_CASE("blackbox verifiers stay within a constant of the matvec cost") {
  const PrimeField F(10007);
  const ff::SampleSet S(F, 10007);
  testing::Rng rng(11);
  const std::size_t n = 256;
  const auto A = testing::random_sparse(F, n, 4, rng);
  const std::uint64_t budget = 8 * (A.mu() + n * 8 + n);
  const auto bb = la::as_blackbox(A);

  const auto det = det_protocol(bb, S, det_digest(A, S));
  const auto rd = proto::run_session(det.prover, det.verifier, det.config(Mode::Interactive));
  REQUIRE(rd.verdict.accepted);
  CHECK(rd.verifier_ops <= budget);

  const auto ns = nonsingular_protocol(bb, S, nonsingular_digest(A, S));
  const auto rn = proto::run_session(ns.prover, ns.verifier, ns.config(Mode::Interactive));
  REQUIRE(rn.verdict.accepted);
  CHECK(rn.verifier_ops <= budget);

  const auto mp = minpoly_protocol(bb, S, minpoly_digest(A, S));
  const auto rm = proto::run_session(mp.prover, mp.verifier, mp.config(Mode::Interactive));
  REQUIRE(rm.verdict.accepted);
  CHECK(rm.verifier_ops <= budget);
}
