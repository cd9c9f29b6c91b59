// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Run with a criterion number to run just that one.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include "oracle.hpp"
#include "random.hpp"
#include "vlac/certs/chain.hpp"
#include "vlac/certs/det.hpp"
#include "vlac/certs/freivalds.hpp"
#include "vlac/certs/minpoly.hpp"
#include "vlac/certs/nonsingular.hpp"
#include "vlac/certs/rank.hpp"
#include "vlac/error.hpp"
#include "vlac/lift/intdet.hpp"
#include "vlac/lift/polydet.hpp"
#include "vlac/lift/primes.hpp"
#include "vlac/proto/session.hpp"
#include "vlac/proto/transcript.hpp"

using namespace vlac;
using certs::FreivaldsOptions;
using certs::FreivaldsVariant;
using certs::ProtocolRun;
using ff::PrimeField;
using ff::SampleSet;
using la::DenseMatrix;
using proto::Mode;
using proto::RejectReason;
using testing::Rng;

namespace {

using Clock = std::chrono::steady_clock;

struct Result {
  bool pass = true;
  std::ostringstream notes;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      notes << "  failed: " << what << "\n";
    }
  }
};

std::string show(const Rational& r) {
  std::ostringstream s;
  s << r << " (~" << r.convert_to<double>() << ")";
  return s.str();
}

Rational frac(long long num, long long den) { return Rational(BigInt(num), BigInt(den)); }

std::size_t log2_ceil(std::size_t n) {
  std::size_t l = 0;
  while ((std::size_t{1} << l) < n) ++l;
  return l;
}

// Random matrix of rank exactly r.
DenseMatrix with_rank(const PrimeField& F, std::size_t m, std::size_t n, std::size_t r, Rng& rng) {
  return testing::random_rank(F, m, n, r, rng, oracle::brute_rank);
}

DenseMatrix nonsingular(const PrimeField& F, std::size_t n, Rng& rng) { return with_rank(F, n, n, n, rng); }

la::AnyMatrix maybe_sparse(const DenseMatrix& A, Rng& rng) {
  if (rng.below(2)) return la::SparseMatrix::from_dense(A);
  return A;
}

// ---- protocol instances --------------------------------------------------------

// One honest protocol instance plus what the oracle says about it.
struct Instance {
  ProtocolRun run;
  std::function<bool()> value_matches = [] { return true; };
  std::string what;
};

using Maker = std::function<Instance(const PrimeField&, std::size_t n, Rng&)>;

Instance make_matmul(const PrimeField& F, std::size_t n, Rng& rng, FreivaldsOptions opts) {
  const std::size_t m = 1 + rng.below(n), k = 1 + rng.below(n);
  const auto A = testing::random_dense(F, m, k, rng);
  const auto B = testing::random_dense(F, k, n, rng);
  auto slot = std::make_shared<std::optional<DenseMatrix>>();
  Instance in{certs::matmul_protocol(maybe_sparse(A, rng), B, SampleSet::full(F), opts, slot)};
  in.value_matches = [slot, A, B] { return *slot && **slot == oracle::matmul(A, B); };
  return in;
}

Instance make_inverse(const PrimeField& F, std::size_t n, Rng& rng) {
  const auto A = nonsingular(F, n, rng);
  auto slot = std::make_shared<std::optional<DenseMatrix>>();
  Instance in{certs::inverse_protocol(A, SampleSet::full(F), {}, slot)};
  in.value_matches = [slot, A] { return *slot && **slot == *oracle::inverse(A); };
  return in;
}

Instance make_chain(const PrimeField& F, std::size_t n, Rng& rng) {
  certs::ChainProgram p;
  for (int i = 0; i < 3; ++i) p.inputs.push_back(testing::random_dense(F, n, n, rng));
  p.steps = {{certs::ChainOperand::input(0), certs::ChainOperand::input(1)},
             {certs::ChainOperand::product(0), certs::ChainOperand::input(2)}};
  auto slot = std::make_shared<std::optional<std::vector<DenseMatrix>>>();
  const auto expect = oracle::matmul(oracle::matmul(la::to_dense(p.inputs[0]), la::to_dense(p.inputs[1])),
                                     la::to_dense(p.inputs[2]));
  Instance in{certs::chain_protocol(p, SampleSet::full(F), {}, slot)};
  in.value_matches = [slot, expect] { return *slot && (*slot)->size() == 2 && (*slot)->back() == expect; };
  return in;
}

Instance make_nonsingular(const PrimeField& F, std::size_t n, Rng& rng) {
  const auto A = maybe_sparse(nonsingular(F, n, rng), rng);
  const SampleSet S = SampleSet::full(F);
  return {certs::nonsingular_protocol(la::as_blackbox(A), S, certs::nonsingular_digest(A, S))};
}

Instance make_rank_upper(const PrimeField& F, std::size_t n, Rng& rng) {
  // honest upper bound r' with rank <= r' < min(m, n)
  const std::size_t m = std::max<std::size_t>(1, rng.below(n + 1)), cols = n;
  const std::size_t mn = std::min(m, cols);
  const std::size_t rank = rng.below(mn);
  const std::size_t claim = rank + rng.below(mn - rank);
  const auto A = maybe_sparse(with_rank(F, m, cols, rank, rng), rng);
  const SampleSet S = SampleSet::full(F);
  return {certs::rank_upper_protocol(la::as_blackbox(A), claim, S,
                                     certs::rank_digest(certs::kRankUpperId, A, S, claim))};
}

Instance make_rank(const PrimeField& F, std::size_t n, Rng& rng) {
  const std::size_t m = 1 + rng.below(n);
  const std::size_t rank = rng.below(std::min(m, n) + 1);
  const auto D = with_rank(F, m, n, rank, rng);
  const auto A = maybe_sparse(D, rng);
  const SampleSet S = SampleSet::full(F);
  auto slot = std::make_shared<std::optional<std::size_t>>();
  Instance in{certs::rank_protocol(la::as_blackbox(A), S, certs::rank_digest(certs::kRankId, A, S), 0x5eed, slot)};
  in.value_matches = [slot, D] { return *slot && **slot == oracle::brute_rank(D); };
  in.what = std::to_string(m) + "x" + std::to_string(n) + " rank " + std::to_string(rank) +
            (std::holds_alternative<la::SparseMatrix>(A) ? " sparse" : " dense") + " over GF(" +
            std::to_string(F.modulus()) + ")";
  return in;
}

// Square matrices with some structure: full rank, rank deficient, or
// diagonal with repeated eigenvalues.
DenseMatrix varied_square(const PrimeField& F, std::size_t n, Rng& rng) {
  switch (rng.below(4)) {
    case 0: return with_rank(F, n, n, rng.below(n + 1), rng);
    case 1: {
      DenseMatrix A(F, n, n);
      for (std::size_t i = 0; i < n; ++i) A(i, i) = ff::Scalar(rng.below(3));
      return A;
    }
    default: return testing::random_dense(F, n, n, rng);
  }
}

// Messages of a transcript under a label.
const proto::Message* find_message(const proto::Transcript& t, const std::string& label) {
  for (const auto& m : t.messages())
    if (m.label == label) return &m;
  return nullptr;
}

Instance make_minpoly(const PrimeField& F, std::size_t n, Rng& rng) {
  const auto D = varied_square(F, n, rng);
  const auto A = maybe_sparse(D, rng);
  const SampleSet S = SampleSet::full(F);
  auto slot = std::make_shared<std::optional<ff::Poly>>();
  return {certs::minpoly_protocol(la::as_blackbox(A), S, certs::minpoly_digest(A, S), 0x5eed, slot)};
}

Instance make_det(const PrimeField& F, std::size_t n, Rng& rng) {
  // mostly nonsingular, sometimes rank n - 1
  const auto D = rng.below(5) == 0 ? with_rank(F, n, n, n - 1, rng) : testing::random_dense(F, n, n, rng);
  const auto A = maybe_sparse(D, rng);
  const SampleSet S = SampleSet::full(F);
  auto slot = std::make_shared<std::optional<ff::Scalar>>();
  Instance in{certs::det_protocol(la::as_blackbox(A), S, certs::det_digest(A, S), 0x5eed, slot)};
  in.value_matches = [slot, D] { return *slot && **slot == oracle::brute_det_field(D); };
  return in;
}

Instance make_intdet(const PrimeField& F, std::size_t n, Rng& rng) {
  static const long long bounds[] = {9, 1000, 1000000000};
  (void)F;
  const auto A = testing::random_int(n, bounds[rng.below(3)], rng);
  auto slot = std::make_shared<std::optional<BigInt>>();
  Instance in{lift::intdet_protocol(A, lift::kDefaultPrimeBits, 0x5eed, slot)};
  in.value_matches = [slot, A] { return *slot && **slot == oracle::brute_det_int(A); };
  return in;
}

Instance make_polydet(const PrimeField& F, std::size_t n, Rng& rng) {
  const std::size_t d = rng.below(std::min<std::size_t>(3, 48 / n) + 1);
  const auto A = testing::random_poly_matrix(F, n, d, rng);
  auto slot = std::make_shared<std::optional<ff::Poly>>();
  Instance in{lift::polydet_protocol(A, SampleSet::full(F), 0x5eed, slot)};
  in.value_matches = [slot, A] {
    if (!*slot) return false;
    // compare against the oracle determinant at a few points
    const auto& F = A.field();
    for (std::uint64_t x : {std::uint64_t{0}, std::uint64_t{1}, std::uint64_t{7}, F.modulus() - 1}) {
      if (oracle::power_sum_eval(F, **slot, ff::Scalar(x)) != oracle::brute_det_field(A.evaluate(ff::Scalar(x)))) return false;
    }
    return true;
  };
  return in;
}

struct NamedMaker {
  std::string name;
  Maker make;
};

std::vector<NamedMaker> every_protocol() {
  return {
      {"matmul/geometric", [](auto& F, auto n, auto& r) { return make_matmul(F, n, r, {}); }},
      {"matmul/zero-one",
       [](auto& F, auto n, auto& r) { return make_matmul(F, n, r, {FreivaldsVariant::ZeroOne, 7}); }},
      {"inverse", make_inverse},
      {"chain", make_chain},
      {"nonsingular", make_nonsingular},
      {"rank-upper", make_rank_upper},
      {"rank", make_rank},
      {"minpoly", make_minpoly},
      {"det", make_det},
      {"intdet", make_intdet},
      {"polydet", make_polydet},
  };
}

proto::SessionResult session(const ProtocolRun& run, Mode mode, std::uint64_t seed) {
  return proto::run_session(run.prover, run.verifier, run.config(mode, seed));
}

// ---- criteria ------------------------------------------------------------------

// 1. every honest run accepts
Result completeness() {
  Result res;
  const std::vector<std::pair<std::string, Maker>> protocols = {
      {"matmul (geometric and zero-one)",
       [](auto& F, auto n, auto& r) {
         return r.below(2) ? make_matmul(F, n, r, {}) : make_matmul(F, n, r, {FreivaldsVariant::ZeroOne, 1 + unsigned(r.below(8))});
       }},
      {"nonsingular", make_nonsingular},
      {"rank upper bound", make_rank_upper},
      {"rank", make_rank},
      {"minpoly", make_minpoly},
      {"det", make_det},
      {"intdet", make_intdet},
      {"polydet", make_polydet},
  };
  const PrimeField fields[] = {PrimeField(101), PrimeField(10007)};
  Rng rng(1001);
  for (const auto& [name, make] : protocols) {
    std::size_t accepted = 0, total = 0;
    std::map<std::string, int> reasons;
    for (int t = 0; t < 1000; ++t) {
      const auto& F = fields[t % 2];
      const std::size_t n = 1 + rng.below(16);
      const auto in = make(F, n, rng);
      const Mode mode = (t / 2) % 2 ? Mode::FiatShamir : Mode::Interactive;
      const auto r = session(in.run, mode, 1 + t);
      ++total;
      if (r.verdict.accepted) {
        ++accepted;
      } else {
        ++reasons[std::string(proto::to_string(r.verdict.reason)) + ": " + r.verdict.detail +
                  (in.what.empty() ? "" : " [" + in.what + ", seed " + std::to_string(1 + t) + "]")];
      }
    }
    res.notes << "  " << name << ": " << accepted << "/" << total << " accepted\n";
    for (const auto& [why, count] : reasons) res.notes << "    " << count << " x " << why << "\n";
    res.require(accepted == total, name + " rejected an honest prover");
  }
  return res;
}

// 2. certified values equal the oracles
Result oracle_equivalence() {
  Result res;
  Rng rng(2002);
  const PrimeField fields[] = {PrimeField(101), PrimeField(10007)};
  int det_ok = 0, rank_ok = 0, minpoly_ok = 0;
  for (int t = 0; t < 200; ++t) {
    const auto& F = fields[t % 2];
    const std::size_t n = 1 + rng.below(8);
    {
      const auto in = make_det(F, n, rng);
      const auto r = session(in.run, Mode::Interactive, t);
      det_ok += r.verdict.accepted && in.value_matches();
    }
    {
      const auto in = make_rank(F, n, rng);
      const auto r = session(in.run, Mode::FiatShamir, t);
      rank_ok += r.verdict.accepted && in.value_matches();
    }
    {
      const auto D = varied_square(F, n, rng);
      const SampleSet S = SampleSet::full(F);
      auto slot = std::make_shared<std::optional<ff::Poly>>();
      const auto run = certs::minpoly_protocol(la::as_blackbox(D), S, certs::minpoly_digest(D, S), 0x5eed, slot);
      const auto r = session(run, Mode::Interactive, t);
      const auto* u = find_message(r.transcript, "minpoly.u");
      const auto* v = find_message(r.transcript, "minpoly.v");
      minpoly_ok += r.verdict.accepted && u && v && *slot &&
                    **slot == oracle::brute_minpoly_fuv(D, std::get<ff::Vec>(u->items[0]),
                                                        std::get<ff::Vec>(v->items[0]), n);
    }
  }
  res.notes << "  det " << det_ok << "/200, rank " << rank_ok << "/200, minpoly " << minpoly_ok << "/200 match\n";
  res.require(det_ok == 200 && rank_ok == 200 && minpoly_ok == 200, "certified value differs from the oracle");
  return res;
}

// 3. a single corrupted entry of C slips through at the declared rate
Result freivalds_soundness() {
  Result res;
  const PrimeField F(101);
  const SampleSet S = SampleSet::full(F);
  Rng rng(3003);
  const std::size_t n = 16, trials = 10000;
  const auto A = testing::random_dense(F, n, n, rng);
  const auto B = testing::random_dense(F, n, n, rng);
  const auto run = [&](FreivaldsOptions opts) {
    std::size_t accepted = 0;
    for (std::size_t t = 0; t < trials; ++t) {
      auto C = oracle::matmul(A, B);
      const std::size_t i = rng.below(n), j = rng.below(n);
      C(i, j) = F.add(C(i, j), rng.nonzero(F));
      auto src = proto::ChallengeSource::interactive(t + 1);
      accepted += certs::freivalds_verify(A, B, C, src, S, opts).accepted;
    }
    return double(accepted) / double(trials);
  };
  const double geo = run({});
  const double geo_limit = 15.0 / 101 + 3 * std::sqrt(0.15 * 0.85 / trials);
  const double zo = run({FreivaldsVariant::ZeroOne, 7});
  const double p7 = std::ldexp(1.0, -7);
  const double zo_limit = p7 + testing::three_sigma(p7, trials);
  res.notes << "  geometric: acceptance " << geo << " (limit " << geo_limit << ")\n";
  res.notes << "  zero-one(7): acceptance " << zo << " (limit " << zo_limit << ")\n";
  res.require(geo <= geo_limit, "geometric acceptance above limit");
  res.require(zo <= zo_limit, "zero-one acceptance above limit");
  return res;
}

// 4. an integer determinant off by k survives only if the prime divides k
Result lifting_soundness() {
  Result res;
  Rng rng(4004);
  const unsigned bits = 62;
  const auto fixed = testing::random_int(6, 9, rng);
  const auto honest = session(lift::intdet_protocol(fixed, bits), Mode::Interactive, 1);
  const Rational eps = honest.verdict.error_bound;
  const Rational two40 = Rational(BigInt(1), BigInt(1) << 40);
  res.notes << "  declared epsilon, 6x6 entries <= 9: " << show(eps) << "\n";
  res.require(honest.verdict.accepted, "honest 6x6 run rejected");
  res.require(eps > 0 && eps < two40, "declared epsilon not below 2^-40");

  const std::size_t trials = 1000;
  std::size_t accepted = 0, out_of_bounds = 0;
  Rational worst{0};
  for (std::size_t t = 0; t < trials; ++t) {
    const auto A = testing::random_int(6, 9, rng);
    const BigInt H = lift::hadamard_bound(A);
    // k uniform in [-2H, 2H] \ {0}
    const BigInt span = 4 * H + 1;
    BigInt k;
    do {
      const BigInt wide = (BigInt(rng.gen()) << 64) | BigInt(rng.gen());
      k = wide % span - 2 * H;
    } while (k == 0);
    const BigInt cheat = oracle::brute_det_int(A) + k;
    ProtocolRun run;
    run.protocol_id = std::string(lift::kIntDetId);
    run.instance_digest = lift::intdet_digest(A, bits);
    run.field_modulus = 0;
    run.prover = lift::intdet_prover_committing(A, cheat, bits, 0x5eed + t);
    run.verifier = lift::intdet_verifier(A, bits);
    const auto r = session(run, t % 2 ? Mode::FiatShamir : Mode::Interactive, t + 1);
    accepted += r.verdict.accepted;
    out_of_bounds += !r.verdict.accepted && r.verdict.reason == RejectReason::CommitmentOutOfBounds;
    const auto honest_eps = session(lift::intdet_protocol(A, bits), Mode::Interactive, t + 1).verdict.error_bound;
    if (honest_eps > worst) worst = honest_eps;
  }
  const double limit = worst.convert_to<double>() + testing::three_sigma(worst.convert_to<double>(), trials);
  res.notes << "  " << accepted << "/" << trials << " cheating commitments accepted (" << out_of_bounds
            << " rejected by the Hadamard bound); limit " << limit << "\n";
  res.require(double(accepted) / trials <= limit, "cheating commitment accepted too often");
  return res;
}

// 5. the verifier does far less work than the prover
Result cheapness() {
  Result res;
  {
    const PrimeField F((1ull << 62) - 57);
    Rng rng(5005);
    const std::size_t n = 1024;
    const auto A = testing::random_dense(F, n, n, rng);
    const auto B = testing::random_dense(F, n, n, rng);
    const auto run = certs::matmul_protocol(A, B, SampleSet::full(F), {});
    const auto r = session(run, Mode::Interactive, 1);
    const double ratio = r.verifier_seconds / r.prover_seconds;
    res.notes << "  matmul n=1024: prover " << r.prover_seconds << " s, verifier " << r.verifier_seconds
              << " s, ratio " << ratio << " (limit 0.05)\n";
    res.require(r.verdict.accepted, "matmul rejected");
    res.require(ratio <= 0.05, "matmul verifier/prover ratio above 0.05");
  }
  {
    const PrimeField F(1000003);
    Rng rng(5006);
    const std::size_t n = 4096;
    const auto A = testing::random_sparse(F, n, 10, rng);
    const SampleSet S = SampleSet::full(F);
    const auto run = certs::det_protocol(la::as_blackbox(A), S, certs::det_digest(A, S));
    const auto r = session(run, Mode::Interactive, 1);
    const std::uint64_t mu = A.mu();
    const std::uint64_t limit = 8 * (mu + n * log2_ceil(n) + n);
    res.notes << "  sparse det n=4096 (" << A.nnz() << " nonzeros): verifier ops " << r.verifier_ops << " (limit "
              << limit << "), prover " << r.prover_seconds << " s, verifier " << r.verifier_seconds << " s\n";
    res.require(r.verdict.accepted, "sparse det rejected");
    res.require(r.verifier_ops <= limit, "verifier op count above limit");
  }
  return res;
}

// 6. recorded transcripts replay, and tampering is caught
Result fiat_shamir_integrity() {
  Result res;
  const PrimeField F(10007);
  Rng rng(6006);
  for (const auto& [name, make] : every_protocol()) {
    const auto in = make(F, 6, rng);
    const auto config = in.run.config(Mode::FiatShamir);
    const auto recorded = proto::prove_noninteractive(in.run.prover, config);
    const auto live = session(in.run, Mode::FiatShamir, 1);
    const auto bytes = proto::serialize(recorded);
    const auto replay = proto::verify_recorded(proto::deserialize(bytes), in.run.verifier, config);
    const bool same = live.verdict.accepted && replay.accepted && replay.error_bound == live.verdict.error_bound &&
                      live.transcript == recorded;
    res.require(same, name + ": replay differs from the live run");

    // (b) single-byte corruptions
    std::size_t rejected = 0, malformed = 0, accepted = 0;
    for (int t = 0; t < 500; ++t) {
      auto c = bytes;
      const std::size_t at = rng.below(c.size());
      c[at] ^= static_cast<std::uint8_t>(1 + rng.below(255));
      proto::Transcript tr;
      try {
        tr = proto::deserialize(c);
      } catch (const Error&) {
        ++malformed;
        continue;
      }
      const auto v = proto::verify_recorded(tr, in.run.verifier, config);
      if (v.accepted) {
        ++accepted;
      } else {
        ++rejected;
      }
    }
    res.require(accepted == 0, name + ": a corrupted transcript was accepted");

    // (c) substituted challenge
    proto::Transcript forged(recorded.protocol_id(), recorded.instance_digest(), recorded.mode(),
                             recorded.field_modulus());
    bool substituted = false;
    for (auto m : recorded.messages()) {
      if (!substituted && m.tag == proto::Tag::Challenge) {
        std::visit(
            [&](auto& x) {
              using T = std::decay_t<decltype(x)>;
              if constexpr (std::is_same_v<T, ff::Vec>) {
                // zero-one challenges are bits
                x[0] = name == "matmul/zero-one" ? ff::Scalar(1 - x[0].value)
                                                 : ff::Scalar((x[0].value + 1) % F.modulus());
                substituted = true;
              } else if constexpr (std::is_same_v<T, std::uint64_t>) {
                x ^= 2;
                substituted = true;
              }
            },
            m.items[0]);
      }
      forged.append(std::move(m));
    }
    const auto v = proto::verify_recorded(forged, in.run.verifier, config);
    res.require(substituted && !v.accepted && v.reason == RejectReason::ChallengeMismatch,
                name + ": substituted challenge gave " + std::string(proto::to_string(v.reason)));
    res.notes << "  " << name << ": replay " << (same ? "identical" : "DIFFERS") << ", corruptions " << malformed
              << " malformed + " << rejected << " rejected + " << accepted << " accepted, substituted challenge -> "
              << (v.accepted ? "accept" : proto::to_string(v.reason)) << "\n";
  }
  return res;
}

// 7. declared error equals the closed form
Result epsilon_accounting() {
  Result res;
  Rng rng(7007);
  for (const auto& [n, s] : {std::pair<std::size_t, long long>{4, 101}, {16, 10007}}) {
    const PrimeField F(static_cast<std::uint64_t>(s));
    const SampleSet S = SampleSet::full(F);
    const long long N = static_cast<long long>(n);
    const std::size_t L = log2_ceil(n);  // butterfly layers of the padded size
    const auto minpoly_form = [&](long dH, long dh) {
      return frac(dH + std::max(dh, 0L) + std::max(dH + N - 1, 0LL), s);
    };
    const auto degrees = [](const proto::Transcript& t, const std::string& label) {
      const auto* m = find_message(t, label);
      if (!m) return std::pair<long, long>{-2, -2};
      return std::pair<long, long>{std::get<ff::Poly>(m->items[0]).degree(), std::get<ff::Poly>(m->items[1]).degree()};
    };
    const auto rank_upper_form = [&](long long r) { return frac((r + 2) * static_cast<long long>(L) + 1, s); };

    struct Check {
      std::string name;
      ProtocolRun run;
      std::function<Rational(const proto::Transcript&)> form;
    };
    std::vector<Check> checks;
    const auto A = testing::random_dense(F, n, n, rng);
    const auto B = testing::random_dense(F, n, n, rng);
    const auto inv = nonsingular(F, n, rng);
    checks.push_back({"matmul/geometric", certs::matmul_protocol(A, B, S, {}),
                      [&](auto&) { return frac(N - 1, s); }});
    checks.push_back({"matmul/zero-one(7)", certs::matmul_protocol(A, B, S, {FreivaldsVariant::ZeroOne, 7}),
                      [](auto&) { return frac(1, 128); }});
    checks.push_back({"inverse", certs::inverse_protocol(inv, S, {}), [&](auto&) { return frac(N - 1, s); }});
    {
      certs::ChainProgram p{{A, B, inv},
                            {{certs::ChainOperand::input(0), certs::ChainOperand::input(1)},
                             {certs::ChainOperand::product(0), certs::ChainOperand::input(2)}}};
      checks.push_back({"chain (2 products)", certs::chain_protocol(p, S, {}), [&](auto&) { return frac(2 * (N - 1), s); }});
    }
    checks.push_back({"nonsingular", certs::nonsingular_protocol(la::as_blackbox(inv), S, certs::nonsingular_digest(inv, S)),
                      [&](auto&) { return frac(1, s); }});
    const std::size_t half = n / 2;
    const auto low = with_rank(F, n, n, half, rng);
    checks.push_back({"rank-upper r=n/2",
                      certs::rank_upper_protocol(la::as_blackbox(low), half, S,
                                                 certs::rank_digest(certs::kRankUpperId, low, S, half)),
                      [&](auto&) { return rank_upper_form(static_cast<long long>(half)); }});
    checks.push_back({"rank of rank n/2",
                      certs::rank_protocol(la::as_blackbox(low), S, certs::rank_digest(certs::kRankId, low, S)),
                      [&](auto&) { return frac(1, s) + rank_upper_form(static_cast<long long>(half)); }});
    checks.push_back({"rank of full rank",
                      certs::rank_protocol(la::as_blackbox(inv), S, certs::rank_digest(certs::kRankId, inv, S)),
                      [&](auto&) { return frac(1, s); }});
    checks.push_back({"minpoly", certs::minpoly_protocol(la::as_blackbox(A), S, certs::minpoly_digest(A, S)),
                      [&](const proto::Transcript& t) {
                        const auto [dH, dh] = degrees(t, "minpoly.Hh");
                        return minpoly_form(dH, dh);
                      }});
    checks.push_back({"det", certs::det_protocol(la::as_blackbox(A), S, certs::det_digest(A, S)),
                      [&](const proto::Transcript& t) { return minpoly_form(N, degrees(t, "det.Hh").second); }});
    const auto P = testing::random_poly_matrix(F, n, 2, rng);
    checks.push_back({"polydet d=2", lift::polydet_protocol(P, S), [&](const proto::Transcript& t) {
                        return frac(N * static_cast<long long>(P.degree()), s) +
                               minpoly_form(N, degrees(t, "polydet.det.Hh").second);
                      }});
    const auto Z = testing::random_int(n, 9, rng);
    checks.push_back({"intdet (62-bit prime)", lift::intdet_protocol(Z), [&](const proto::Transcript& t) {
                        const auto* pm = find_message(t, "intdet.p");
                        const auto p = static_cast<long long>(std::get<std::uint64_t>(pm->items[0]));
                        const auto [bad, count] = std::pair{lift::bad_prime_bound(lift::hadamard_bound(Z), 62),
                                                            lift::prime_count_lower_bound(62)};
                        return Rational(BigInt(bad), count) +
                               Rational(BigInt(N + std::max(degrees(t, "intdet.det.Hh").second, 0L) + 2 * N - 1), BigInt(p));
                      }});

    for (auto& c : checks) {
      const auto r = session(c.run, Mode::Interactive, 1);
      const Rational form = c.form(r.transcript);
      const bool ok = r.verdict.accepted && r.verdict.error_bound == form;
      res.notes << "  (" << n << "," << s << ") " << c.name << ": declared " << r.verdict.error_bound << ", closed form "
                << form << (ok ? "" : "  MISMATCH") << "\n";
      res.require(ok, c.name + " at (" + std::to_string(n) + "," + std::to_string(s) + ")");
    }
  }
  return res;
}

// 8. signed determinant for n = 1..8
Result det_sign() {
  Result res;
  Rng rng(8008);
  const PrimeField fields[] = {PrimeField(101), PrimeField(10007)};
  for (std::size_t n = 1; n <= 8; ++n) {
    int ok = 0;
    for (int t = 0; t < 100; ++t) {
      const auto& F = fields[t % 2];
      const auto A = testing::random_dense(F, n, n, rng);
      const auto c = certs::det_certify(A, SampleSet::full(F), {Mode::Interactive, std::uint64_t(t + 1)});
      ok += c.verdict.accepted && c.value && *c.value == oracle::brute_det_field(A);
    }
    res.notes << "  n=" << n << ": " << ok << "/100\n";
    res.require(ok == 100, "n=" + std::to_string(n) + " determinant differs from the oracle");
  }
  return res;
}

struct Criterion {
  int id;
  std::string title;
  Result (*run)();
};

}  // namespace

int main(int argc, char** argv) {
  const Criterion criteria[] = {
      {1, "perfect completeness, 1000 honest runs per protocol", completeness},
      {2, "oracle equivalence of det, rank, minpoly (200 each)", oracle_equivalence},
      {3, "Freivalds soundness on a single corrupted entry", freivalds_soundness},
      {4, "lifting soundness of cheating integer determinants", lifting_soundness},
      {5, "verifier cheapness", cheapness},
      {6, "Fiat-Shamir replay and tamper detection", fiat_shamir_integrity},
      {7, "declared error equals its closed form", epsilon_accounting},
      {8, "signed determinant, n = 1..8", det_sign},
  };
  std::vector<int> only;
  for (int i = 1; i < argc; ++i) only.push_back(std::atoi(argv[i]));

  bool all = true;
  for (const auto& c : criteria) {
    if (!only.empty() && std::find(only.begin(), only.end(), c.id) == only.end()) continue;
    const auto t0 = Clock::now();
    Result r;
    try {
      r = c.run();
    } catch (const std::exception& e) {
      r.pass = false;
      r.notes << "  exception: " << e.what() << "\n";
    }
    const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    std::cout << r.notes.str();
    std::printf("%s criterion %d: %s (%.1f s)\n", r.pass ? "PASS" : "FAIL", c.id, c.title.c_str(), secs);
    std::fflush(stdout);
    all = all && r.pass;
  }
  return all ? 0 : 1;
}
