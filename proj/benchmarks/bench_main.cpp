#include <benchmark/benchmark.h>

#include <algorithm>
#include <random>

#include "vlac/certs/det.hpp"
#include "vlac/certs/freivalds.hpp"
#include "vlac/certs/rank.hpp"
#include "vlac/ff/sequence.hpp"
#include "vlac/la/blackbox.hpp"
#include "vlac/la/dense.hpp"
#include "vlac/la/sparse.hpp"

namespace {

using namespace vlac;
using ff::PrimeField;
using ff::Scalar;
using ff::Vec;

constexpr std::uint64_t kPrime = 1000003;

Vec random_vec(const PrimeField& F, std::size_t n, std::mt19937_64& gen) {
  Vec v(n);
  for (auto& x : v) x = F.from_uint(gen());
  return v;
}

la::DenseMatrix random_dense(const PrimeField& F, std::size_t m, std::size_t n, std::mt19937_64& gen) {
  la::DenseMatrix A(F, m, n);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) A(i, j) = F.from_uint(gen());
  return A;
}

// Identity plus a few random entries per row, so it is very likely nonsingular.
la::SparseMatrix random_sparse(const PrimeField& F, std::size_t n, std::size_t per_row, std::mt19937_64& gen) {
  std::vector<la::Triplet> t;
  for (std::size_t i = 0; i < n; ++i) {
    t.push_back({i, i, F.from_uint(1 + gen() % (F.modulus() - 1))});
    for (std::size_t k = 0; k < per_row; ++k) {
      const std::size_t j = (i + 1 + gen() % (n - 1)) % n;
      if (j == i) continue;
      t.push_back({i, j, F.from_uint(gen())});
    }
  }
  std::sort(t.begin(), t.end(), [](auto& a, auto& b) { return a.row != b.row ? a.row < b.row : a.col < b.col; });
  t.erase(std::unique(t.begin(), t.end(), [](auto& a, auto& b) { return a.row == b.row && a.col == b.col; }),
          t.end());
  return la::SparseMatrix::from_triplets(F, n, n, std::move(t));
}

void BM_FieldMulAdd(benchmark::State& state) {
  const PrimeField F(kPrime);
  std::mt19937_64 gen(1);
  const Vec a = random_vec(F, 4096, gen), b = random_vec(F, 4096, gen);
  for (auto _ : state) {
    Scalar acc = F.zero();
    for (std::size_t i = 0; i < a.size(); ++i) acc = F.fma(a[i], b[i], acc);
    benchmark::DoNotOptimize(acc);
  }
  state.SetItemsProcessed(state.iterations() * a.size());
}
BENCHMARK(BM_FieldMulAdd);

void BM_DenseMatvec(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const PrimeField F(kPrime);
  std::mt19937_64 gen(2);
  const auto A = random_dense(F, n, n, gen);
  const Vec x = random_vec(F, n, gen);
  for (auto _ : state) benchmark::DoNotOptimize(la::matvec(A, x));
}
BENCHMARK(BM_DenseMatvec)->Arg(256)->Arg(1024);

void BM_SparseMatvec(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const PrimeField F(kPrime);
  std::mt19937_64 gen(3);
  const auto A = random_sparse(F, n, 4, gen);
  const Vec x = random_vec(F, n, gen);
  for (auto _ : state) benchmark::DoNotOptimize(la::matvec(A, x));
}
BENCHMARK(BM_SparseMatvec)->Arg(4096)->Arg(65536);

void BM_BerlekampMassey(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const PrimeField F(kPrime);
  std::mt19937_64 gen(4);
  const Vec seq = random_vec(F, 2 * n, gen);
  for (auto _ : state) benchmark::DoNotOptimize(ff::berlekamp_massey(F, seq));
}
BENCHMARK(BM_BerlekampMassey)->Arg(256)->Arg(1024);

// Prover and verifier halves of a Fiat-Shamir run, timed separately.
void prove_bench(benchmark::State& state, const certs::ProtocolRun& run) {
  const auto cfg = run.config(proto::Mode::FiatShamir);
  for (auto _ : state) benchmark::DoNotOptimize(proto::prove_noninteractive(run.prover, cfg));
}

void verify_bench(benchmark::State& state, const certs::ProtocolRun& run) {
  const auto cfg = run.config(proto::Mode::FiatShamir);
  const auto t = proto::prove_noninteractive(run.prover, cfg);
  for (auto _ : state) {
    const auto v = proto::verify_recorded(t, run.verifier, cfg);
    if (!v.accepted) state.SkipWithError("honest transcript rejected");
  }
}

certs::ProtocolRun matmul_run(std::size_t n) {
  const PrimeField F(kPrime);
  std::mt19937_64 gen(5);
  return certs::matmul_protocol(random_dense(F, n, n, gen), random_dense(F, n, n, gen), ff::SampleSet::full(F), {});
}

void BM_MatmulProve(benchmark::State& state) { prove_bench(state, matmul_run(state.range(0))); }
void BM_MatmulVerify(benchmark::State& state) { verify_bench(state, matmul_run(state.range(0))); }
BENCHMARK(BM_MatmulProve)->Arg(128)->Arg(512)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MatmulVerify)->Arg(128)->Arg(512)->Unit(benchmark::kMillisecond);

certs::ProtocolRun det_run(std::size_t n) {
  const PrimeField F(kPrime);
  std::mt19937_64 gen(6);
  const la::AnyMatrix A = random_sparse(F, n, 4, gen);
  const auto S = ff::SampleSet::full(F);
  return certs::det_protocol(la::as_blackbox(A), S, certs::det_digest(A, S));
}

void BM_SparseDetProve(benchmark::State& state) { prove_bench(state, det_run(state.range(0))); }
void BM_SparseDetVerify(benchmark::State& state) { verify_bench(state, det_run(state.range(0))); }
BENCHMARK(BM_SparseDetProve)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SparseDetVerify)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);

certs::ProtocolRun rank_run(std::size_t n) {
  const PrimeField F(kPrime);
  std::mt19937_64 gen(7);
  const la::AnyMatrix A = random_sparse(F, n, 3, gen);
  const auto S = ff::SampleSet::full(F);
  return certs::rank_protocol(la::as_blackbox(A), S, certs::rank_digest(certs::kRankId, A, S));
}

void BM_SparseRankProve(benchmark::State& state) { prove_bench(state, rank_run(state.range(0))); }
void BM_SparseRankVerify(benchmark::State& state) { verify_bench(state, rank_run(state.range(0))); }
BENCHMARK(BM_SparseRankProve)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SparseRankVerify)->Arg(256)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
