#include <benchmark/benchmark.h>

#include "qsp/dirac.hpp"
#include "qsp/index.hpp"
#include "qsp/repn.hpp"

using namespace qsp;

static void BM_QInt(benchmark::State& state) {
  QParam q(0.5);
  for (auto _ : state)
    for (int n = 1; n <= 64; ++n) benchmark::DoNotOptimize(q_int(n, q));
}
BENCHMARK(BM_QInt);

static void BM_EnumerateTruncation(benchmark::State& state) {
  const int ell = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_truncation(ell, 8));
}
BENCHMARK(BM_EnumerateTruncation)->Arg(1)->Arg(2)->Arg(3);

static void BM_BuildPiU(benchmark::State& state) {
  QParam q(0.5);
  auto basis = BasisSpec::group(2, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(build_pi_u(1, 2, q, basis));
  state.counters["dim"] = static_cast<double>(basis->size());
}
BENCHMARK(BM_BuildPiU)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);

static void BM_CommutatorNorm(benchmark::State& state) {
  QParam q(0.5);
  const int N = static_cast<int>(state.range(0));
  auto basis = BasisSpec::group(2, N);
  SparseOperator U = build_pi_u(2, 1, q, basis);
  DiracSpec D = build_d_tilde(Domain{2, Space::group, N});
  for (auto _ : state) benchmark::DoNotOptimize(commutator_norm(D, U, 1));
}
BENCHMARK(BM_CommutatorNorm)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);

static void BM_SphereIndex(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(sphere_index(1, 0.5, {8, 12}, 2));
}
BENCHMARK(BM_SphereIndex)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
