#include <benchmark/benchmark.h>

#include <random>

#include "mfrep/amplify.hpp"
#include "mfrep/chain.hpp"
#include "mfrep/doubling.hpp"
#include "mfrep/matkernel.hpp"

namespace {

mfrep::cmatrix pseudo_random_matrix(int n, unsigned seed) {
  std::mt19937_64 rng(seed);
  mfrep::cmatrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      m(i, j) = mfrep::cplx(static_cast<double>(rng() >> 11) * 0x1.0p-53 - 0.5,
                            static_cast<double>(rng() >> 11) * 0x1.0p-53 - 0.5);
  return m;
}

void bm_op_norm(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const mfrep::cmatrix m = pseudo_random_matrix(n, 42);
  for (auto _ : state) benchmark::DoNotOptimize(mfrep::op_norm(m));
}
BENCHMARK(bm_op_norm)->Arg(31)->Arg(127)->Arg(511);

void bm_block_product(benchmark::State& state) {
  const int bd = static_cast<int>(state.range(0));
  const int count = 15;
  std::vector<mfrep::cmatrix> blocks;
  for (int i = 0; i < count; ++i) {
    mfrep::eigendata ed;
    ed.frame = mfrep::cmatrix::Identity(bd, bd);
    std::mt19937_64 rng(static_cast<unsigned>(i));
    ed.angles.resize(static_cast<std::size_t>(bd));
    for (double& a : ed.angles) a = static_cast<double>(rng() >> 11) * 0x1.0p-53 * mfrep::two_pi;
    blocks.push_back(mfrep::unitary_matrix::from_eigendata(std::move(ed)).entries());
  }
  const mfrep::block_unitary a = mfrep::block_unitary::block_diagonal(blocks);
  const mfrep::block_unitary b = mfrep::block_unitary::shift(bd, count, 1);
  for (auto _ : state) benchmark::DoNotOptimize(b.adjoint() * a * b);
}
BENCHMARK(bm_block_product)->Arg(31)->Arg(127);

void bm_cycle_census(benchmark::State& state) {
  const long long n = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(mfrep::cycle_structure(n));
}
BENCHMARK(bm_cycle_census)->Arg(8191)->Arg(131071)->Arg(1048575);

void bm_chain_defect(benchmark::State& state) {
  const int p = static_cast<int>(state.range(0));
  for (auto _ : state) {
    mfrep::chain_rep rep(p, 1);
    benchmark::DoNotOptimize(rep.max_defect());
  }
}
BENCHMARK(bm_chain_defect)->Arg(3)->Arg(5)->Arg(7);

void bm_gamma(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::mt19937_64 rng(7);
  std::vector<double> angles(static_cast<std::size_t>(n));
  for (double& a : angles) a = static_cast<double>(rng() >> 11) * 0x1.0p-53 * mfrep::two_pi;
  const mfrep::unitary_matrix u = mfrep::unitary_matrix::diagonal(angles);
  for (auto _ : state) benchmark::DoNotOptimize(mfrep::gamma(u));
}
BENCHMARK(bm_gamma)->Arg(8)->Arg(16)->Arg(32);

}  // namespace

BENCHMARK_MAIN();
