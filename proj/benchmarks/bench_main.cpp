#include <benchmark/benchmark.h>

#include <random>

#include "sigmalab/dyadic.hpp"
#include "sigmalab/lattice.hpp"
#include "sigmalab/metric.hpp"
#include "sigmalab/projection.hpp"

using namespace sigmalab;

namespace {

Partition random_partition(std::mt19937_64& rng, std::size_t n) {
    std::uniform_int_distribution<int> pick(0, static_cast<int>(n / 2));
    std::vector<int> block(n);
    for (int& x : block) x = pick(rng);
    return Partition(std::move(block));
}

void bm_cond_exp(benchmark::State& state) {
    std::size_t n = static_cast<std::size_t>(state.range(0));
    std::mt19937_64 rng(1);
    auto s = FiniteProbSpace::uniform(n);
    auto b = random_partition(rng, n);
    RandVec f(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) f[i] = double(i % 17) - 8.0;
    for (auto _ : state) benchmark::DoNotOptimize(cond_exp(s, f, b));
}
BENCHMARK(bm_cond_exp)->Arg(64)->Arg(1024)->Arg(16384);

void bm_operator_norm_dev(benchmark::State& state) {
    std::size_t n = static_cast<std::size_t>(state.range(0));
    std::mt19937_64 rng(2);
    auto s = FiniteProbSpace::uniform(n);
    auto a = operator_of(s, random_partition(rng, n));
    auto b = operator_of(s, random_partition(rng, n));
    for (auto _ : state) benchmark::DoNotOptimize(operator_norm_dev(a, b));
}
BENCHMARK(bm_operator_norm_dev)->Arg(32)->Arg(128)->Arg(512);

void bm_d_kappa(benchmark::State& state) {
    std::size_t n = static_cast<std::size_t>(state.range(0));
    std::mt19937_64 rng(3);
    auto s = FiniteProbSpace::uniform(n);
    auto fam = TestFamily::atoms_pairs(s);
    auto a = random_partition(rng, n);
    auto b = random_partition(rng, n);
    for (auto _ : state) benchmark::DoNotOptimize(d_kappa(s, a, b, fam));
}
BENCHMARK(bm_d_kappa)->Arg(16)->Arg(32)->Arg(64);

void bm_join_meet(benchmark::State& state) {
    std::size_t n = static_cast<std::size_t>(state.range(0));
    std::mt19937_64 rng(4);
    auto a = random_partition(rng, n);
    auto b = random_partition(rng, n);
    for (auto _ : state) {
        benchmark::DoNotOptimize(join(a, b));
        benchmark::DoNotOptimize(meet(a, b));
    }
}
BENCHMARK(bm_join_meet)->Arg(64)->Arg(1024)->Arg(16384);

void bm_claim1_trace(benchmark::State& state) {
    int k = static_cast<int>(state.range(0));
    DyadicSpace space(k);
    auto f = g0_exact(space);
    std::uint64_t nmax = (std::uint64_t(1) << k) - 1;
    for (auto _ : state) benchmark::DoNotOptimize(claim1_trace(space, 1, nmax, f));
}
BENCHMARK(bm_claim1_trace)->Arg(8)->Arg(10)->Arg(12);

}  // namespace

BENCHMARK_MAIN();
