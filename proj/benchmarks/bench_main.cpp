#include <condent/condent.hpp>

#include <benchmark/benchmark.h>

using namespace condent;

namespace {

JointDist random_joint(std::size_t d, std::size_t n, std::uint64_t seed) {
    Rng rng(seed);
    Matrix m(d, n);
    const std::vector<int> c = rng.composition(1 << 16, d * n);
    for (std::size_t k = 0; k < d * n; ++k) m(k / n, k % n) = c[k] / 65536.0;
    return JointDist(std::move(m));
}

void BM_HBulk(benchmark::State& state) {
    const JointDist j = random_joint(state.range(0), state.range(0), 1);
    const BulkParam p(0.5, DiscreteMeasure({{0.5, 0.5}, {2.0, 0.5}}));
    for (auto _ : state) benchmark::DoNotOptimize(h_bulk(j, p));
}
BENCHMARK(BM_HBulk)->Arg(4)->Arg(32)->Arg(256);

void BM_LargeSample(benchmark::State& state) {
    const JointDist p = random_joint(4, 4, 2);
    const JointDist q = random_joint(4, 4, 3);
    const Grid g = grid_by_name("medium");
    for (auto _ : state) benchmark::DoNotOptimize(large_sample_verdict(p, q, g));
}
BENCHMARK(BM_LargeSample);

void BM_Oracle(benchmark::State& state) {
    const std::size_t d = state.range(0);
    const JointDist p = random_joint(d, 1, 4);
    const JointDist q = apply_channel(p, sample_channel(d, 1, 1, 5));
    for (auto _ : state) benchmark::DoNotOptimize(cond_majorizes_oracle(p, q));
}
BENCHMARK(BM_Oracle)->Arg(3)->Arg(4)->Arg(5);

void BM_Canonicalize(benchmark::State& state) {
    const JointDist j = random_joint(state.range(0), state.range(0), 6);
    for (auto _ : state) benchmark::DoNotOptimize(canonicalize(j));
}
BENCHMARK(BM_Canonicalize)->Arg(8)->Arg(64);

void BM_Curvature(benchmark::State& state) {
    const BulkParam p(-0.3, DiscreteMeasure::point(2.0));
    const Direction dir = counterexample_beta0_positive(p, static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(second_derivative(dir, p));
}
BENCHMARK(BM_Curvature)->Arg(100)->Arg(1000);

}  // namespace

BENCHMARK_MAIN();
