#include <benchmark/benchmark.h>

#include <functional>

#include "treesub/levy.hpp"
#include "treesub/map.hpp"
#include "treesub/rmq.hpp"
#include "treesub/rng.hpp"
#include "treesub/snake.hpp"

using namespace treesub;

static void BM_SparseTableBuild(benchmark::State& state) {
    size_t n = static_cast<size_t>(state.range(0));
    CounterRng rng(1, 0);
    std::vector<double> v(n);
    for (auto& x : v) x = rng.normal();
    for (auto _ : state) {
        SparseTable<std::less<>> t(v);
        benchmark::DoNotOptimize(t.size());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SparseTableBuild)->Range(1 << 12, 1 << 20);

static void BM_SparseTableQuery(benchmark::State& state) {
    size_t n = static_cast<size_t>(state.range(0));
    CounterRng rng(2, 0);
    std::vector<double> v(n);
    for (auto& x : v) x = rng.normal();
    SparseTable<std::less<>> t(v);
    for (auto _ : state) {
        size_t i = rng.next_u64() % n, j = rng.next_u64() % n;
        if (i > j) std::swap(i, j);
        benchmark::DoNotOptimize(t.arg(i, j));
    }
}
BENCHMARK(BM_SparseTableQuery)->Range(1 << 12, 1 << 20);

static void BM_SnakeExcursion(benchmark::State& state) {
    size_t steps = static_cast<size_t>(state.range(0));
    SnakeConfig cfg = SnakeConfig::with_dt(1.0 / static_cast<double>(steps), 3);
    cfg.steps = steps;
    auto life = sample_excursion(cfg, steps);
    for (auto _ : state) {
        auto tr = run_snake(cfg, life);
        benchmark::DoNotOptimize(tr.zhat.data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SnakeExcursion)->Range(1 << 12, 1 << 18);

static void BM_DiscreteHeight(benchmark::State& state) {
    auto w = sample_walk(1.5, static_cast<size_t>(state.range(0)), 4);
    for (auto _ : state) {
        auto h = discrete_height(w);
        benchmark::DoNotOptimize(h.H.data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_DiscreteHeight)->Range(1 << 12, 1 << 20);

static void BM_DCirc(benchmark::State& state) {
    size_t steps = static_cast<size_t>(state.range(0));
    SnakeConfig cfg = SnakeConfig::with_dt(1.0 / static_cast<double>(steps), 5);
    cfg.steps = steps;
    MapView m(run_snake(cfg, sample_excursion(cfg, steps)));
    CounterRng rng(5, 1);
    for (auto _ : state) {
        size_t s = rng.next_u64() % m.size(), u = rng.next_u64() % m.size();
        benchmark::DoNotOptimize(d_circ(m, s, u));
    }
}
BENCHMARK(BM_DCirc)->Range(1 << 12, 1 << 18);

BENCHMARK_MAIN();
