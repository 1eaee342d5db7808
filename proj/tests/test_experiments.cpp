#include <doctest.h>

#include <cmath>

#include "treesub/experiments.hpp"
#include "treesub/snake.hpp"
#include "treesub/stats.hpp"

using namespace treesub;

TEST_CASE("lifetime maxima: lattice excursion reaches m dh with probability 1/m") {
    const double dh = 0.05;
    const size_t n = 200000;
    auto s = lifetime_maxima(dh, 4, n, 1.0);
    REQUIRE(s.maxima.size() == n);
    CHECK(s.local_time == doctest::Approx(2.0 * dh * static_cast<double>(n)));
    for (int m : {2, 5, 10}) {
        size_t c = 0;
        for (double x : s.maxima) c += x >= m * dh - 1e-12;
        double p = 1.0 / m;
        double se = std::sqrt(p * (1.0 - p) / static_cast<double>(n));
        CHECK(std::abs(static_cast<double>(c) / static_cast<double>(n) - p) <= 4.0 * se);
    }
}

TEST_CASE("walk root offspring law against generating-function iteration") {
    // gamma = 3/2, spacing 8: P(0) and P(1) of the root offspring count given
    // that the root exists, from iterating f(s) = s + (1 - s)^(3/2) / (3/2)
    const double p0 = 0.6008710099466099, p1 = 0.24132977023490257;
    auto s = walk_root_offspring(1.5, 21, 8, 40000, 1ULL << 40);
    REQUIRE(s.trees == 40000);
    REQUIRE(s.hist.size() >= 2);
    double n = static_cast<double>(s.trees);
    double f0 = static_cast<double>(s.hist[0]) / n, f1 = static_cast<double>(s.hist[1]) / n;
    CHECK(std::abs(f0 - p0) <= 4.0 * std::sqrt(p0 * (1 - p0) / n));
    CHECK(std::abs(f1 - p1) <= 4.0 * std::sqrt(p1 * (1 - p1) / n));
}

TEST_CASE("exit count sampler replays the reflected run") {
    const double dh = 0.01, h = 0.1;
    const std::uint64_t seed = 6;
    SnakeConfig cfg = SnakeConfig::with_dt(dh * dh, seed);
    cfg.mode = SnakeMode::ReflectedRun;
    cfg.total_time = 2e6 * cfg.dt;
    auto run = run_reflected(cfg);

    // unreachable target: no pruning, so every exit vertex is visited
    auto all = exit_count_sample(dh, seed, h, 1e6, 1, 1000000);
    REQUIRE(all.excursions <= run.traces.size());
    std::uint64_t exits = 0;
    for (size_t i = 0; i < all.excursions; ++i) exits += excursions_outside(run.traces[i], h).size();
    CHECK(all.hit_marks.empty());
    CHECK(all.exits == exits);
    CHECK(all.total_mass == doctest::Approx(excursion_local_time(dh) * static_cast<double>(exits)));

    // the first hit: its mark is the exit mass before its exit vertex
    const double eps = 0.2;
    auto first = exit_count_sample(dh, seed, h, eps, 1, 1ULL << 40);
    REQUIRE(first.hit_marks.size() == 1);
    std::uint64_t before = 0;
    bool found = false;
    for (const auto& t : run.traces) {
        for (const auto& e : excursions_outside(t, h)) {
            if (e.extreme >= h + eps) {
                found = true;
                break;
            }
            ++before;
        }
        if (found) break;
    }
    REQUIRE(found);
    CHECK(first.hit_marks[0] == doctest::Approx(excursion_local_time(dh) * static_cast<double>(before)));
}

TEST_CASE("stable walk excursions") {
    auto ex = stable_walk_excursions(1.5, 3, 100, 400, 20);
    REQUIRE(ex.size() == 20);
    for (const auto& h : ex) {
        CHECK(h.size() >= 101);
        CHECK(h.size() <= 401);
        CHECK(h.front() == 0);
        CHECK(h.back() == 0);
        for (size_t i = 1; i + 1 < h.size(); ++i) REQUIRE(h[i] >= 1);
        for (size_t i = 1; i < h.size(); ++i) REQUIRE(h[i] <= h[i - 1] + 1);
    }
}
