#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "treesub/gw.hpp"
#include "treesub/levy.hpp"
#include "treesub/looptree.hpp"
#include "treesub/map.hpp"
#include "treesub/snake.hpp"

using namespace treesub;

namespace {

SnakeTrace excursion_trace(size_t steps, std::uint64_t seed) {
    SnakeConfig cfg = SnakeConfig::with_dt(1.0 / static_cast<double>(steps), seed);
    cfg.steps = steps;
    return run_snake(cfg, sample_excursion(cfg, steps));
}

// height sequence of the first tree of a gamma = 3/2 forest with a size in [lo, hi]
std::vector<double> gw_heights(size_t lo, size_t hi, std::uint64_t seed) {
    for (;; ++seed) {
        auto hs = discrete_height(sample_walk(1.5, 4 * hi, seed));
        if (hs.chi < lo || hs.chi > hi) continue;
        std::vector<double> H(hs.H.begin(), hs.H.begin() + static_cast<std::ptrdiff_t>(hs.chi) + 1);
        return H;
    }
}

}  // namespace

TEST_CASE("sim_classes on small sequences") {
    std::vector<double> H{0, 1, 2, 1, 2, 1, 0};
    auto c = sim_classes(H);
    auto pairs = c.pairs;
    std::sort(pairs.begin(), pairs.end());
    CHECK(pairs == oracle::matching_pairs(H));
    CHECK(pairs == std::vector<std::pair<size_t, size_t>>{{0, 6}, {1, 3}, {3, 5}});
    CHECK(c.class_id[1] == c.class_id[3]);
    CHECK(c.class_id[3] == c.class_id[5]);
    CHECK(c.members[c.class_id[5]] == std::vector<size_t>{1, 3, 5});
    CHECK(c.class_id[2] != c.class_id[4]);

    // no repeated value inside: only the endpoints are paired
    auto u = sim_classes({0, 1, 3, 2, 0});
    CHECK(u.pairs == std::vector<std::pair<size_t, size_t>>{{0, 4}});
}

TEST_CASE("sim_classes against the brute-force closure") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        auto H = gw_heights(20, 300, seed * 100);
        auto c = sim_classes(H);
        auto pairs = c.pairs;
        std::sort(pairs.begin(), pairs.end());
        REQUIRE(pairs == oracle::matching_pairs(H));
        REQUIRE(c.class_id == oracle::classes(H));
    }
}

TEST_CASE("d_circ_loop") {
    LooptreeView uni({0, 1, 2, 1, 0}, 1.0);
    for (size_t b = 0; b < 5; ++b) {
        CHECK(d_circ_loop(uni, b, b) == 0.0);
        CHECK(d_circ_loop(uni, 0, b) == oracle::d_circ_loop(uni.H(), 0, b));
    }
    CHECK(d_circ_loop(uni, 0, 2) == 2.0);
    CHECK(d_circ_loop(uni, 0, 1) == 1.0);
    CHECK(d_circ_loop(uni, 0, 4) == 0.0);

    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        LooptreeView v(gw_heights(30, 200, seed * 1000), 1.0);
        size_t n = v.size();
        for (size_t a = 0; a < n; ++a) {
            for (size_t b = 0; b < n; ++b) {
                REQUIRE(d_circ_loop_raw(v, a, b) == oracle::loop_raw(v.H(), a, b));
                double d = d_circ_loop(v, a, b);
                REQUIRE(d == oracle::d_circ_loop(v.H(), a, b));
                if (d == 0.0 && v.class_of(a) != v.class_of(b)) {
                    // some members of the two classes share a height equal to
                    // the lower of their two arc maxima
                    bool direct = false;
                    for (size_t x = 0; x < n && !direct; ++x) {
                        if (v.class_of(x) != v.class_of(a)) continue;
                        for (size_t y = 0; y < n && !direct; ++y) {
                            if (v.class_of(y) != v.class_of(b) || v.H()[x] != v.H()[y]) continue;
                            double m = std::min(oracle::cyclic_max(v.H(), x, y), oracle::cyclic_max(v.H(), y, x));
                            direct = v.H()[x] == m;
                        }
                    }
                    REQUIRE(direct);
                }
            }
        }
    }
}

TEST_CASE("looptree chains") {
    LooptreeView v(gw_heights(200, 600, 77), 1.0);
    auto S = stratified_sample(v.size(), 80);
    CounterRng rng(77, 0);
    for (int q = 0; q < 50; ++q) {
        size_t a = S[rng.next_u64() % S.size()], b = S[rng.next_u64() % S.size()];
        CHECK(d_star_loop(v, S, a, a) == 0.0);
        double d = d_star_loop(v, S, a, b);
        CHECK(d <= d_circ_loop(v, a, b) + 1e-12);
        CHECK(d >= 0.0);
    }
}

TEST_CASE("phi_map lands in Theta and carries the label") {
    auto tr = excursion_trace(20000, 15);
    auto theta = theta_times(tr);
    for (int n = 2; n <= 6; n += 2) {
        auto g = build_gamma(tr, n, Extremum::Min);
        LooptreeView v(g);
        REQUIRE(v.has_source());
        CHECK(phi_map(v, 0) == 0);
        CHECK_THROWS(phi_map(v, v.size()));
        for (size_t u = 0; u + 1 < v.size(); ++u) {
            size_t s = phi_map(v, u);
            REQUIRE(std::binary_search(theta.begin(), theta.end(), s));
            REQUIRE(v.H()[u] == 0.0 - tr.zhat[s]);
        }
    }
}
