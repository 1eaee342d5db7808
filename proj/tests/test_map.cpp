#include <doctest.h>

#include <cmath>
#include <sstream>

#include "oracles.hpp"
#include "treesub/map.hpp"
#include "treesub/snake.hpp"

using namespace treesub;

namespace {

SnakeTrace excursion_trace(size_t steps, std::uint64_t seed) {
    SnakeConfig cfg = SnakeConfig::with_dt(1.0 / static_cast<double>(steps), seed);
    cfg.steps = steps;
    return run_snake(cfg, sample_excursion(cfg, steps));
}

size_t position(const std::vector<size_t>& sample, size_t t) {
    return static_cast<size_t>(std::lower_bound(sample.begin(), sample.end(), t) - sample.begin());
}

}  // namespace

TEST_CASE("d_circ on the five-point example") {
    SnakeTrace t;
    t.dt = t.dh = 1.0;
    t.zhat = {0, 2, 1, 3, 0};
    t.zeta = t.zbar = t.zmin = std::vector<double>(5, 0.0);
    MapView m(t);
    CHECK(d_circ(m, 1, 3) == 3.0);
    CHECK(d_circ(m, 3, 1) == 3.0);
    CHECK(d_circ(m, 2, 2) == 0.0);
    CHECK_THROWS(d_circ(m, 0, 5));
}

TEST_CASE("d_circ against the naive cyclic scan") {
    auto t = excursion_trace(1000, 6);
    MapView m(t);
    CHECK(m.zstar() == *std::min_element(t.zhat.begin(), t.zhat.end()));
    CHECK(m.zhat(m.astar_index()) == m.zstar());
    CounterRng rng(6, 1);
    for (int q = 0; q < 2000; ++q) {
        size_t s = rng.next_u64() % m.size(), u = rng.next_u64() % m.size();
        REQUIRE(d_circ(m, s, u) == oracle::d_circ(t.zhat, s, u));
        REQUIRE(m.cyclic_min(s, u) == oracle::cyclic_min(t.zhat, s, u));
    }
    for (size_t s = 0; s < m.size(); ++s) {
        REQUIRE(d_circ(m, s, m.astar_index()) == doctest::Approx(t.zhat[s] - m.zstar()).epsilon(1e-12));
    }
}

TEST_CASE("tree points: visits and point distance") {
    auto t = excursion_trace(600, 12);
    MapView m(t);
    // vertex of each time from the stack log
    std::vector<size_t> id(t.size()), stack{0};
    size_t next = 1;
    for (size_t k = 0; k < t.stack_log.size(); ++k) {
        if (t.stack_log[k]) {
            stack.push_back(next++);
        } else {
            stack.pop_back();
        }
        id[k + 1] = stack.back();
    }
    for (size_t s = 0; s < t.size(); ++s) {
        std::vector<size_t> want;
        for (size_t u = 0; u < t.size(); ++u) {
            if (id[u] == id[s]) want.push_back(u);
        }
        REQUIRE(vertex_visits(m, s) == want);
    }
    CounterRng rng(12, 0);
    for (int q = 0; q < 500; ++q) {
        size_t s = rng.next_u64() % m.size(), u = rng.next_u64() % m.size();
        double best = d_circ(m, s, u);
        for (size_t a = 0; a < t.size(); ++a) {
            for (size_t b = 0; b < t.size(); ++b) {
                if (id[a] == id[s] && id[b] == id[u]) best = std::min(best, d_circ(m, a, b));
            }
        }
        CHECK(d_circ_point(m, s, u) == best);
        CHECK(d_circ_point(m, s, u) <= d_circ(m, s, u));
    }
    auto visits = vertex_visits(m, 0);
    CHECK(visits.front() == 0);
    CHECK(visits.back() == t.size() - 1);
    CHECK(d_circ_point(m, 0, t.size() - 1) == 0.0);
}

TEST_CASE("chain distances") {
    MapView m(excursion_trace(4000, 7));
    size_t a = m.astar_index();
    auto coarse = merge_samples(stratified_sample(m.size(), 100), {a});
    auto fine = merge_samples(stratified_sample(m.size(), 400), coarse);
    CHECK(std::includes(fine.begin(), fine.end(), coarse.begin(), coarse.end()));
    size_t off = coarse[1] + 1;
    while (std::binary_search(coarse.begin(), coarse.end(), off)) ++off;
    CHECK_THROWS(d_star_upper(m, coarse, a, off));

    CounterRng rng(7, 2);
    for (int q = 0; q < 40; ++q) {
        size_t s = coarse[rng.next_u64() % coarse.size()], u = coarse[rng.next_u64() % coarse.size()];
        double dc = d_star_upper(m, coarse, s, u), df = d_star_upper(m, fine, s, u);
        CHECK(d_star_upper(m, coarse, s, s) == 0.0);
        CHECK(dc <= d_circ(m, s, u) + 1e-12);
        CHECK(df <= dc + 1e-12);
        CHECK(df >= std::abs(m.zhat(s) - m.zhat(u)) - 1e-12);

        double to_root = d_star_upper(m, coarse, s, a);
        CHECK(to_root >= m.zhat(s) - m.zstar() - 1e-12);
        CHECK(to_root <= d_circ(m, s, a) + 1e-12);
    }
    auto dist = chain_distances(m, fine, position(fine, a));
    for (size_t i = 0; i < fine.size(); ++i) {
        CHECK(dist[i] == doctest::Approx(m.zhat(fine[i]) - m.zstar()));
    }
}

TEST_CASE("metric net and delta_star") {
    MapView m(excursion_trace(4000, 8));
    size_t a = m.astar_index();
    auto net = metric_net_times(m);
    REQUIRE(std::is_sorted(net.begin(), net.end()));
    CHECK(net.front() == 0);
    CHECK(std::binary_search(net.begin(), net.end(), a));
    for (size_t t : net) REQUIRE(m.zhat(t) == m.trace().zmin[t]);

    auto sample = merge_samples(stratified_sample(m.size(), 300), net);
    auto from_root = chain_distances(m, net, position(net, a));
    CounterRng rng(8, 3);
    for (int q = 0; q < 30; ++q) {
        size_t s = net[rng.next_u64() % net.size()], u = net[rng.next_u64() % net.size()];
        CHECK(delta_star(m, net, s, s) == 0.0);
        CHECK(delta_star(m, net, s, u) >= d_star_upper(m, sample, s, u) - 1e-12);
        CHECK(delta_star(m, net, s, a) == doctest::Approx(m.zhat(s) - m.zstar()));
        CHECK(from_root[position(net, s)] == doctest::Approx(m.zhat(s) - m.zstar()));
    }
    size_t off = 1;
    while (std::binary_search(net.begin(), net.end(), off)) ++off;
    CHECK_THROWS(delta_star(m, net, a, off));
}

TEST_CASE("hull boundary") {
    MapView m(excursion_trace(8000, 9));
    auto net = metric_net_times(m);
    CHECK_THROWS(hull_boundary(m, -m.zstar()));
    CHECK_THROWS(hull_boundary(m, -1.0));
    double tol = 2.0 * m.trace().dh;
    for (double r : {0.0, 0.2, 0.5 * -m.zstar()}) {
        auto b = hull_boundary(m, r);
        for (size_t t : b) {
            REQUIRE(std::binary_search(net.begin(), net.end(), t));
            CHECK(std::abs(m.zhat(t) - (m.zstar() + r)) <= tol);
        }
    }
    auto near = hull_boundary(m, 0.0, 1e-12);
    REQUIRE(!near.empty());
    for (size_t t : near) CHECK(m.zhat(t) == m.zstar());
}

TEST_CASE("components and their boundary loops") {
    MapView small(excursion_trace(200, 3));
    ComponentOptions deep;
    deep.min_depth = 100.0;
    CHECK(components_and_loops(small, deep).empty());

    MapView m(excursion_trace(20000, 10));
    const auto& t = m.trace();
    auto comps = components_and_loops(m);
    REQUIRE(!comps.empty());
    for (const auto& c : comps) {
        CHECK(c.debut_level > m.zstar());
        CHECK(c.depth >= 5.0 * t.dh);
        REQUIRE(!c.boundary_times.empty());
        for (size_t s = c.s1; s <= c.s2; ++s) REQUIRE(t.zmin[s] <= c.debut_level);
        if (c.s1 > 0) CHECK(t.zmin[c.s1 - 1] > c.debut_level);
        if (c.s2 + 1 < t.size()) CHECK(t.zmin[c.s2 + 1] > c.debut_level);
        for (size_t s : c.boundary_times) {
            CHECK(t.zhat[s] == c.debut_level);
            CHECK(t.zmin[s] == c.debut_level);
        }
        CHECK(std::is_sorted(c.loop.begin(), c.loop.end()));
        CHECK(c.loop.front() == c.s1);
        CHECK(c.loop.back() == c.s2);
        CHECK(d_circ_point(m, c.loop.front(), c.loop.back()) < 3.0 * t.dh);
        CHECK(c.boundary_size >= 0.0);
    }
    std::ostringstream os;
    write_components_csv(os, comps);
    CHECK(os.str().rfind("debut_level,s1,s2,boundary_count,boundary_size\n", 0) == 0);
}
