#include <doctest.h>

#include <cmath>
#include <tuple>

#include "treesub/gw.hpp"
#include "treesub/snake.hpp"

using namespace treesub;

namespace {

// linear interpolation of the knots on a grid of `per` points per segment
std::vector<double> polyline(const std::vector<double>& knots, size_t per) {
    std::vector<double> x;
    for (size_t i = 0; i + 1 < knots.size(); ++i) {
        for (size_t k = 0; k < per; ++k) {
            double u = static_cast<double>(k) / static_cast<double>(per);
            x.push_back(knots[i] + u * (knots[i + 1] - knots[i]));
        }
    }
    x.push_back(knots.back());
    return x;
}

struct BruteVertex {
    size_t start, end;
    std::int64_t level;
    std::int64_t parent;
};

// every maximal run above a_j that reaches a_{j+1}, in order of start
// (ancestors first on ties), parents by containment
std::vector<BruteVertex> brute_skeleton(const std::vector<double>& x, int n, double offset) {
    double step = std::ldexp(1.0, -n);
    double top = *std::max_element(x.begin(), x.end());
    std::vector<BruteVertex> v;
    for (std::int64_t j = 0; offset + static_cast<double>(j + 1) * step <= top; ++j) {
        double a = offset + static_cast<double>(j) * step, b = a + step;
        for (size_t i = 0; i < x.size();) {
            if (!(x[i] > a)) {
                ++i;
                continue;
            }
            size_t s = i;
            double m = x[i];
            while (i < x.size() && x[i] > a) m = std::max(m, x[i++]);
            if (m >= b) v.push_back({s, i - 1, j, -1});
        }
    }
    std::sort(v.begin(), v.end(), [](const BruteVertex& p, const BruteVertex& q) {
        return std::tie(p.start, p.level) < std::tie(q.start, q.level);
    });
    for (size_t k = 0; k < v.size(); ++k) {
        for (size_t p = 0; p < v.size(); ++p) {
            if (v[p].level + 1 == v[k].level && v[p].start <= v[k].start && v[k].end <= v[p].end) {
                v[k].parent = static_cast<std::int64_t>(p);
            }
        }
    }
    return v;
}

std::vector<double> snake_max_series(size_t steps, std::uint64_t seed) {
    SnakeConfig cfg = SnakeConfig::with_dt(1.0 / static_cast<double>(steps), seed);
    cfg.steps = steps;
    return run_snake(cfg, sample_excursion(cfg, steps)).zbar;
}

}  // namespace

TEST_CASE("skeletons of hand-made series") {
    // a triangle below 2^-n
    auto low = polyline({0.0, 0.2, 0.0}, 50);
    CHECK(dyadic_crossings(low, 2).K() == 0);

    // one excursion between 2^-n and 2 2^-n
    auto one = polyline({0.0, 0.3, 0.0}, 50);
    auto sk = dyadic_crossings(one, 2);
    REQUIRE(sk.K() == 1);
    CHECK(sk.heights == std::vector<std::int64_t>{0});
    CHECK(offspring_empirical(sk) == OffspringHistogram{1});

    // 0 -> 0.8 -> 0.3 -> 0.9 -> 0 at n = 1: the root excursion above 0
    // reaches 0.5; nothing above 0.5 reaches 1
    auto four = polyline({0.0, 0.8, 0.3, 0.9, 0.0}, 40);
    auto s4 = dyadic_crossings(four, 1);
    CHECK(s4.heights == std::vector<std::int64_t>{0});

    // a ramp through d levels is a chain
    const int d = 6;
    auto ramp = polyline({0.0, d * 0.25 + 0.01, 0.0}, 200);
    auto chain = dyadic_crossings(ramp, 2);
    REQUIRE(chain.K() == d);
    auto h = offspring_empirical(chain);
    REQUIRE(h.size() == 2);
    CHECK(h[0] == 1);
    CHECK(h[1] == d - 1);
}

TEST_CASE("skeleton matches the brute-force level scan") {
    for (std::uint64_t seed = 1; seed <= 8; ++seed) {
        auto x = snake_max_series(4000, seed);
        for (int n = 1; n <= 5; ++n) {
            for (double offset : {0.0, 0.01}) {
                auto sk = dyadic_crossings(x, n, offset);
                auto want = brute_skeleton(x, n, offset);
                REQUIRE(sk.K() == want.size());
                for (size_t k = 0; k < sk.K(); ++k) {
                    CHECK(sk.crossing_index[k] == want[k].start);
                    CHECK(sk.end_index[k] == want[k].end);
                    CHECK(sk.heights[k] == want[k].level);
                    CHECK(sk.parent[k] == want[k].parent);
                    CHECK(sk.scaled[k] == std::ldexp(x[want[k].start], n));
                }
                if (sk.K() > 0) {
                    auto hist = offspring_empirical(sk);
                    std::uint64_t total = 0, edges = 0;
                    for (size_t c = 0; c < hist.size(); ++c) {
                        total += hist[c];
                        edges += c * hist[c];
                    }
                    CHECK(total == sk.K());
                    CHECK(edges == sk.K() - sk.roots());
                }
            }
        }
    }
}

TEST_CASE("pruning the finer skeleton gives the coarser one") {
    for (std::uint64_t seed = 1; seed <= 8; ++seed) {
        auto x = snake_max_series(5000, seed + 40);
        for (int n = 1; n <= 5; ++n) {
            CHECK(same_skeleton(prune_skeleton(dyadic_crossings(x, n + 1)), dyadic_crossings(x, n)));
        }
    }
    CHECK_THROWS(prune_skeleton(dyadic_crossings(polyline({0.0, 1.0, 0.0}, 10), 0)));
}

TEST_CASE("approximation error of a dyadic contour") {
    // a series equal to its own skeleton contour, one grid point per vertex
    const int n = 2;
    auto x = snake_max_series(3000, 5);
    auto sk = dyadic_crossings(x, n);
    REQUIRE(sk.K() > 3);
    std::vector<double> contour;
    for (auto h : sk.heights) contour.push_back(std::ldexp(static_cast<double>(h), -n));
    CHECK(approximation_error(contour, sk, 1.0, 1.0) == 0.0);

    // both the series and the rescaled heights lie in [0, max x]
    for (int m = 2; m <= 5; ++m) {
        auto s = dyadic_crossings(x, m, 0.0, 1.0 / 3000.0);
        double v = static_cast<double>(s.K());
        double err = approximation_error(x, s, v, 1.0 / 3000.0);
        CHECK(err >= 0.0);
        CHECK(err <= *std::max_element(x.begin(), x.end()));
    }
    CHECK_THROWS(approximation_error(x, sk, 0.0));
}

TEST_CASE("time change exactness at skeleton points") {
    SnakeConfig cfg = SnakeConfig::with_dt(1.0 / 20000.0, 12);
    cfg.steps = 20000;
    auto tr = run_snake(cfg, sample_excursion(cfg, 20000));
    for (int n = 1; n <= 5; ++n) {
        for (auto which : {Extremum::Max, Extremum::Min}) {
            auto g = build_gamma(tr, n, which);
            const auto& sk = g.skeleton;
            for (size_t k = 0; k < sk.K(); ++k) {
                size_t ci = sk.crossing_index[k];
                REQUIRE(g.target_at(ci) == g.series[ci]);
                REQUIRE(g.tc.tau[k + 1] == ci);
            }
            for (size_t s = 1; s < tr.size(); ++s) REQUIRE(g.tc.index[s] >= g.tc.index[s - 1]);
            CHECK(g.tc.index.front() == 0);
            CHECK(g.tc.tau.front() == 0);
            CHECK(g.target.front() == 0.0);
            CHECK(g.target.back() == 0.0);
        }
    }
}
