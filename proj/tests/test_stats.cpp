#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "treesub/experiments.hpp"
#include "treesub/rng.hpp"
#include "treesub/stats.hpp"

using namespace treesub;

TEST_CASE("tail regression on an exact 3 / (2 r^2) survival") {
    // n samples of survival (r0 / r)^2, each weighted so that the rate above r is 1.5 / r^2
    const size_t n = 400000;
    const double r0 = 0.05;
    CounterRng rng(5, 0);
    std::vector<double> x(n);
    for (auto& v : x) v = r0 / std::sqrt(rng.uniform());
    double w = 1.5 / (static_cast<double>(n) * r0 * r0);
    auto fit = tail_regression(x, w, 0.2, 1.0, 40);
    // points of a cumulative curve are correlated, so compare against the
    // sampling error of the tail index itself, alpha / sqrt(samples above 0.2)
    double above = static_cast<double>(std::count_if(x.begin(), x.end(), [](double v) { return v > 0.2; }));
    CHECK(std::abs(fit.slope + 2.0) <= 3.0 * 2.0 / std::sqrt(above));
    CHECK(fit.se > 0.0);
    CHECK(std::exp(fit.intercept) == doctest::Approx(1.5).epsilon(0.05));
    CHECK(fit.r.size() == 40);

    std::vector<double> flat(1000, 0.5);
    CHECK_THROWS(tail_regression(flat, 1.0, 0.1, 1.0, 40));
    CHECK_THROWS(tail_regression(x, w, 0.2, 1.0, 10));
}

TEST_CASE("two-sample chi-square") {
    std::vector<std::uint64_t> a{50, 30, 20, 10};
    auto same = two_sample_chi2(a, a, 4);
    CHECK(same.statistic == doctest::Approx(0.0));
    CHECK(same.p_value == doctest::Approx(1.0));
    CHECK(same.df == 3);

    auto apart = two_sample_chi2({100, 100, 0, 0}, {0, 0, 100, 100}, 4);
    CHECK(apart.p_value < 1e-30);

    CHECK_THROWS(two_sample_chi2({1, 1}, {1, 1}, 2));
}

TEST_CASE("two-sample chi-square p-values are uniform under the null") {
    // repeated pairs of root offspring histograms from the same stable-walk generator
    std::vector<double> p;
    for (std::uint64_t r = 0; r < 100; ++r) {
        auto a = walk_root_offspring(1.5, 1000 + 2 * r, 4, 400, 1ULL << 40);
        auto b = walk_root_offspring(1.5, 1001 + 2 * r, 4, 400, 1ULL << 40);
        p.push_back(two_sample_chi2(a.hist, b.hist, 4).p_value);
    }
    std::sort(p.begin(), p.end());
    double ks = 0.0, n = static_cast<double>(p.size());
    for (size_t i = 0; i < p.size(); ++i) {
        ks = std::max({ks, std::abs(p[i] - static_cast<double>(i) / n),
                       std::abs(p[i] - static_cast<double>(i + 1) / n)});
    }
    CHECK(ks * std::sqrt(n) < 1.63);
}

TEST_CASE("dispersion index") {
    std::mt19937_64 gen(3);
    std::poisson_distribution<int> pois(4.0);
    std::vector<double> c(4000);
    for (auto& x : c) x = pois(gen);
    std::vector<size_t> bin(c.size());
    for (size_t i = 0; i < bin.size(); ++i) bin[i] = i % 4;
    CHECK(dispersion_index(c, bin) == doctest::Approx(1.0).epsilon(0.08));

    std::vector<double> doubled;
    for (double x : c) doubled.push_back(2.0 * x);
    CHECK(dispersion_index(doubled, bin) == doctest::Approx(2.0).epsilon(0.08));

    std::vector<double> constant(400, 3.0);
    std::vector<size_t> one(400, 0);
    CHECK(dispersion_index(constant, one) == 0.0);

    CHECK_THROWS(dispersion_index(std::vector<double>(50, 1.0), std::vector<size_t>(50, 0), 100));
}

TEST_CASE("median and quantile bins") {
    CHECK(median({3.0, 1.0, 2.0}) == 2.0);
    CHECK(median({4.0, 1.0, 2.0, 3.0}) == 2.5);
    CHECK_THROWS(median({}));
    std::vector<double> x;
    for (int i = 0; i < 100; ++i) x.push_back(static_cast<double>((i * 37) % 100));
    auto b = quantile_bins(x, 4);
    std::vector<size_t> count(4, 0);
    for (size_t i = 0; i < x.size(); ++i) {
        ++count[b[i]];
        CHECK(b[i] == static_cast<size_t>(x[i]) / 25);
    }
    CHECK(count == std::vector<size_t>{25, 25, 25, 25});
}
