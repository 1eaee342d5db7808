#include <doctest.h>

#include <cmath>
#include <sstream>

#include "treesub/coded_tree.hpp"
#include "treesub/ltsnake.hpp"

using namespace treesub;

namespace {

LTSnakeTrace lt_trace(size_t steps, std::uint64_t seed, bool frozen = false) {
    SnakeConfig cfg = SnakeConfig::with_dt(1.0 / static_cast<double>(steps), seed);
    cfg.steps = steps;
    return run_lt_snake(cfg, sample_excursion(cfg, steps), 0, frozen);
}

// Pareto samples, survival (r0 / r)^alpha above r0
std::vector<double> pareto(size_t n, double r0, double alpha, std::uint64_t seed) {
    CounterRng rng(seed, 0);
    std::vector<double> x(n);
    for (auto& v : x) v = r0 * std::pow(rng.uniform(), -1.0 / alpha);
    return x;
}

}  // namespace

TEST_CASE("single edge local-time snake") {
    SnakeConfig cfg = SnakeConfig::with_dt(0.01, 4);
    auto t = run_lt_snake(cfg, Lifetime{cfg.dh, {1, 0}});
    REQUIRE(t.size() == 3);
    CHECK(t.lambda_hat.front() == 0.0);
    CHECK(t.lambda_hat.back() == 0.0);
    CHECK((t.lambda_hat[1] == 0.0 || t.lambda_hat[1] == t.unit));
    CHECK(t.unit == doctest::Approx(std::sqrt(cfg.dh)));
}

TEST_CASE("lambda-hat grows only on steps started at 0") {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        auto t = lt_trace(4000, seed);
        std::vector<size_t> stack{0};
        for (size_t k = 0; k < t.stack_log.size(); ++k) {
            size_t s = k + 1;
            if (t.stack_log[k]) {
                size_t p = stack.back();
                double inc = t.xi_tip[p] == 0.0 ? t.unit : 0.0;
                REQUIRE(t.lambda_hat[s] == t.lambda_hat[p] + inc);
                REQUIRE(t.xi_tip[s] >= 0.0);
                stack.push_back(s);
            } else {
                stack.pop_back();
                REQUIRE(t.lambda_hat[s] == t.lambda_hat[stack.back()]);
            }
        }
        TreeView tree(CodingFunction{t.dt * static_cast<double>(t.stack_log.size()), t.zeta});
        CHECK(check_monotone(tree, t.lambda_hat));
        TreeView sub(subordinate_by_lambda(t));
        CHECK(tree_height(sub) == *std::max_element(t.lambda_hat.begin(), t.lambda_hat.end()));
    }
}

TEST_CASE("frozen motion: lambda-hat proportional to the lifetime") {
    auto t = lt_trace(2000, 3, true);
    for (size_t s = 0; s < t.size(); ++s) {
        REQUIRE(t.xi_tip[s] == 0.0);
        CHECK(t.lambda_hat[s] == doctest::Approx(t.unit * t.zeta[s] / t.dh));
    }
}

TEST_CASE("zero lambda-hat gives a point tree") {
    LTSnakeTrace t = lt_trace(100, 2);
    std::fill(t.lambda_hat.begin(), t.lambda_hat.end(), 0.0);
    TreeView sub(subordinate_by_lambda(t));
    CHECK(tree_height(sub) == 0.0);
    CHECK(tree_distance(sub, 0, sub.n() / 2) == 0.0);
}

TEST_CASE("Levy equivalence check on synthetic tails") {
    auto a = pareto(200000, 0.1, 2.0, 1);
    auto b = pareto(200000, 0.1, 2.0, 2);
    auto good = levy_equivalence_check(a, b, 0.2, 1.0, 0.2, 1.0);
    CHECK(good.pass);
    CHECK(good.slope_snake == doctest::Approx(-2.0).epsilon(0.05));
    CHECK(good.slope_lt == doctest::Approx(-2.0).epsilon(0.05));
    auto c = pareto(200000, 0.1, 1.0, 3);
    auto bad = levy_equivalence_check(a, c, 0.2, 1.0, 0.2, 1.0);
    CHECK_FALSE(bad.pass);
    CHECK(bad.slope_lt == doctest::Approx(-1.0).epsilon(0.05));
}

TEST_CASE("local-time trace persistence") {
    auto t = lt_trace(300, 9);
    std::stringstream ss;
    write_lt_trace(ss, t);
    auto u = read_lt_trace(ss);
    CHECK(u.unit == t.unit);
    CHECK(u.zeta == t.zeta);
    CHECK(u.xi_tip == t.xi_tip);
    CHECK(u.lambda_hat == t.lambda_hat);
    CHECK(u.stack_log == t.stack_log);
}
