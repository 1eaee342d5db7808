#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "treesub/coded_tree.hpp"
#include "treesub/rng.hpp"
#include "treesub/snake.hpp"

namespace treesub {

// Snake whose spatial motion is the pair (xi, L): xi is a reflected lattice
// walk with spatial step sqrt(dh) per lifetime step, L its local time at 0.
struct LTSnakeTrace {
    double dt = 0.0;
    double dh = 0.0;
    double unit = 0.0;  // local time added per lifetime step started at 0
    std::vector<double> zeta;
    std::vector<double> xi_tip;      // in spatial units
    std::vector<double> lambda_hat;  // L at the tip
    std::vector<std::uint8_t> stack_log;

    size_t size() const { return zeta.size(); }
};

class LTStepper {
public:
    // unit <= 0 selects sqrt(dh), the spatial step
    LTStepper(double dh, CounterRng rng, bool frozen = false, double unit = -1.0);
    LTStepper(const LTStepper&) = delete;
    LTStepper& operator=(const LTStepper&) = delete;

    void push();
    void pop() { stack_.pop_back(); }
    size_t depth() const { return stack_.size() - 1; }
    std::int64_t xi() const { return stack_.back().xi; }
    double lambda() const { return stack_.back().lambda; }
    double unit() const { return unit_; }
    double step() const { return step_; }
    void reset() { stack_.assign(1, {0, 0.0}); }

private:
    struct Entry {
        std::int64_t xi;  // lattice units
        double lambda;
    };
    double step_;
    double unit_;
    bool frozen_;
    CounterRng rng_;
    BitSource bits_;
    std::vector<Entry> stack_;
};

// frozen = true keeps xi at 0, so lambda_hat is proportional to zeta
LTSnakeTrace run_lt_snake(const SnakeConfig& cfg, const Lifetime& life, std::uint64_t stream = 0,
                          bool frozen = false);

// s -> lambda_hat_s as a coding function; throws if it fails the ancestry audit
CodingFunction subordinate_by_lambda(const LTSnakeTrace& t);

struct LevyEquivalenceReport {
    double slope_snake = 0.0;
    double stderr_snake = 0.0;
    double slope_lt = 0.0;
    double stderr_lt = 0.0;
    size_t n_snake = 0;
    size_t n_lt = 0;
    bool pass = false;  // both slopes within [target - tol, target + tol]
};

// tail slopes of per-excursion maxima of W-bar and of lambda_hat
LevyEquivalenceReport levy_equivalence_check(const std::vector<double>& snake_max,
                                             const std::vector<double>& lt_max, double r_min_snake,
                                             double r_max_snake, double r_min_lt,
                                             double r_max_lt, size_t grid = 40,
                                             double target = -2.0, double tol = 0.2);

void write_lt_trace(std::ostream& os, const LTSnakeTrace& t);
LTSnakeTrace read_lt_trace(std::istream& is);
void save_lt_trace(const std::string& path, const LTSnakeTrace& t);
LTSnakeTrace load_lt_trace(const std::string& path);

}  // namespace treesub
