#include "treesub/ltsnake.hpp"

#include <cmath>
#include <cstring>
#include <fstream>
#include <stdexcept>

#include "binio.hpp"
#include "treesub/stats.hpp"

namespace treesub {

LTStepper::LTStepper(double dh, CounterRng rng, bool frozen, double unit)
    : step_(std::sqrt(dh)), unit_(unit > 0.0 ? unit : std::sqrt(dh)), frozen_(frozen), rng_(rng),
      bits_(rng_) {
    stack_.reserve(1024);
    stack_.push_back({0, 0.0});
}

void LTStepper::push() {
    Entry e = stack_.back();
    // local time of the step is charged when it starts at 0
    if (e.xi == 0) e.lambda += unit_;
    if (!frozen_) {
        if (e.xi == 0) {
            e.xi = 1;
        } else {
            e.xi += bits_.next() ? 1 : -1;
        }
    }
    stack_.push_back(e);
}

LTSnakeTrace run_lt_snake(const SnakeConfig& cfg, const Lifetime& life, std::uint64_t stream,
                          bool frozen) {
    cfg.validate();
    LTStepper st(life.dh, CounterRng(cfg.seed, 2 * stream + 1), frozen);
    LTSnakeTrace t;
    t.dt = cfg.dt;
    t.dh = life.dh;
    t.unit = st.unit();
    size_t n = life.steps();
    t.zeta.resize(n + 1);
    t.xi_tip.resize(n + 1);
    t.lambda_hat.resize(n + 1);
    t.stack_log = life.up;
    t.zeta[0] = t.xi_tip[0] = t.lambda_hat[0] = 0.0;
    for (size_t k = 0; k < n; ++k) {
        if (life.up[k]) {
            st.push();
        } else {
            if (st.depth() == 0) {
                throw std::invalid_argument("run_lt_snake: lifetime goes below zero");
            }
            st.pop();
        }
        t.zeta[k + 1] = life.dh * static_cast<double>(st.depth());
        t.xi_tip[k + 1] = st.step() * static_cast<double>(st.xi());
        t.lambda_hat[k + 1] = st.lambda();
    }
    if (st.depth() != 0) {
        throw std::invalid_argument("run_lt_snake: lifetime does not return to zero");
    }
    return t;
}

CodingFunction subordinate_by_lambda(const LTSnakeTrace& t) {
    CodingFunction life;
    life.sigma = t.dt * static_cast<double>(t.stack_log.size());
    life.h = t.zeta;
    TreeView view(life);
    if (!check_monotone(view, t.lambda_hat)) {
        throw std::logic_error("subordinate_by_lambda: lambda_hat fails the ancestry audit");
    }
    return subordinate_coding(view, t.lambda_hat);
}

LevyEquivalenceReport levy_equivalence_check(const std::vector<double>& snake_max,
                                             const std::vector<double>& lt_max, double r_min_snake,
                                             double r_max_snake, double r_min_lt,
                                             double r_max_lt, size_t grid, double target,
                                             double tol) {
    LevyEquivalenceReport rep;
    rep.n_snake = snake_max.size();
    rep.n_lt = lt_max.size();
    auto a = tail_regression(snake_max, 1.0, r_min_snake, r_max_snake, grid);
    auto b = tail_regression(lt_max, 1.0, r_min_lt, r_max_lt, grid);
    rep.slope_snake = a.slope;
    rep.stderr_snake = a.se;
    rep.slope_lt = b.slope;
    rep.stderr_lt = b.se;
    rep.pass = std::abs(a.slope - target) <= tol && std::abs(b.slope - target) <= tol;
    return rep;
}

void write_lt_trace(std::ostream& os, const LTSnakeTrace& t) {
    using namespace binio;
    os.write("TSNL1", 5);
    put_u64(os, t.size());
    put_f64(os, t.dt);
    put_f64(os, t.dh);
    put_f64(os, t.unit);
    put_array(os, t.zeta);
    put_array(os, t.xi_tip);
    put_array(os, t.lambda_hat);
    put_bits(os, t.stack_log);
}

LTSnakeTrace read_lt_trace(std::istream& is) {
    using namespace binio;
    char magic[5];
    if (!is.read(magic, 5) || std::memcmp(magic, "TSNL1", 5) != 0) {
        throw std::runtime_error("trace file: bad magic");
    }
    LTSnakeTrace t;
    size_t n = get_u64(is);
    t.dt = get_f64(is);
    t.dh = get_f64(is);
    t.unit = get_f64(is);
    get_array(is, t.zeta, n);
    get_array(is, t.xi_tip, n);
    get_array(is, t.lambda_hat, n);
    t.stack_log = get_bits(is);
    if (t.stack_log.size() + 1 != n) throw std::runtime_error("trace file: inconsistent step count");
    return t;
}

void save_lt_trace(const std::string& path, const LTSnakeTrace& t) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open " + path);
    write_lt_trace(os, t);
}

LTSnakeTrace load_lt_trace(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("cannot open " + path);
    return read_lt_trace(is);
}

}  // namespace treesub
