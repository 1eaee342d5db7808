#include "treesub/snake.hpp"

#include <algorithm>
#include <bit>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "binio.hpp"

namespace treesub {

SnakeConfig SnakeConfig::with_dt(double dt, std::uint64_t seed) {
    SnakeConfig c;
    c.dt = dt;
    c.dh = std::sqrt(dt);
    c.seed = seed;
    return c;
}

void SnakeConfig::validate() const {
    if (!(dt > 0.0) || !(dh > 0.0)) {
        throw std::invalid_argument("snake config: dt and dh must be positive");
    }
}

std::vector<double> Lifetime::zeta() const {
    std::vector<double> z(up.size() + 1);
    long d = 0;
    z[0] = 0.0;
    for (size_t k = 0; k < up.size(); ++k) {
        d += up[k] ? 1 : -1;
        z[k + 1] = dh * static_cast<double>(d);
    }
    return z;
}

__extension__ typedef unsigned __int128 u128;

// multiply-shift reduction to [0, range)
static std::uint64_t below(CounterRng& rng, std::uint64_t range) {
    return static_cast<std::uint64_t>((static_cast<u128>(rng.next_u64()) * range) >> 64);
}

Lifetime sample_excursion(const SnakeConfig& cfg, size_t steps, std::uint64_t stream) {
    cfg.validate();
    if (steps < 2 || steps % 2 != 0) {
        throw std::invalid_argument("sample_excursion: steps must be even and >= 2");
    }
    size_t m = steps / 2 - 1;
    CounterRng rng(cfg.seed, 2 * stream);

    // m ups and m+1 downs, shuffled; the rotation after the first minimum
    // is a Dyck path of length 2m followed by one final down step
    std::vector<std::uint8_t> seq(2 * m + 1, 0);
    std::fill(seq.begin(), seq.begin() + static_cast<long>(m), 1);
    for (size_t i = seq.size(); i > 1; --i) {
        size_t j = below(rng, i);
        std::swap(seq[i - 1], seq[j]);
    }
    long s = 0, best = 0;
    size_t at = 0;
    for (size_t i = 0; i < seq.size(); ++i) {
        s += seq[i] ? 1 : -1;
        if (s < best) {
            best = s;
            at = i + 1;
        }
    }
    Lifetime out;
    out.dh = cfg.dh;
    out.up.reserve(steps);
    out.up.push_back(1);
    for (size_t k = 0; k + 1 < seq.size(); ++k) {
        out.up.push_back(seq[(at + k) % seq.size()]);
    }
    out.up.push_back(0);
    return out;
}

bool sample_raw_excursion(BitSource& bits, size_t max_steps, Lifetime& out) {
    out.up.clear();
    out.up.push_back(1);
    long d = 1;
    while (d > 0) {
        if (out.up.size() >= max_steps) {
            return false;
        }
        bool u = bits.next();
        out.up.push_back(u ? 1 : 0);
        d += u ? 1 : -1;
    }
    return true;
}

SnakeStepper::SnakeStepper(double dh, CounterRng rng) : dh_(dh), sd_(std::sqrt(dh)), rng_(rng) {
    stack_.reserve(1024);
    stack_.push_back({0.0, 0.0, 0.0});
}

void SnakeStepper::push_increment(double dz) {
    const Entry& p = stack_.back();
    double z = p.z + dz;
    stack_.push_back({z, std::max(p.zmax, z), std::min(p.zmin, z)});
}

void SnakeStepper::reset() {
    stack_.clear();
    stack_.push_back({0.0, 0.0, 0.0});
}

SnakeTrace run_snake(const SnakeConfig& cfg, const Lifetime& life, std::uint64_t stream) {
    cfg.validate();
    SnakeTrace t;
    t.dt = cfg.dt;
    t.dh = life.dh;
    size_t n = life.steps();
    t.zeta.resize(n + 1);
    t.zhat.resize(n + 1);
    t.zbar.resize(n + 1);
    t.zmin.resize(n + 1);
    t.stack_log = life.up;

    SnakeStepper st(life.dh, CounterRng(cfg.seed, 2 * stream + 1));
    t.zeta[0] = t.zhat[0] = t.zbar[0] = t.zmin[0] = 0.0;
    for (size_t k = 0; k < n; ++k) {
        if (life.up[k]) {
            st.push();
        } else {
            if (st.depth() == 0) {
                throw std::invalid_argument("run_snake: lifetime goes below zero");
            }
            st.pop();
        }
        t.zeta[k + 1] = life.dh * static_cast<double>(st.depth());
        t.zhat[k + 1] = st.zhat();
        t.zbar[k + 1] = st.zbar();
        t.zmin[k + 1] = st.zmin();
    }
    if (st.depth() != 0) {
        throw std::invalid_argument("run_snake: lifetime does not return to zero");
    }
    return t;
}

ReflectedRun run_reflected(const SnakeConfig& cfg) {
    cfg.validate();
    ReflectedRun run;
    size_t budget = static_cast<size_t>(cfg.total_time / cfg.dt);
    CounterRng life_rng(cfg.seed, 0);
    BitSource bits(life_rng);
    size_t used = 0;
    Lifetime life;
    life.dh = cfg.dh;
    for (std::uint64_t idx = 0; used < budget; ++idx) {
        if (!sample_raw_excursion(bits, budget - used, life)) {
            run.truncated = 1;
            break;
        }
        used += life.steps();
        run.traces.push_back(run_snake(cfg, life, idx + 1));
    }
    run.local_time = excursion_local_time(cfg.dh) * static_cast<double>(run.traces.size());
    return run;
}

std::vector<double> reconstruct_path(const SnakeTrace& t, size_t s) {
    if (s >= t.size()) {
        throw std::out_of_range("reconstruct_path: index out of range");
    }
    std::vector<double> path{0.0};
    for (size_t k = 0; k < s; ++k) {
        if (t.stack_log[k]) {
            path.push_back(t.zhat[k + 1]);
        } else {
            path.pop_back();
        }
    }
    return path;
}

std::vector<size_t> theta_times(const SnakeTrace& t) {
    std::vector<size_t> out;
    for (size_t s = 0; s < t.size(); ++s) {
        if (t.zhat[s] == t.zmin[s]) {
            out.push_back(s);
        }
    }
    return out;
}

namespace {

constexpr size_t kNone = std::numeric_limits<size_t>::max();

// lattice weight of a lifetime offset j (in units of dh) inside (0, eps):
// offsets below eps count fully, the offset sitting exactly at eps counts
// half, which makes the estimator unbiased for a single lattice excursion
double offset_weight(size_t j, double kf) {
    double jd = static_cast<double>(j);
    if (jd < kf - 1e-9) return 1.0;
    if (jd <= kf + 1e-9) return 0.5;
    return 0.0;
}

// Replays the trace keeping, per stack entry, the depth of the first entry
// of its path that reached the level. Calls f(s, depth, exit_depth).
template <class F>
void replay_exits(const SnakeTrace& t, double h, ExitSide side, F&& f) {
    std::vector<size_t> exit_depth;
    exit_depth.reserve(1024);
    exit_depth.push_back(kNone);
    auto reached = [&](double z) {
        return side == ExitSide::Above ? z >= h : z <= -h;
    };
    if (reached(0.0)) {
        exit_depth.back() = 0;
    }
    f(size_t(0), size_t(0), exit_depth.back());
    for (size_t k = 0; k < t.stack_log.size(); ++k) {
        if (t.stack_log[k]) {
            size_t parent = exit_depth.back();
            size_t d = exit_depth.size();
            exit_depth.push_back(parent != kNone ? parent : (reached(t.zhat[k + 1]) ? d : kNone));
        } else {
            exit_depth.pop_back();
        }
        f(k + 1, exit_depth.size() - 1, exit_depth.back());
    }
}

}  // namespace

std::vector<OutsideExcursion> excursions_outside(const SnakeTrace& t, double h, ExitSide side,
                                                 double mark_eps) {
    std::vector<OutsideExcursion> out;
    bool inside = false;
    double kf = mark_eps / t.dh;
    double occupation = 0.0;
    replay_exits(t, h, side, [&](size_t s, size_t d, size_t e) {
        // the tip is the exit vertex or one of its descendants; all visits
        // of one exit vertex form a single excursion
        bool member = e != kNone;
        if (member) {
            double z = t.zhat[s];
            if (!inside) {
                OutsideExcursion x;
                x.start = s;
                x.exit_height = t.dh * static_cast<double>(e);
                x.exit_label = z;
                x.extreme = z;
                x.mark = mark_eps > 0.0 ? occupation * t.dt / mark_eps : 0.0;
                out.push_back(x);
                inside = true;
            }
            auto& x = out.back();
            x.end = s;
            x.extreme = side == ExitSide::Above ? std::max(x.extreme, z) : std::min(x.extreme, z);
        } else {
            inside = false;
        }
        if (e != kNone && mark_eps > 0.0) {
            occupation += offset_weight(d - e, kf);
        }
    });
    return out;
}

SnakeTrace outside_subtrace(const SnakeTrace& t, const OutsideExcursion& e, double level) {
    SnakeTrace sub;
    sub.dt = t.dt;
    sub.dh = t.dh;
    double shift = level - e.exit_label;
    sub.zeta.push_back(0.0);
    sub.zhat.push_back(level);
    sub.zbar.push_back(level);
    sub.zmin.push_back(level);
    std::vector<double> mx{level}, mn{level};
    // from the first to the last visit of the exit vertex
    for (size_t k = e.start; k < e.end; ++k) {
        bool up = t.stack_log[k] != 0;
        sub.stack_log.push_back(up ? 1 : 0);
        if (up) {
            double z = t.zhat[k + 1] + shift;
            mx.push_back(std::max(mx.back(), z));
            mn.push_back(std::min(mn.back(), z));
        } else {
            mx.pop_back();
            mn.pop_back();
        }
        size_t d = mx.size() - 1;
        sub.zeta.push_back(t.dh * static_cast<double>(d));
        sub.zhat.push_back(d == 0 ? level : t.zhat[k + 1] + shift);
        sub.zbar.push_back(mx.back());
        sub.zmin.push_back(mn.back());
    }
    return sub;
}

ExitEstimate exit_measure(const SnakeTrace& t, double s, double eps) {
    if (!(s > 0.0) || !(eps > 0.0)) {
        throw std::invalid_argument("exit_measure: s and eps must be positive");
    }
    ExitEstimate est;
    est.s = s;
    est.eps = eps;
    for (const auto& x : excursions_outside(t, s, ExitSide::Below)) {
        if (x.extreme < -s - eps) {
            ++est.count;
        }
    }
    est.y_s = static_cast<double>(est.count) / snake_v(eps);
    return est;
}

double exit_local_time(const SnakeTrace& t, double h, double eps, ExitSide side) {
    if (!(eps > 0.0)) {
        throw std::invalid_argument("exit_local_time: eps must be positive");
    }
    double kf = eps / t.dh;
    double occupation = 0.0;
    replay_exits(t, h, side, [&](size_t, size_t d, size_t e) {
        if (e != kNone) {
            occupation += offset_weight(d - e, kf);
        }
    });
    return occupation * t.dt / eps;
}

// ---- persistence ----

void write_trace(std::ostream& os, const SnakeTrace& t) {
    using namespace binio;
    os.write("TSNK1", 5);
    put_u64(os, t.size());
    put_f64(os, t.dt);
    put_f64(os, t.dh);
    put_array(os, t.zeta);
    put_array(os, t.zhat);
    put_array(os, t.zbar);
    put_array(os, t.zmin);
    put_bits(os, t.stack_log);
}

SnakeTrace read_trace(std::istream& is) {
    using namespace binio;
    char magic[5];
    if (!is.read(magic, 5) || std::memcmp(magic, "TSNK1", 5) != 0) {
        throw std::runtime_error("trace file: bad magic");
    }
    SnakeTrace t;
    size_t n = get_u64(is);
    t.dt = get_f64(is);
    t.dh = get_f64(is);
    get_array(is, t.zeta, n);
    get_array(is, t.zhat, n);
    get_array(is, t.zbar, n);
    get_array(is, t.zmin, n);
    t.stack_log = get_bits(is);
    if (t.stack_log.size() + 1 != n) throw std::runtime_error("trace file: inconsistent step count");
    return t;
}

void save_trace(const std::string& path, const SnakeTrace& t) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open " + path);
    write_trace(os, t);
}

SnakeTrace load_trace(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("cannot open " + path);
    return read_trace(is);
}

void write_trace_csv(std::ostream& os, const SnakeTrace& t) {
    os << "t,zeta,zhat,zbar,zmin\n";
    os << std::setprecision(10);
    for (size_t s = 0; s < t.size(); ++s) {
        os << t.dt * static_cast<double>(s) << ',' << t.zeta[s] << ',' << t.zhat[s] << ','
           << t.zbar[s] << ',' << t.zmin[s] << '\n';
    }
}

}  // namespace treesub
