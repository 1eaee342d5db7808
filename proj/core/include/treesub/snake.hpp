#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "treesub/rng.hpp"

namespace treesub {

enum class SnakeMode { NormalizedExcursion, ReflectedRun };

struct SnakeConfig {
    double dt = 1e-4;
    double dh = 1e-2;
    std::uint64_t seed = 1;
    SnakeMode mode = SnakeMode::NormalizedExcursion;
    size_t steps = 0;          // normalized mode: excursion length (even)
    double total_time = 0.0;   // reflected mode: time budget

    // dh = sqrt(dt)
    static SnakeConfig with_dt(double dt, std::uint64_t seed);
    void validate() const;
};

// Lattice lifetime path: up[k] != 0 when step k goes up by dh.
struct Lifetime {
    double dh = 0.0;
    std::vector<std::uint8_t> up;

    size_t steps() const { return up.size(); }
    std::vector<double> zeta() const;
};

// Exactly one of the steps uniform in law among positive lattice excursions
// of the given even length (cycle lemma applied to a shuffled bridge).
Lifetime sample_excursion(const SnakeConfig& cfg, size_t steps, std::uint64_t stream = 0);

// one raw reflected-walk excursion: up, then fair steps until back at 0;
// returns false (leaving a partial path) if max_steps is reached first
bool sample_raw_excursion(BitSource& bits, size_t max_steps, Lifetime& out);

struct SnakeTrace {
    double dt = 0.0;
    double dh = 0.0;
    std::vector<double> zeta;
    std::vector<double> zhat;
    std::vector<double> zbar;
    std::vector<double> zmin;
    std::vector<std::uint8_t> stack_log;  // 1 = push (lifetime up), 0 = pop

    size_t size() const { return zeta.size(); }
    double sigma() const { return dt * static_cast<double>(stack_log.size()); }
};

struct ReflectedRun {
    std::vector<SnakeTrace> traces;
    double local_time = 0.0;
    size_t truncated = 0;  // excursions dropped because the budget ran out
};

// Ancestral stack of the lattice snake. Each entry stores the label, the
// running max and the running min along the path from the root.
class SnakeStepper {
public:
    SnakeStepper(double dh, CounterRng rng);

    void push() { push_increment(sd_ * rng_.normal()); }
    void push_increment(double dz);
    void pop() { stack_.pop_back(); }

    size_t depth() const { return stack_.size() - 1; }
    double zhat() const { return stack_.back().z; }
    double zbar() const { return stack_.back().zmax; }
    double zmin() const { return stack_.back().zmin; }
    double label_at(size_t d) const { return stack_[d].z; }
    double dh() const { return dh_; }

    void reset();

private:
    struct Entry {
        double z, zmax, zmin;
    };
    double dh_;
    double sd_;
    CounterRng rng_;
    std::vector<Entry> stack_;
};

SnakeTrace run_snake(const SnakeConfig& cfg, const Lifetime& life, std::uint64_t stream = 0);

// Reflected mode: raw excursions concatenated until cfg.total_time is spent.
// The unfinished last excursion is dropped; local_time = 2 dh per excursion.
ReflectedRun run_reflected(const SnakeConfig& cfg);

// local time carried by one lattice excursion
inline double excursion_local_time(double dh) { return 2.0 * dh; }

// labels of the path W_s from the root to the tip, replayed from the log
std::vector<double> reconstruct_path(const SnakeTrace& t, size_t s);

std::vector<size_t> theta_times(const SnakeTrace& t);

enum class ExitSide { Above, Below };

// One excursion outside the domain: the maximal run of times at which the tip
// is the exit vertex or a descendant of it, where the exit vertex is the first
// vertex of the path whose label reaches the level (>= h for Above, <= -h for
// Below). On the lattice the exit vertex can be revisited between children;
// those visits do not split the excursion.
struct OutsideExcursion {
    size_t start = 0;          // first visit of the exit vertex
    size_t end = 0;            // last visit of the exit vertex
    double exit_height = 0.0;  // tau
    double exit_label = 0.0;   // label of the exit vertex
    double extreme = 0.0;      // max (Above) or min (Below) label inside
    double mark = 0.0;         // exit local time accumulated before start
};

std::vector<OutsideExcursion> excursions_outside(const SnakeTrace& t, double h,
                                                 ExitSide side = ExitSide::Above,
                                                 double mark_eps = 0.0);

// sub-trace of one component, re-rooted at the exit vertex, labels shifted so
// the root sits at the level (h for Above, -h for Below)
SnakeTrace outside_subtrace(const SnakeTrace& t, const OutsideExcursion& e, double level);

struct ExitEstimate {
    double s = 0.0;
    double eps = 0.0;
    size_t count = 0;
    double y_s = 0.0;
};

// v(eps) = 3 / (2 eps^2)
inline double snake_v(double eps) { return 1.5 / (eps * eps); }

// excursions outside (-s, inf) whose label min goes below -s - eps
ExitEstimate exit_measure(const SnakeTrace& t, double s, double eps);

// (1/eps) * dt * #{r : tau(W_r) < zeta_r < tau(W_r) + eps}
double exit_local_time(const SnakeTrace& t, double h, double eps,
                       ExitSide side = ExitSide::Above);

void write_trace(std::ostream& os, const SnakeTrace& t);
SnakeTrace read_trace(std::istream& is);
void save_trace(const std::string& path, const SnakeTrace& t);
SnakeTrace load_trace(const std::string& path);
void write_trace_csv(std::ostream& os, const SnakeTrace& t);

}  // namespace treesub
