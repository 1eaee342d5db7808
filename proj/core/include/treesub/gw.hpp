#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "treesub/snake.hpp"

namespace treesub {

// Galton-Watson forest embedded in a nonnegative series at resolution 2^-n.
// Vertex k is an excursion of the series above level a_j = offset + j 2^-n
// that reaches a_{j+1}; vertices are numbered in the order of their initial
// times, which is depth-first order of the forest.
struct DyadicSkeleton {
    int n = 0;
    double offset = 0.0;
    double dt = 1.0;
    std::vector<double> crossing_times;     // linear interpolation of the level crossing
    std::vector<size_t> crossing_index;     // first grid index inside the excursion
    std::vector<std::int64_t> heights;      // generation j
    std::vector<double> scaled;             // 2^n * series[crossing_index]
    std::vector<std::int64_t> parent;       // -1 for roots
    std::vector<size_t> end_index;          // last grid index inside the excursion
    std::vector<std::uint32_t> children;

    size_t K() const { return heights.size(); }
    size_t roots() const;
};

using OffspringHistogram = std::vector<std::uint64_t>;  // counts by number of children

// Single-pass skeleton construction. With keep_vertices = false only the
// offspring histogram of closed vertices and the counters are kept, which
// lets arbitrarily long series be streamed.
class SkeletonBuilder {
public:
    SkeletonBuilder(int n, double offset = 0.0, double dt = 1.0, bool keep_vertices = true);

    void push(double x);
    // closes every open excursion; open vertices enter the histogram only if
    // count_open is set
    void finish(bool count_open = true);

    const DyadicSkeleton& skeleton() const { return sk_; }
    DyadicSkeleton take() { return std::move(sk_); }
    const OffspringHistogram& histogram() const { return hist_; }
    std::uint64_t vertices() const { return next_id_; }
    std::uint64_t root_count() const { return roots_; }
    size_t samples() const { return index_; }

private:
    struct Open {
        double t;
        size_t ci;
        double x;
        std::int64_t id;
        std::uint32_t kids;
    };

    double level(std::int64_t j) const { return offset_ + static_cast<double>(j) * step_; }
    std::int64_t count_below(double x) const;  // #{j >= 0 : a_j < x}
    std::int64_t count_hit(double x) const;    // #{j >= 0 : a_{j+1} <= x}
    void close_top(size_t last);

    int n_;
    double offset_;
    double step_;
    double dt_;
    bool keep_;
    DyadicSkeleton sk_;
    OffspringHistogram hist_;
    std::vector<Open> open_;
    size_t assigned_ = 0;  // open levels that already carry a vertex
    size_t index_ = 0;
    double prev_ = 0.0;
    std::uint64_t next_id_ = 0;
    std::uint64_t roots_ = 0;
};

DyadicSkeleton dyadic_crossings(const std::vector<double>& series, int n, double offset = 0.0,
                                double dt = 1.0);

OffspringHistogram offspring_empirical(const DyadicSkeleton& sk);

// level-n skeleton from the level-(n+1) one: keep even generations that have
// a child, halve the generation, reattach to the grandparent
DyadicSkeleton prune_skeleton(const DyadicSkeleton& fine);

bool same_skeleton(const DyadicSkeleton& a, const DyadicSkeleton& b);

// sup_i |2^-n H^n_{floor(v_n t_i)} - series[i]| with t_i = i dt and H^n_k = 0 for k >= K
double approximation_error(const std::vector<double>& series, const DyadicSkeleton& sk, double v_n,
                           double dt = 1.0);

double max_gap(const DyadicSkeleton& sk);

struct TimeChange {
    double delta = 0.0;                  // target grid spacing
    std::vector<std::uint64_t> index;    // Gamma_s / delta on the source grid
    std::vector<size_t> tau;             // tau_u on the target grid

    double gamma(size_t s) const { return delta * static_cast<double>(index[s]); }
};

enum class Extremum { Max, Min };

struct GammaBuild {
    Extremum which = Extremum::Max;
    DyadicSkeleton skeleton;
    std::vector<double> series;  // zbar, or -zmin
    std::vector<double> target;  // root, one entry per vertex, closing root
    TimeChange tc;

    double chi() const { return tc.delta * static_cast<double>(target.size() - 1); }
    double target_at(size_t s) const { return target[tc.index[s]]; }
};

// delta <= 0 selects the empirical spacing sigma / (K + 1)
GammaBuild build_gamma(const SnakeTrace& trace, int n_max, Extremum which, double delta = 0.0);

void write_skeleton_csv(std::ostream& os, const DyadicSkeleton& sk);
void write_histogram(std::ostream& os, const OffspringHistogram& h);

}  // namespace treesub
