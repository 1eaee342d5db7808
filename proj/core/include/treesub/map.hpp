#pragma once

#include <cstddef>
#include <iosfwd>
#include <vector>

#include "treesub/rmq.hpp"
#include "treesub/snake.hpp"

namespace treesub {

// Label geometry of a snake trace on the circle [0, sigma].
class MapView {
public:
    explicit MapView(SnakeTrace trace);

    const SnakeTrace& trace() const { return trace_; }
    size_t size() const { return trace_.size(); }
    double zhat(size_t s) const { return trace_.zhat[s]; }
    size_t astar_index() const { return astar_; }
    double zstar() const { return trace_.zhat[astar_]; }

    // min of zhat over [i, j] for i <= j, over [i, end] u [0, j] for i > j
    double cyclic_min(size_t i, size_t j) const { return rmq_.cyclic_value(i, j); }

private:
    SnakeTrace trace_;
    MinTable rmq_;
    size_t astar_ = 0;
};

// Z_s + Z_t - 2 max(min over [s, t], min over [t, s])
double d_circ(const MapView& m, size_t s, size_t t);

// all visit times of the tree vertex visited at time s, increasing
std::vector<size_t> vertex_visits(const MapView& m, size_t s);

// d_circ between the tree points visited at s and t: minimum over all pairs
// of visit times (0 when both are visits of the same vertex)
double d_circ_point(const MapView& m, size_t s, size_t t);

// every ceil(n / m)-th index of [0, n)
std::vector<size_t> stratified_sample(size_t n, size_t m);
// sorted union
std::vector<size_t> merge_samples(const std::vector<size_t>& a, const std::vector<size_t>& b);

// shortest D°-chains from sample[src_pos] to every sample member
std::vector<double> chain_distances(const MapView& m, const std::vector<size_t>& sample,
                                    size_t src_pos);

double d_star_upper(const MapView& m, const std::vector<size_t>& sample, size_t src, size_t dst);

std::vector<size_t> metric_net_times(const MapView& m);

// chains constrained to the net
double delta_star(const MapView& m, const std::vector<size_t>& net, size_t src, size_t dst);

// tol < 0 selects 2 dh
std::vector<size_t> hull_boundary(const MapView& m, double r, double tol = -1.0);

// One component per debut vertex (a vertex whose label is a new ancestral
// minimum). [s1, s2] spans the visits of the debut vertex; the component is
// the set of times in it with zmin equal to the debut level, the rest belongs
// to deeper components nested inside.
struct ComponentRecord {
    double debut_level = 0.0;
    size_t s1 = 0;
    size_t s2 = 0;
    double depth = 0.0;  // max zhat - debut_level over [s1, s2]
    std::vector<size_t> boundary_times;
    double boundary_size = 0.0;
    std::vector<size_t> loop;  // boundary times in cyclic order
};

struct ComponentOptions {
    double min_depth = -1.0;  // < 0: 5 dh
    double delta = -1.0;      // exit level above the debut, < 0: 5 dh
    double eps = -1.0;        // lifetime window, < 0: 4 dh
};

std::vector<ComponentRecord> components_and_loops(const MapView& m,
                                                  const ComponentOptions& opt = {});

void write_net_csv(std::ostream& os, const MapView& m, const std::vector<size_t>& net);
void write_components_csv(std::ostream& os, const std::vector<ComponentRecord>& comps);

}  // namespace treesub
