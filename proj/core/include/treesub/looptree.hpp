#pragma once

#include <cstddef>
#include <iosfwd>
#include <utility>
#include <vector>

#include "treesub/gw.hpp"
#include "treesub/rmq.hpp"

namespace treesub {

// Matching relation of a height series: s < t are paired when H_s = H_t and
// H_r > H_s for every r strictly between them. Classes are the transitive
// closure; the class id is the leftmost member.
struct ClassStructure {
    std::vector<std::pair<size_t, size_t>> pairs;
    std::vector<size_t> class_id;
    std::vector<std::vector<size_t>> members;  // indexed by class id, empty otherwise
};

ClassStructure sim_classes(const std::vector<double>& H, double tol = 0.0);

class LooptreeView {
public:
    // from a build_gamma(which = Min) result
    explicit LooptreeView(const GammaBuild& g);
    // bare height series on a grid of spacing delta, no source trace
    LooptreeView(std::vector<double> H, double delta);

    const std::vector<double>& H() const { return H_; }
    size_t size() const { return H_.size(); }
    double chi() const { return delta_ * static_cast<double>(H_.size() - 1); }
    const TimeChange& tc() const { return tc_; }
    const ClassStructure& classes() const { return cls_; }
    size_t class_of(size_t u) const { return cls_.class_id[u]; }
    const std::vector<size_t>& members(size_t u) const { return cls_.members[cls_.class_id[u]]; }
    double cyclic_max(size_t i, size_t j) const { return rmq_.cyclic_value(i, j); }
    bool has_source() const { return !tc_.tau.empty(); }

private:
    std::vector<double> H_;
    double delta_ = 1.0;
    TimeChange tc_;
    MaxTable rmq_;
    ClassStructure cls_;
};

// 2 min(max over [a, b], max over [b, a]) - H_a - H_b at the given indices
double d_circ_loop_raw(const LooptreeView& v, size_t a, size_t b);

// the same, minimized over the members of both classes
double d_circ_loop(const LooptreeView& v, size_t a, size_t b);

// shortest chain over the sample with class-minimized edge weights
double d_star_loop(const LooptreeView& v, const std::vector<size_t>& sample, size_t a, size_t b);
std::vector<double> loop_chain_distances(const LooptreeView& v, const std::vector<size_t>& sample,
                                         size_t src_pos);

// tau_u, a source index in the metric net
size_t phi_map(const LooptreeView& v, size_t u);

void write_looptree_csv(std::ostream& os, const LooptreeView& v);

}  // namespace treesub
