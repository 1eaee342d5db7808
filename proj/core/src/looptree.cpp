#include "treesub/looptree.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <numeric>
#include <ostream>
#include <stdexcept>

#include "treesub/chain.hpp"

namespace treesub {

namespace {

size_t find_root(std::vector<size_t>& p, size_t x) {
    while (p[x] != x) {
        p[x] = p[p[x]];
        x = p[x];
    }
    return x;
}

}  // namespace

ClassStructure sim_classes(const std::vector<double>& H, double tol) {
    ClassStructure cs;
    size_t n = H.size();
    std::vector<size_t> stack;
    for (size_t t = 0; t < n; ++t) {
        while (!stack.empty() && H[stack.back()] > H[t] + tol) stack.pop_back();
        if (!stack.empty() && std::abs(H[stack.back()] - H[t]) <= tol) {
            cs.pairs.emplace_back(stack.back(), t);
            stack.back() = t;
        } else {
            stack.push_back(t);
        }
    }
    std::vector<size_t> parent(n);
    std::iota(parent.begin(), parent.end(), size_t(0));
    for (auto [s, t] : cs.pairs) {
        size_t a = find_root(parent, s), b = find_root(parent, t);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
    cs.class_id.resize(n);
    cs.members.resize(n);
    for (size_t u = 0; u < n; ++u) {
        // roots are always the smallest index of their set
        cs.class_id[u] = find_root(parent, u);
        cs.members[cs.class_id[u]].push_back(u);
    }
    return cs;
}

LooptreeView::LooptreeView(const GammaBuild& g) : H_(g.target), delta_(g.tc.delta), tc_(g.tc) {
    if (g.which != Extremum::Min) {
        throw std::invalid_argument("looptree: needs the time change of the label minimum");
    }
    rmq_ = MaxTable(H_);
    cls_ = sim_classes(H_);
}

LooptreeView::LooptreeView(std::vector<double> H, double delta) : H_(std::move(H)), delta_(delta) {
    if (H_.empty()) {
        throw std::invalid_argument("looptree: empty series");
    }
    rmq_ = MaxTable(H_);
    cls_ = sim_classes(H_);
}

double d_circ_loop_raw(const LooptreeView& v, size_t a, size_t b) {
    if (a >= v.size() || b >= v.size()) {
        throw std::out_of_range("d_circ_loop: index out of range");
    }
    if (a == b) return 0.0;
    size_t i = std::min(a, b), j = std::max(a, b);
    double inner = v.cyclic_max(i, j);
    double outer = v.cyclic_max(j, i);
    return 2.0 * std::min(inner, outer) - v.H()[a] - v.H()[b];
}

double d_circ_loop(const LooptreeView& v, size_t a, size_t b) {
    if (a >= v.size() || b >= v.size()) {
        throw std::out_of_range("d_circ_loop: index out of range");
    }
    if (v.class_of(a) == v.class_of(b)) return 0.0;
    double best = std::numeric_limits<double>::infinity();
    for (size_t x : v.members(a)) {
        for (size_t y : v.members(b)) {
            best = std::min(best, d_circ_loop_raw(v, x, y));
        }
    }
    return best;
}

std::vector<double> loop_chain_distances(const LooptreeView& v, const std::vector<size_t>& sample,
                                         size_t src_pos) {
    if (src_pos >= sample.size()) {
        throw std::out_of_range("loop_chain_distances: source not in sample");
    }
    return dense_dijkstra(sample.size(), src_pos,
                          [&](size_t x, size_t y) { return d_circ_loop(v, sample[x], sample[y]); });
}

double d_star_loop(const LooptreeView& v, const std::vector<size_t>& sample, size_t a, size_t b) {
    auto pa = std::find(sample.begin(), sample.end(), a);
    auto pb = std::find(sample.begin(), sample.end(), b);
    if (pa == sample.end() || pb == sample.end()) {
        throw std::invalid_argument("d_star_loop: endpoint not in sample");
    }
    if (a == b) return 0.0;
    auto ia = static_cast<size_t>(pa - sample.begin());
    auto ib = static_cast<size_t>(pb - sample.begin());
    auto dist = dense_dijkstra(
        sample.size(), ia, [&](size_t x, size_t y) { return d_circ_loop(v, sample[x], sample[y]); },
        ib);
    return dist[ib];
}

size_t phi_map(const LooptreeView& v, size_t u) {
    if (!v.has_source()) {
        throw std::logic_error("phi_map: looptree has no source trace");
    }
    if (u + 1 >= v.size()) {
        throw std::out_of_range("phi_map: u outside [0, chi)");
    }
    return v.tc().tau[u];
}

void write_looptree_csv(std::ostream& os, const LooptreeView& v) {
    os << "u,H_u,tau_u,class_id\n" << std::setprecision(std::numeric_limits<double>::max_digits10);
    for (size_t u = 0; u < v.size(); ++u) {
        os << u << ',' << v.H()[u] << ',';
        if (v.has_source()) os << v.tc().tau[u];
        os << ',' << v.class_of(u) << '\n';
    }
}

}  // namespace treesub
