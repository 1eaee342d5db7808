#include "treesub/map.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <iterator>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "treesub/chain.hpp"

namespace treesub {

MapView::MapView(SnakeTrace trace) : trace_(std::move(trace)) {
    if (trace_.size() == 0) {
        throw std::invalid_argument("map: empty trace");
    }
    rmq_ = MinTable(trace_.zhat);
    astar_ = rmq_.arg(0, trace_.size() - 1);
}

double d_circ(const MapView& m, size_t s, size_t t) {
    if (s >= m.size() || t >= m.size()) {
        throw std::out_of_range("d_circ: index out of range");
    }
    if (s == t) return 0.0;
    size_t i = std::min(s, t), j = std::max(s, t);
    double inner = m.cyclic_min(i, j);
    double outer = m.cyclic_min(j, i);
    return m.zhat(s) + m.zhat(t) - 2.0 * std::max(inner, outer);
}

std::vector<size_t> vertex_visits(const MapView& m, size_t s) {
    if (s >= m.size()) {
        throw std::out_of_range("vertex_visits: index out of range");
    }
    const auto& z = m.trace().zeta;
    double h = z[s], tol = 0.5 * m.trace().dh;
    size_t lo = s, hi = s;
    while (lo > 0 && z[lo - 1] > h - tol) --lo;
    while (hi + 1 < z.size() && z[hi + 1] > h - tol) ++hi;
    std::vector<size_t> out;
    for (size_t u = lo; u <= hi; ++u) {
        if (z[u] < h + tol) out.push_back(u);
    }
    return out;
}

double d_circ_point(const MapView& m, size_t s, size_t t) {
    auto a = vertex_visits(m, s), b = vertex_visits(m, t);
    double best = std::numeric_limits<double>::infinity();
    for (size_t u : a) {
        for (size_t v : b) best = std::min(best, d_circ(m, u, v));
    }
    return best;
}

std::vector<size_t> stratified_sample(size_t n, size_t m) {
    if (m == 0) {
        throw std::invalid_argument("stratified_sample: empty sample requested");
    }
    size_t step = std::max<size_t>(1, (n + m - 1) / m);
    std::vector<size_t> out;
    for (size_t k = 0; k < n; k += step) out.push_back(k);
    return out;
}

std::vector<size_t> merge_samples(const std::vector<size_t>& a, const std::vector<size_t>& b) {
    std::vector<size_t> out;
    out.reserve(a.size() + b.size());
    std::vector<size_t> sa(a), sb(b);
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    std::set_union(sa.begin(), sa.end(), sb.begin(), sb.end(), std::back_inserter(out));
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<double> chain_distances(const MapView& m, const std::vector<size_t>& sample,
                                    size_t src_pos) {
    if (src_pos >= sample.size()) {
        throw std::out_of_range("chain_distances: source not in sample");
    }
    return dense_dijkstra(sample.size(), src_pos,
                          [&](size_t u, size_t v) { return d_circ(m, sample[u], sample[v]); });
}

namespace {

size_t position(const std::vector<size_t>& set, size_t x, const char* what) {
    auto it = std::find(set.begin(), set.end(), x);
    if (it == set.end()) {
        throw std::invalid_argument(what);
    }
    return static_cast<size_t>(it - set.begin());
}

double chain_between(const MapView& m, const std::vector<size_t>& set, size_t src, size_t dst,
                     const char* what) {
    size_t a = position(set, src, what);
    size_t b = position(set, dst, what);
    if (a == b) return 0.0;
    auto dist = dense_dijkstra(
        set.size(), a, [&](size_t u, size_t v) { return d_circ(m, set[u], set[v]); }, b);
    return dist[b];
}

}  // namespace

double d_star_upper(const MapView& m, const std::vector<size_t>& sample, size_t src, size_t dst) {
    return chain_between(m, sample, src, dst, "d_star_upper: endpoint not in sample");
}

std::vector<size_t> metric_net_times(const MapView& m) { return theta_times(m.trace()); }

double delta_star(const MapView& m, const std::vector<size_t>& net, size_t src, size_t dst) {
    return chain_between(m, net, src, dst, "delta_star: endpoint not in net");
}

std::vector<size_t> hull_boundary(const MapView& m, double r, double tol) {
    if (!(r >= 0.0) || !(r < -m.zstar())) {
        throw std::invalid_argument("hull_boundary: r must lie in [0, -Z_*)");
    }
    const SnakeTrace& t = m.trace();
    if (tol < 0.0) tol = 2.0 * t.dh;
    double level = m.zstar() + r;
    std::vector<size_t> out;
    // running minimum of the path strictly above each stack entry
    std::vector<double> above{std::numeric_limits<double>::infinity()};
    auto test = [&](size_t s) {
        double z = t.zhat[s];
        if (std::abs(z - level) <= tol && z == t.zmin[s] && above.back() > z) out.push_back(s);
    };
    test(0);
    std::vector<double> mins{t.zhat[0]};
    for (size_t k = 0; k < t.stack_log.size(); ++k) {
        if (t.stack_log[k]) {
            above.push_back(mins.back());
            mins.push_back(std::min(mins.back(), t.zhat[k + 1]));
        } else {
            above.pop_back();
            mins.pop_back();
        }
        test(k + 1);
    }
    return out;
}

std::vector<ComponentRecord> components_and_loops(const MapView& m, const ComponentOptions& opt) {
    const SnakeTrace& t = m.trace();
    double min_depth = opt.min_depth > 0.0 ? opt.min_depth : 5.0 * t.dh;
    double delta = opt.delta > 0.0 ? opt.delta : 5.0 * t.dh;
    double eps = opt.eps > 0.0 ? opt.eps : 4.0 * t.dh;
    double kf = eps / t.dh;
    constexpr size_t none = std::numeric_limits<size_t>::max();

    // Per stack entry: whether the path has gone above zmin + delta since the
    // vertex carrying zmin, the depth of its first return to zmin + delta, and
    // the component (debut vertex) owning it.
    struct Entry {
        bool above;
        size_t exit;
        size_t owner;
    };
    std::vector<ComponentRecord> all(1);
    all[0].debut_level = t.zmin[0];
    std::vector<double> top{t.zhat[0]}, occ{0.0};
    std::vector<Entry> st{{false, none, 0}};
    auto visit = [&](size_t s) {
        const Entry& e = st.back();
        size_t c = e.owner;
        top[c] = std::max(top[c], t.zhat[s]);
        if (t.zhat[s] == all[c].debut_level) all[c].boundary_times.push_back(s);
        all[c].s2 = s;
        if (e.exit != none) {
            double j = static_cast<double>(st.size() - 1 - e.exit);
            occ[c] += j < kf - 1e-9 ? 1.0 : (j <= kf + 1e-9 ? 0.5 : 0.0);
        }
    };
    visit(0);
    for (size_t k = 0; k < t.stack_log.size(); ++k) {
        size_t s = k + 1;
        if (t.stack_log[k]) {
            Entry e = st.back();
            if (t.zmin[s] != t.zmin[s - 1]) {
                // new ancestral minimum: this vertex is a debut
                e = {false, none, all.size()};
                all.emplace_back();
                all.back().debut_level = t.zmin[s];
                all.back().s1 = s;
                top.push_back(t.zhat[s]);
                occ.push_back(0.0);
            } else if (e.exit == none) {
                double z = t.zhat[s];
                if (!e.above && z > t.zmin[s] + delta) {
                    e.above = true;
                } else if (e.above && z <= t.zmin[s] + delta) {
                    e.exit = st.size();
                }
            }
            st.push_back(e);
        } else {
            st.pop_back();
        }
        visit(s);
    }

    std::vector<ComponentRecord> out;
    for (size_t c = 0; c < all.size(); ++c) {
        ComponentRecord& r = all[c];
        r.depth = top[c] - r.debut_level;
        if (r.debut_level <= m.zstar() || r.depth < min_depth) continue;
        r.boundary_size = occ[c] * t.dt / eps;
        r.loop = r.boundary_times;
        out.push_back(std::move(r));
    }
    return out;
}

void write_net_csv(std::ostream& os, const MapView& m, const std::vector<size_t>& net) {
    os << "t,zhat\n" << std::setprecision(std::numeric_limits<double>::max_digits10);
    for (size_t s : net) os << s << ',' << m.zhat(s) << '\n';
}

void write_components_csv(std::ostream& os, const std::vector<ComponentRecord>& comps) {
    os << "debut_level,s1,s2,boundary_count,boundary_size\n" << std::setprecision(10);
    for (const auto& c : comps) {
        os << c.debut_level << ',' << c.s1 << ',' << c.s2 << ',' << c.boundary_times.size() << ','
           << c.boundary_size << '\n';
    }
}

}  // namespace treesub
