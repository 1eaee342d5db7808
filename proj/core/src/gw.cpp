#include "treesub/gw.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace treesub {

size_t DyadicSkeleton::roots() const {
    return static_cast<size_t>(std::count(parent.begin(), parent.end(), std::int64_t{-1}));
}

SkeletonBuilder::SkeletonBuilder(int n, double offset, double dt, bool keep_vertices)
    : n_(n), offset_(offset), step_(std::ldexp(1.0, -n)), dt_(dt), keep_(keep_vertices) {
    if (n < 0) {
        throw std::invalid_argument("skeleton: level must be nonnegative");
    }
    sk_.n = n;
    sk_.offset = offset;
    sk_.dt = dt;
}

std::int64_t SkeletonBuilder::count_below(double x) const {
    if (!(x > offset_)) return 0;
    auto j = static_cast<std::int64_t>(std::floor((x - offset_) / step_));
    while (j >= 0 && level(j) >= x) --j;
    while (level(j + 1) < x) ++j;
    return j + 1;
}

std::int64_t SkeletonBuilder::count_hit(double x) const {
    if (x < level(1)) return 0;
    auto m = static_cast<std::int64_t>(std::floor((x - offset_) / step_));
    while (m >= 1 && level(m) > x) --m;
    while (level(m + 1) <= x) ++m;
    return std::max<std::int64_t>(m, 0);
}

void SkeletonBuilder::close_top(size_t last) {
    const Open& e = open_.back();
    if (e.id >= 0) {
        if (hist_.size() <= e.kids) hist_.resize(e.kids + 1, 0);
        ++hist_[e.kids];
        if (keep_) {
            auto id = static_cast<size_t>(e.id);
            sk_.end_index[id] = last;
            sk_.children[id] = e.kids;
        }
    }
    open_.pop_back();
}

void SkeletonBuilder::push(double x) {
    size_t i = index_;
    if (i == 0 || x > prev_) {
        auto below = static_cast<size_t>(count_below(x));
        for (size_t j = open_.size(); j < below; ++j) {
            double t = 0.0;
            if (i > 0) {
                double a = level(static_cast<std::int64_t>(j));
                t = (static_cast<double>(i - 1) + (a - prev_) / (x - prev_)) * dt_;
            }
            open_.push_back({t, i, x, -1, 0});
        }
        auto hit = std::min(static_cast<size_t>(count_hit(x)), open_.size());
        for (size_t j = assigned_; j < hit; ++j) {
            Open& e = open_[j];
            e.id = static_cast<std::int64_t>(next_id_++);
            std::int64_t par = -1;
            if (j > 0) {
                ++open_[j - 1].kids;
                par = open_[j - 1].id;
            } else {
                ++roots_;
            }
            if (keep_) {
                sk_.crossing_times.push_back(e.t);
                sk_.crossing_index.push_back(e.ci);
                sk_.heights.push_back(static_cast<std::int64_t>(j));
                sk_.scaled.push_back(std::ldexp(e.x, n_));
                sk_.parent.push_back(par);
                sk_.end_index.push_back(e.ci);
                sk_.children.push_back(0);
            }
        }
        assigned_ = std::max(assigned_, hit);
    } else if (x < prev_) {
        auto below = static_cast<size_t>(count_below(x));
        while (open_.size() > below) close_top(i - 1);
        assigned_ = std::min(assigned_, open_.size());
    }
    prev_ = x;
    ++index_;
}

void SkeletonBuilder::finish(bool count_open) {
    size_t last = index_ == 0 ? 0 : index_ - 1;
    while (!open_.empty()) {
        if (count_open) {
            close_top(last);
        } else {
            const Open& e = open_.back();
            if (keep_ && e.id >= 0) {
                sk_.end_index[static_cast<size_t>(e.id)] = last;
                sk_.children[static_cast<size_t>(e.id)] = e.kids;
            }
            open_.pop_back();
        }
    }
    assigned_ = 0;
}

DyadicSkeleton dyadic_crossings(const std::vector<double>& series, int n, double offset,
                                double dt) {
    SkeletonBuilder b(n, offset, dt, true);
    for (double x : series) b.push(x);
    b.finish(true);
    return b.take();
}

OffspringHistogram offspring_empirical(const DyadicSkeleton& sk) {
    if (sk.K() == 0) {
        throw std::invalid_argument("offspring_empirical: empty skeleton");
    }
    OffspringHistogram h;
    for (auto c : sk.children) {
        if (h.size() <= c) h.resize(c + 1, 0);
        ++h[c];
    }
    return h;
}

DyadicSkeleton prune_skeleton(const DyadicSkeleton& fine) {
    if (fine.n < 1) {
        throw std::invalid_argument("prune_skeleton: level must be at least 1");
    }
    DyadicSkeleton out;
    out.n = fine.n - 1;
    out.offset = fine.offset;
    out.dt = fine.dt;
    std::vector<std::int64_t> map(fine.K(), -1);
    for (size_t k = 0; k < fine.K(); ++k) {
        if (fine.heights[k] % 2 != 0 || fine.children[k] == 0) continue;
        map[k] = static_cast<std::int64_t>(out.K());
        std::int64_t par = -1;
        if (fine.parent[k] >= 0) {
            std::int64_t gp = fine.parent[static_cast<size_t>(fine.parent[k])];
            par = map[static_cast<size_t>(gp)];
        }
        out.crossing_times.push_back(fine.crossing_times[k]);
        out.crossing_index.push_back(fine.crossing_index[k]);
        out.heights.push_back(fine.heights[k] / 2);
        out.scaled.push_back(std::ldexp(fine.scaled[k], -1));
        out.parent.push_back(par);
        out.end_index.push_back(fine.end_index[k]);
        out.children.push_back(0);
    }
    for (auto p : out.parent) {
        if (p >= 0) ++out.children[static_cast<size_t>(p)];
    }
    return out;
}

bool same_skeleton(const DyadicSkeleton& a, const DyadicSkeleton& b) {
    return a.n == b.n && a.crossing_times == b.crossing_times &&
           a.crossing_index == b.crossing_index && a.heights == b.heights &&
           a.scaled == b.scaled && a.parent == b.parent && a.end_index == b.end_index &&
           a.children == b.children;
}

double approximation_error(const std::vector<double>& series, const DyadicSkeleton& sk, double v_n,
                           double dt) {
    if (!(v_n > 0.0)) {
        throw std::invalid_argument("approximation_error: v_n must be positive");
    }
    double err = 0.0;
    for (size_t i = 0; i < series.size(); ++i) {
        double u = std::floor(v_n * static_cast<double>(i) * dt);
        double h = 0.0;
        if (u < static_cast<double>(sk.K())) {
            h = std::ldexp(static_cast<double>(sk.heights[static_cast<size_t>(u)]), -sk.n);
        }
        err = std::max(err, std::abs(h - series[i]));
    }
    return err;
}

double max_gap(const DyadicSkeleton& sk) {
    double g = 0.0;
    for (size_t k = 1; k < sk.K(); ++k) {
        g = std::max(g, sk.crossing_times[k] - sk.crossing_times[k - 1]);
    }
    return g;
}

GammaBuild build_gamma(const SnakeTrace& trace, int n_max, Extremum which, double delta) {
    if (n_max < 1) {
        throw std::invalid_argument("build_gamma: n_max must be at least 1");
    }
    size_t N = trace.size();
    if (N < 2) {
        throw std::invalid_argument("build_gamma: trace too short");
    }
    GammaBuild g;
    g.which = which;
    g.series.resize(N);
    for (size_t s = 0; s < N; ++s) {
        g.series[s] = which == Extremum::Max ? trace.zbar[s] : 0.0 - trace.zmin[s];
    }
    g.skeleton = dyadic_crossings(g.series, n_max, 0.0, trace.dt);
    size_t K = g.skeleton.K();
    if (K == 0) {
        throw std::invalid_argument("build_gamma: empty skeleton");
    }

    g.target.resize(K + 2);
    g.target[0] = 0.0;
    for (size_t k = 0; k < K; ++k) {
        g.target[k + 1] = std::ldexp(g.skeleton.scaled[k], -n_max);
    }
    g.target[K + 1] = 0.0;

    double sigma = trace.dt * static_cast<double>(N - 1);
    g.tc.delta = delta > 0.0 ? delta : sigma / static_cast<double>(K + 1);

    g.tc.index.resize(N);
    size_t k = 0;
    for (size_t s = 0; s < N; ++s) {
        while (k < K && g.skeleton.crossing_index[k] <= s) ++k;
        g.tc.index[s] = k;
    }
    g.tc.index[N - 1] = K + 1;

    // tau_u = inf{s : Gamma_s >= u delta}
    g.tc.tau.resize(K + 2);
    g.tc.tau[0] = 0;
    for (size_t k2 = 0; k2 < K; ++k2) g.tc.tau[k2 + 1] = g.skeleton.crossing_index[k2];
    g.tc.tau[K + 1] = N - 1;
    return g;
}

void write_skeleton_csv(std::ostream& os, const DyadicSkeleton& sk) {
    os << "# treesub-skeleton v1 n=" << sk.n << " K=" << sk.K() << '\n';
    os << "k,crossing_time,height,parent_index\n";
    os << std::setprecision(std::numeric_limits<double>::max_digits10);
    for (size_t k = 0; k < sk.K(); ++k) {
        os << k << ',' << sk.crossing_times[k] << ',' << sk.heights[k] << ',' << sk.parent[k]
           << '\n';
    }
}

void write_histogram(std::ostream& os, const OffspringHistogram& h) {
    os << '{';
    bool first = true;
    for (size_t k = 0; k < h.size(); ++k) {
        if (h[k] == 0) continue;
        os << (first ? "" : ", ") << '"' << k << "\": " << h[k];
        first = false;
    }
    os << "}\n";
}

}  // namespace treesub
