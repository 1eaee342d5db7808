#include "treesub/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "treesub/levy.hpp"
#include "treesub/ltsnake.hpp"
#include "treesub/rng.hpp"

namespace treesub {

namespace {

// sup of a Brownian bridge from a to b over time T
double bridge_max(double a, double b, double T, CounterRng& rng) {
    double d = b - a;
    return 0.5 * (a + b + std::sqrt(d * d + 2.0 * T * rng.exponential()));
}

}  // namespace

MaximaSample lifetime_maxima(double dh, std::uint64_t seed, size_t excursions, double stop) {
    CounterRng rng(seed, 0);
    BitSource bits(rng);
    MaximaSample out;
    out.maxima.reserve(excursions);
    auto cap = static_cast<long>(std::floor(stop / dh)) + 1;
    for (size_t i = 0; i < excursions; ++i) {
        long d = 1, top = 1;
        ++out.steps;
        while (d > 0 && top < cap + 1) {
            d += bits.next() ? 1 : -1;
            top = std::max(top, d);
            ++out.steps;
        }
        out.maxima.push_back(dh * static_cast<double>(top));
    }
    out.local_time = 2.0 * dh * static_cast<double>(excursions);
    return out;
}

MaximaSample label_maxima(double dh, std::uint64_t seed, size_t excursions, double stop,
                          bool bridge) {
    CounterRng life(seed, 0);
    BitSource bits(life);
    MaximaSample out;
    out.maxima.reserve(excursions);
    double sd = std::sqrt(dh);
    std::vector<double> z;
    z.reserve(4096);
    for (size_t i = 0; i < excursions; ++i) {
        CounterRng rng(seed, 2 * i + 1);
        z.assign(1, 0.0);
        double top = 0.0;
        bool up = true;  // first step of an excursion
        while (true) {
            if (up) {
                double a = z.back();
                double b = a + sd * rng.normal();
                z.push_back(b);
                top = std::max(top, bridge ? bridge_max(a, b, dh, rng) : b);
            } else {
                z.pop_back();
            }
            ++out.steps;
            if (z.size() == 1 || top > stop) break;
            up = bits.next();
        }
        out.maxima.push_back(top);
    }
    out.local_time = 2.0 * dh * static_cast<double>(excursions);
    return out;
}

MaximaSample lt_maxima(double dh, std::uint64_t seed, size_t excursions, double stop) {
    CounterRng life(seed, 0);
    BitSource bits(life);
    MaximaSample out;
    out.maxima.reserve(excursions);
    for (size_t i = 0; i < excursions; ++i) {
        LTStepper st(dh, CounterRng(seed, 2 * i + 1));
        double top = 0.0;
        bool up = true;
        while (true) {
            if (up) {
                st.push();
                top = std::max(top, st.lambda());
            } else {
                st.pop();
            }
            ++out.steps;
            if (st.depth() == 0 || top > stop) break;
            up = bits.next();
        }
        out.maxima.push_back(top);
    }
    out.local_time = 2.0 * dh * static_cast<double>(excursions);
    return out;
}

SkeletonSample snake_skeleton_offspring(double dh, std::uint64_t seed, int n,
                                        std::uint64_t step_budget, std::uint64_t min_trees) {
    CounterRng life(seed, 0);
    BitSource bits(life);
    SkeletonSample out;
    double sd = std::sqrt(dh);
    SkeletonBuilder sk(n, 0.0, dh * dh, false);
    sk.push(0.0);
    // per stack entry: label and running max of the edge suprema
    struct Entry {
        double z, top;
    };
    std::vector<Entry> st;
    st.reserve(1 << 16);
    for (std::uint64_t i = 0; out.steps < step_budget && out.trees < min_trees; ++i) {
        CounterRng rng(seed, 2 * i + 1);
        OffspringHistogram saved = sk.histogram();
        std::uint64_t saved_roots = sk.root_count(), saved_vertices = sk.vertices();
        st.assign(1, {0.0, 0.0});
        bool up = true, cut = false;
        while (true) {
            if (up) {
                const Entry p = st.back();
                double b = p.z + sd * rng.normal();
                st.push_back({b, std::max(p.top, bridge_max(p.z, b, dh, rng))});
            } else {
                st.pop_back();
            }
            sk.push(st.back().top);
            ++out.steps;
            if (st.size() == 1) break;
            if (out.steps >= step_budget) {
                cut = true;
                break;
            }
            up = bits.next();
        }
        if (cut) {
            sk.finish(false);
            // roll the unfinished excursion back out of the counts
            out.hist = saved;
            out.trees = saved_roots;
            out.vertices = saved_vertices;
            return out;
        }
        ++out.excursions;
        out.trees = sk.root_count();
        out.vertices = sk.vertices();
    }
    sk.finish(true);
    out.hist = sk.histogram();
    return out;
}

SkeletonSample walk_skeleton_offspring(double gamma, std::uint64_t seed, int n,
                                       std::int64_t spacing, std::uint64_t min_trees,
                                       std::uint64_t max_tree_size) {
    WalkStream walk(gamma, seed);
    HeightStream hs;
    SkeletonSample out;
    double step = std::ldexp(1.0, -n);
    double scale = step / static_cast<double>(spacing);
    SkeletonBuilder sk(n, 0.5 * scale, 1.0, false);
    // Trees of the forest are fed one at a time; a tree ends when the walk
    // reaches a new minimum. A tree longer than max_tree_size ends the run and
    // its vertices are rolled back.
    std::int64_t S = 0;
    while (out.trees < min_trees) {
        OffspringHistogram saved = sk.histogram();
        std::uint64_t saved_roots = sk.root_count(), saved_vertices = sk.vertices();
        std::int64_t floor_level = S;
        std::uint64_t size = 0;
        bool cut = false;
        while (true) {
            std::int64_t h = hs.push(S);
            sk.push(static_cast<double>(h) * scale);
            ++out.steps;
            ++size;
            S += walk.next();
            if (S < floor_level) break;
            if (size >= max_tree_size) {
                cut = true;
                break;
            }
        }
        if (cut) {
            sk.finish(false);
            out.hist = saved;
            out.trees = saved_roots;
            out.vertices = saved_vertices;
            return out;
        }
        ++out.excursions;
        out.trees = sk.root_count();
        out.vertices = sk.vertices();
    }
    sk.finish(true);
    out.hist = sk.histogram();
    return out;
}

RootOffspringSample snake_root_offspring(double dh, std::uint64_t seed, int n,
                                         std::uint64_t trees, std::uint64_t step_budget) {
    CounterRng life(seed, 0);
    BitSource bits(life);
    RootOffspringSample out;
    double sd = std::sqrt(dh);
    double l1 = std::ldexp(1.0, -n), l2 = 2.0 * l1;
    struct Entry {
        double z, top;
    };
    std::vector<Entry> st;
    st.reserve(1 << 16);
    for (std::uint64_t i = 0; out.trees < trees && out.steps < step_budget; ++i) {
        CounterRng rng(seed, 2 * i + 1);
        st.assign(1, {0.0, 0.0});
        size_t y = 0;  // depth of the current child excursion, 0 if none
        bool seen = false;
        std::uint64_t kids = 0;
        bool up = true;
        while (true) {
            if (up) {
                const Entry p = st.back();
                double b = p.z + sd * rng.normal();
                st.push_back({b, std::max(p.top, bridge_max(p.z, b, dh, rng))});
                double top = st.back().top;
                if (y == 0 && top >= l1) {
                    y = st.size() - 1;
                    seen = true;
                }
                if (y != 0 && top >= l2) {
                    ++kids;
                    st.resize(y);
                    y = 0;
                }
            } else {
                st.pop_back();
                if (st.size() <= y) y = 0;
            }
            ++out.steps;
            if (st.size() == 1) break;
            up = bits.next();
        }
        ++out.excursions;
        if (seen) {
            if (out.hist.size() <= kids) out.hist.resize(kids + 1, 0);
            ++out.hist[kids];
            ++out.trees;
        }
    }
    return out;
}

RootOffspringSample walk_root_offspring(double gamma, std::uint64_t seed, std::int64_t spacing, std::uint64_t trees,
                                        std::uint64_t step_budget) {
    OffspringLaw law(gamma);
    CounterRng rng(seed, 0);
    RootOffspringSample out;
    // skeleton levels at heights j m + 1/2: a child excursion of the root is
    // the subtree of a generation-m vertex, and it reaches the next level
    // when that subtree has generation 2 m + 1
    auto m = static_cast<size_t>(spacing);
    std::vector<std::int64_t> rem;  // unexplored children per depth
    while (out.trees < trees && out.steps < step_budget) {
        rem.assign(1, law.sample(rng));
        ++out.steps;
        bool seen = false;
        std::uint64_t kids = 0;
        while (true) {
            while (!rem.empty() && rem.back() == 0) rem.pop_back();
            if (rem.empty()) break;
            --rem.back();
            size_t d = rem.size();  // depth of the vertex now visited
            ++out.steps;
            if (d == m + 1) seen = true;
            if (d == 2 * m + 1) {
                ++kids;
                rem.resize(m);
                continue;
            }
            rem.push_back(law.sample(rng));
        }
        ++out.excursions;
        if (seen) {
            if (out.hist.size() <= kids) out.hist.resize(kids + 1, 0);
            ++out.hist[kids];
            ++out.trees;
        }
    }
    return out;
}

std::vector<std::vector<std::int64_t>> stable_walk_excursions(double gamma, std::uint64_t seed,
                                                              size_t min_size, size_t max_size,
                                                              size_t count) {
    WalkStream walk(gamma, seed);
    std::vector<std::vector<std::int64_t>> out;
    std::vector<std::int64_t> h;
    std::int64_t S = 0;
    while (out.size() < count) {
        HeightStream hs;
        h.clear();
        std::int64_t floor_level = S;
        bool big = false;
        while (S >= floor_level) {
            if (!big) {
                h.push_back(hs.push(S));
                big = h.size() >= max_size;
            }
            S += walk.next();
        }
        if (big || h.size() < min_size) continue;
        h.push_back(0);
        out.push_back(h);
    }
    return out;
}

ExitCountSample exit_count_sample(double dh, std::uint64_t seed, double h, double eps,
                                  size_t hits, std::uint64_t step_budget) {
    constexpr size_t kNone = std::numeric_limits<size_t>::max();
    CounterRng life(seed, 0);
    BitSource bits(life);
    ExitCountSample out;
    double unit = excursion_local_time(dh);
    std::vector<size_t> exit_depth;
    for (std::uint64_t i = 0; out.hit_marks.size() < hits && out.steps < step_budget; ++i) {
        SnakeStepper st(dh, CounterRng(seed, 2 * (i + 1) + 1));
        exit_depth.assign(1, kNone);
        bool up = true;
        while (true) {
            if (up) {
                st.push();
                size_t parent = exit_depth.back();
                size_t d = st.depth();
                size_t e = parent != kNone ? parent : (st.zhat() >= h ? d : kNone);
                exit_depth.push_back(e);
                if (parent == kNone && e != kNone) {
                    out.total_mass += unit;
                    ++out.exits;
                }
                if (e != kNone && st.zhat() >= h + eps) {
                    out.hit_marks.push_back(out.total_mass - unit);
                    // skip to the parent of the exit vertex
                    while (st.depth() >= e) {
                        st.pop();
                        exit_depth.pop_back();
                    }
                }
            } else {
                st.pop();
                exit_depth.pop_back();
            }
            ++out.steps;
            if (st.depth() == 0) break;
            up = bits.next();
        }
        ++out.excursions;
    }
    return out;
}

}  // namespace treesub
