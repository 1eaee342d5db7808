#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "treesub/gw.hpp"
#include "treesub/snake.hpp"

namespace treesub {

// Streaming drivers over raw lattice excursions of a reflected run. Each
// excursion is simulated only until the statistic of interest passes its
// stopping level, so heavy-tailed excursion lengths never have to be stored.
// Lifetime bits come from stream 0 of the seed, labels of excursion i from
// stream 2 i + 1.

struct MaximaSample {
    std::vector<double> maxima;  // one per excursion, capped just above the stop level
    double local_time = 0.0;     // 2 dh per excursion
    std::uint64_t steps = 0;     // lattice steps simulated
};

// max zeta per excursion; an excursion stops once zeta > stop
MaximaSample lifetime_maxima(double dh, std::uint64_t seed, size_t excursions, double stop);

// sup of the tip label per excursion; stops once it exceeds stop. With
// bridge = true each edge contributes the maximum of the Brownian bridge
// between its end labels, which is the sup over continuous time of the tip of
// the lattice-lifetime snake; otherwise only grid labels are used.
MaximaSample label_maxima(double dh, std::uint64_t seed, size_t excursions, double stop,
                          bool bridge);

// max lambda_hat per excursion of the local-time snake; stops once it exceeds stop
MaximaSample lt_maxima(double dh, std::uint64_t seed, size_t excursions, double stop);

// offspring histogram of the level-n skeleton of W-bar over a reflected run
// of the given total number of lattice steps; excursions cut by the budget are
// dropped with their vertices
struct SkeletonSample {
    OffspringHistogram hist;
    std::uint64_t trees = 0;
    std::uint64_t vertices = 0;
    std::uint64_t excursions = 0;
    std::uint64_t steps = 0;
};

SkeletonSample snake_skeleton_offspring(double dh, std::uint64_t seed, int n,
                                        std::uint64_t step_budget, std::uint64_t min_trees);

// the same for the height sequence of a forest of gamma-stable Galton-Watson
// trees; one skeleton generation spans `spacing` tree generations (levels at
// half-integer heights j spacing + 1/2)
SkeletonSample walk_skeleton_offspring(double gamma, std::uint64_t seed, int n,
                                       std::int64_t spacing, std::uint64_t min_trees,
                                       std::uint64_t max_tree_size);

// Offspring of the root vertex of each level-n skeleton tree, one count per
// tree. Exploration is depth first; once a child excursion of the root (above
// level 2^-n) is known to reach level 2^(1-n) the rest of it is skipped, which
// leaves the law of everything still to be visited unchanged. Excursions
// whose W-bar stays below 2^-n carry no tree and are discarded.
struct RootOffspringSample {
    OffspringHistogram hist;
    std::uint64_t trees = 0;
    std::uint64_t excursions = 0;
    std::uint64_t steps = 0;
};

RootOffspringSample snake_root_offspring(double dh, std::uint64_t seed, int n,
                                         std::uint64_t trees, std::uint64_t step_budget);

// the same for gamma-stable Galton-Watson trees explored in walk order, with
// `spacing` tree generations per skeleton generation (levels at heights
// j spacing + 1/2, so the result does not depend on n)
RootOffspringSample walk_root_offspring(double gamma, std::uint64_t seed, std::int64_t spacing, std::uint64_t trees,
                                        std::uint64_t step_budget);

// Height sequences (closing 0 appended) of the first `count` trees of a
// gamma-stable forest whose size lies in [min_size, max_size).
std::vector<std::vector<std::int64_t>> stable_walk_excursions(double gamma, std::uint64_t seed,
                                                              size_t min_size, size_t max_size,
                                                              size_t count);

// Excursions outside (-inf, h) over a reflected run, in exploration order.
// Each exit vertex (first vertex of its path with label >= h) carries lattice
// exit local time 2 dh, fixed before its subtree is explored; hit_marks holds,
// for every excursion outside that reaches h + eps, the exit local time of the
// run before its exit vertex. Once an excursion is known to reach h + eps the
// rest of it is skipped: it holds no further exit vertices. Lifetime bits and
// label streams are those of run_reflected.
struct ExitCountSample {
    std::vector<double> hit_marks;
    double total_mass = 0.0;
    std::uint64_t exits = 0;
    std::uint64_t excursions = 0;
    std::uint64_t steps = 0;
};

ExitCountSample exit_count_sample(double dh, std::uint64_t seed, double h, double eps,
                                  size_t hits, std::uint64_t step_budget);

}  // namespace treesub
