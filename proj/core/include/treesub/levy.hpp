#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "treesub/rng.hpp"

namespace treesub {

// Offspring law with generating function f(s) = s + (1 - s)^g / g for
// 1 < g < 2, and the geometric(1/2) law for g = 2. Sampling is by inversion
// on a table of the first 10^6 masses plus a Pareto tail beyond it.
class OffspringLaw {
public:
    explicit OffspringLaw(double gamma, size_t table_size = 1000000);

    double gamma() const { return gamma_; }
    double mass(size_t k) const;  // exact for k inside the table
    std::int64_t sample(CounterRng& rng) const;

private:
    static constexpr size_t kGuide = 4096;

    double gamma_;
    std::vector<double> pmf_;
    std::vector<double> cdf_;
    std::vector<std::uint32_t> guide_;
};

struct SkipFreeWalk {
    std::vector<std::int64_t> increments;
    std::vector<std::int64_t> S;  // S[0] = 0, size n + 1
    std::vector<std::int64_t> I;  // running minimum of S

    static SkipFreeWalk from_increments(std::vector<std::int64_t> inc);
};

struct HeightSeq {
    std::vector<std::int64_t> H;  // size n + 1
    size_t chi = 0;               // first index with S = -1, or n if none
};

enum class BranchingFamily { Psi0, Stable, Quadratic };

struct BranchingLaw {
    BranchingFamily family = BranchingFamily::Psi0;
    double c = 0.0;
    double beta = 0.0;

    static BranchingLaw psi0();
    static BranchingLaw stable(double beta, double c);
    static BranchingLaw quadratic(double c);
};

SkipFreeWalk sample_walk(double gamma, size_t n, std::uint64_t seed);

// increments of the walk, to stream forests without storing them
class WalkStream {
public:
    WalkStream(double gamma, std::uint64_t seed, std::uint64_t stream = 0);
    std::int64_t next() { return law_.sample(rng_) - 1; }

private:
    OffspringLaw law_;
    CounterRng rng_;
};

// H_n = #{k < n : S_k = min_{k <= j <= n} S_j}, linear time
HeightSeq discrete_height(const SkipFreeWalk& w);

// the same recursion fed one walk value at a time
class HeightStream {
public:
    // height of the vertex whose walk value is s (the first value is S_0)
    std::int64_t push(std::int64_t s);
    void reset() { stack_.clear(); }

private:
    std::vector<std::int64_t> stack_;
};

double theoretical_v(const BranchingLaw& law, double h);

// running (1/eps) * sum_{r < t} 1{h < H_r * scale <= h + eps} * dt, size n + 1
std::vector<double> level_local_time(const HeightSeq& hs, double h, double eps, double scale,
                                     double dt = 1.0);

// running count of strict new minima of S, which equals -I
std::vector<double> record_local_time(const HeightSeq& hs);

struct ExcursionAbove {
    size_t start = 0;
    size_t end = 0;  // last index with H > h
    HeightSeq sub;   // H - h - 1 on [start, end], a forest height sequence
    double mark = 0; // number of visits to level h before start
};

// maximal intervals with H > h
std::vector<ExcursionAbove> excursions_above(const HeightSeq& hs, std::int64_t h);

void write_walk_csv(std::ostream& os, const SkipFreeWalk& w, const HeightSeq& hs);

}  // namespace treesub
