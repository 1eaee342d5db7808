#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "treesub/rmq.hpp"

namespace treesub {

// Nonnegative excursion sampled on the uniform grid k * sigma / n, k = 0..n.
struct CodingFunction {
    double sigma = 0.0;
    std::vector<double> h;

    size_t n() const { return h.empty() ? 0 : h.size() - 1; }
    double dt() const { return n() == 0 ? 0.0 : sigma / static_cast<double>(n()); }

    // throws std::invalid_argument if h[0], h[n] != 0 or some entry is negative
    void validate() const;
};

// Tree coded by a function, with O(1) interval minima.
class TreeView {
public:
    explicit TreeView(CodingFunction coding);

    const CodingFunction& coding() const { return coding_; }
    size_t n() const { return coding_.n(); }
    double height(size_t i) const { return coding_.h[i]; }

    double interval_min(size_t i, size_t j) const;
    size_t interval_argmin(size_t i, size_t j) const;

    const MinTable& rmq() const { return rmq_; }

private:
    CodingFunction coding_;
    MinTable rmq_;
};

using SubordinationInput = std::vector<double>;

double tree_distance(const TreeView& t, size_t i, size_t j);
bool is_ancestor(const TreeView& t, size_t i, size_t j);
double tree_height(const TreeView& t);

// true iff g[i] <= g[j] whenever i is an ancestor of j
bool check_monotone(const TreeView& t, const SubordinationInput& g);

// coding of the subordinate tree; throws std::invalid_argument on a
// monotonicity violation or grid mismatch
CodingFunction subordinate_coding(const TreeView& t, const SubordinationInput& g);

// g[i] + g[j] - 2 g[leftmost argmin of h on [i, j]]
double subordinate_distance(const TreeView& t, const SubordinationInput& g, size_t i, size_t j);

void write_coding(std::ostream& os, const CodingFunction& c);
CodingFunction read_coding(std::istream& is);
void save_coding(const std::string& path, const CodingFunction& c);
CodingFunction load_coding(const std::string& path);

}  // namespace treesub
