#include "treesub/coded_tree.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace treesub {

void CodingFunction::validate() const {
    if (h.size() < 1) {
        throw std::invalid_argument("coding function: empty grid");
    }
    if (h.front() != 0.0 || h.back() != 0.0) {
        throw std::invalid_argument("coding function: must vanish at both ends");
    }
    for (double x : h) {
        if (!(x >= 0.0)) {
            throw std::invalid_argument("coding function: negative or NaN entry");
        }
    }
}

TreeView::TreeView(CodingFunction coding) : coding_(std::move(coding)) {
    coding_.validate();
    rmq_ = MinTable(coding_.h);
}

static void check_index(const TreeView& t, size_t i) {
    if (i > t.n()) {
        throw std::out_of_range("grid index out of range");
    }
}

double TreeView::interval_min(size_t i, size_t j) const {
    if (i > j) std::swap(i, j);
    return rmq_.value(i, j);
}

size_t TreeView::interval_argmin(size_t i, size_t j) const {
    if (i > j) std::swap(i, j);
    return rmq_.arg(i, j);
}

double tree_distance(const TreeView& t, size_t i, size_t j) {
    check_index(t, i);
    check_index(t, j);
    if (i == j) return 0.0;
    return t.height(i) + t.height(j) - 2.0 * t.interval_min(i, j);
}

bool is_ancestor(const TreeView& t, size_t i, size_t j) {
    check_index(t, i);
    check_index(t, j);
    return t.height(i) == t.interval_min(i, j);
}

double tree_height(const TreeView& t) {
    const auto& h = t.coding().h;
    return *std::max_element(h.begin(), h.end());
}

namespace {

// Sweep in one direction. The stack holds exactly the indices that are
// ancestors of the current one on the side already visited; best[k] is the
// largest g among the first k+1 stack entries.
bool sweep(const std::vector<double>& h, const std::vector<double>& g, bool forward) {
    size_t n = h.size();
    std::vector<size_t> stack;
    std::vector<double> best;
    stack.reserve(64);
    best.reserve(64);
    for (size_t step = 0; step < n; ++step) {
        size_t j = forward ? step : n - 1 - step;
        while (!stack.empty() && h[stack.back()] > h[j]) {
            stack.pop_back();
            best.pop_back();
        }
        if (!best.empty() && best.back() > g[j]) {
            return false;
        }
        double b = best.empty() ? g[j] : std::max(best.back(), g[j]);
        stack.push_back(j);
        best.push_back(b);
    }
    return true;
}

}  // namespace

bool check_monotone(const TreeView& t, const SubordinationInput& g) {
    const auto& h = t.coding().h;
    if (g.size() != h.size()) {
        throw std::invalid_argument("check_monotone: grid mismatch");
    }
    // ancestry is tested from both sides: an index to the right of j at
    // the interval minimum codes the same tree point as one to the left
    return sweep(h, g, true) && sweep(h, g, false);
}

CodingFunction subordinate_coding(const TreeView& t, const SubordinationInput& g) {
    if (!check_monotone(t, g)) {
        throw std::invalid_argument("subordinate_coding: g is not monotone along ancestry");
    }
    if (g.front() != 0.0) {
        throw std::invalid_argument("subordinate_coding: g must vanish at the root");
    }
    CodingFunction out;
    out.sigma = t.coding().sigma;
    out.h = g;
    out.validate();
    return out;
}

double subordinate_distance(const TreeView& t, const SubordinationInput& g, size_t i, size_t j) {
    check_index(t, i);
    check_index(t, j);
    if (g.size() != t.coding().h.size()) {
        throw std::invalid_argument("subordinate_distance: grid mismatch");
    }
    size_t m = t.interval_argmin(i, j);
    return g[i] + g[j] - 2.0 * g[m];
}

void write_coding(std::ostream& os, const CodingFunction& c) {
    os << "treesub-coding v1 n=" << c.n() << " sigma="
       << std::setprecision(std::numeric_limits<double>::max_digits10) << c.sigma << '\n';
    for (double x : c.h) {
        os << x << '\n';
    }
}

CodingFunction read_coding(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) {
        throw std::runtime_error("coding file: missing header");
    }
    std::istringstream hs(line);
    std::string magic, version, ntok, stok;
    hs >> magic >> version >> ntok >> stok;
    if (magic != "treesub-coding" || version != "v1" || ntok.rfind("n=", 0) != 0 ||
        stok.rfind("sigma=", 0) != 0) {
        throw std::runtime_error("coding file: bad header");
    }
    size_t n = std::stoull(ntok.substr(2));
    CodingFunction c;
    c.sigma = std::stod(stok.substr(6));
    c.h.resize(n + 1);
    for (size_t k = 0; k <= n; ++k) {
        if (!(is >> c.h[k])) {
            throw std::runtime_error("coding file: truncated");
        }
    }
    c.validate();
    return c;
}

void save_coding(const std::string& path, const CodingFunction& c) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open " + path);
    write_coding(os, c);
}

CodingFunction load_coding(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open " + path);
    return read_coding(is);
}

}  // namespace treesub
