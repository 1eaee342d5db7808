#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace treesub {

/*
 * Sparse table over a fixed array. Answers the extremal value on any closed
 * interval [i, j] in O(1) after O(n log n) preprocessing. The reported index
 * is the leftmost extremizer. Better(a, b) is true when a is strictly better
 * than b (std::less for minima, std::greater for maxima).
 *
 * The table keeps its own copy of the values.
 */
template <class Better>
class SparseTable {
public:
    SparseTable() = default;

    explicit SparseTable(std::vector<double> values) : v_(std::move(values)) {
        size_t n = v_.size();
        if (n == 0) {
            return;
        }
        if (n > UINT32_MAX) {
            throw std::length_error("sparse table: array too long");
        }
        size_t levels = std::bit_width(n);
        table_.resize(levels);
        table_[0].resize(n);
        for (size_t i = 0; i < n; ++i) {
            table_[0][i] = static_cast<uint32_t>(i);
        }
        for (size_t k = 1; k < levels; ++k) {
            size_t half = size_t(1) << (k - 1);
            size_t len = n - (size_t(1) << k) + 1;
            auto& prev = table_[k - 1];
            auto& cur = table_[k];
            cur.resize(len);
            for (size_t i = 0; i < len; ++i) {
                cur[i] = pick(prev[i], prev[i + half]);
            }
        }
    }

    size_t size() const { return v_.size(); }

    // leftmost extremal index on [i, j], requires i <= j < size()
    size_t arg(size_t i, size_t j) const {
        size_t k = std::bit_width(j - i + 1) - 1;
        return pick(table_[k][i], table_[k][j + 1 - (size_t(1) << k)]);
    }

    double value(size_t i, size_t j) const { return v_[arg(i, j)]; }

    const std::vector<double>& values() const { return v_; }

    // extremum over the cyclic interval from i to j: [i, j] when i <= j,
    // otherwise [i, n-1] followed by [0, j]
    double cyclic_value(size_t i, size_t j) const {
        if (i <= j) {
            return value(i, j);
        }
        double a = value(i, size() - 1);
        double b = value(0, j);
        return better_(b, a) ? b : a;
    }

private:
    uint32_t pick(uint32_t a, uint32_t b) const {
        return better_(v_[b], v_[a]) ? b : a;
    }

    std::vector<double> v_;
    std::vector<std::vector<uint32_t>> table_;
    Better better_{};
};

using MinTable = SparseTable<std::less<double>>;
using MaxTable = SparseTable<std::greater<double>>;

}  // namespace treesub
