#pragma once

// Brute-force reference implementations, quadratic or worse, used only to
// check the fast code paths on small inputs.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

namespace oracle {

inline std::vector<std::int64_t> height(const std::vector<std::int64_t>& S) {
    std::vector<std::int64_t> H(S.size(), 0);
    for (size_t n = 0; n < S.size(); ++n) {
        for (size_t k = 0; k < n; ++k) {
            std::int64_t m = *std::min_element(S.begin() + k, S.begin() + n + 1);
            H[n] += S[k] == m;
        }
    }
    return H;
}

inline double range_min(const std::vector<double>& h, size_t i, size_t j) {
    if (i > j) std::swap(i, j);
    return *std::min_element(h.begin() + i, h.begin() + j + 1);
}

inline double tree_distance(const std::vector<double>& h, size_t i, size_t j) {
    return h[i] + h[j] - 2.0 * range_min(h, i, j);
}

// closed cyclic arc i, i+1, ..., j
template <class F>
double cyclic_fold(const std::vector<double>& v, size_t i, size_t j, F f) {
    double best = v[i];
    for (size_t k = i;; k = (k + 1) % v.size()) {
        best = f(best, v[k]);
        if (k == j) break;
    }
    return best;
}

inline double cyclic_min(const std::vector<double>& v, size_t i, size_t j) {
    return cyclic_fold(v, i, j, [](double a, double b) { return std::min(a, b); });
}

inline double cyclic_max(const std::vector<double>& v, size_t i, size_t j) {
    return cyclic_fold(v, i, j, [](double a, double b) { return std::max(a, b); });
}

inline double d_circ(const std::vector<double>& z, size_t s, size_t t) {
    return z[s] + z[t] - 2.0 * std::max(cyclic_min(z, s, t), cyclic_min(z, t, s));
}

// pairs s < t with H_s = H_t and H_r > H_s strictly between
inline std::vector<std::pair<size_t, size_t>> matching_pairs(const std::vector<double>& H) {
    std::vector<std::pair<size_t, size_t>> out;
    for (size_t s = 0; s < H.size(); ++s) {
        for (size_t t = s + 1; t < H.size(); ++t) {
            if (H[t] != H[s]) continue;
            bool above = true;
            for (size_t r = s + 1; r < t; ++r) above = above && H[r] > H[s];
            if (above) out.emplace_back(s, t);
        }
    }
    return out;
}

// leftmost member of each class of the transitive closure
inline std::vector<size_t> classes(const std::vector<double>& H) {
    std::vector<size_t> root(H.size());
    std::iota(root.begin(), root.end(), 0);
    auto find = [&](size_t x) {
        while (root[x] != x) x = root[x] = root[root[x]];
        return x;
    };
    for (auto [s, t] : matching_pairs(H)) {
        size_t a = find(s), b = find(t);
        if (a != b) root[std::max(a, b)] = std::min(a, b);
    }
    std::vector<size_t> id(H.size());
    for (size_t i = 0; i < H.size(); ++i) id[i] = find(i);
    return id;
}

inline double loop_raw(const std::vector<double>& H, size_t a, size_t b) {
    return 2.0 * std::min(cyclic_max(H, a, b), cyclic_max(H, b, a)) - H[a] - H[b];
}

inline double d_circ_loop(const std::vector<double>& H, size_t a, size_t b) {
    auto id = classes(H);
    if (id[a] == id[b]) return 0.0;
    double best = loop_raw(H, a, b);
    for (size_t x = 0; x < H.size(); ++x) {
        if (id[x] != id[a]) continue;
        for (size_t y = 0; y < H.size(); ++y) {
            if (id[y] == id[b]) best = std::min(best, loop_raw(H, x, y));
        }
    }
    return best;
}

}  // namespace oracle
