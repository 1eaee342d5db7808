#include "treesub/levy.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

namespace treesub {

OffspringLaw::OffspringLaw(double gamma, size_t table_size) : gamma_(gamma) {
    if (!(gamma > 1.0) || gamma > 2.0) {
        throw std::invalid_argument("offspring law: gamma must lie in (1, 2]");
    }
    if (gamma == 2.0) {
        // geometric(1/2): P(k) = 2^-(k+1); sampled in closed form
        pmf_.resize(64);
        for (size_t k = 0; k < pmf_.size(); ++k) pmf_[k] = std::ldexp(1.0, -static_cast<int>(k) - 1);
        return;
    }
    pmf_.resize(table_size);
    cdf_.resize(table_size);
    // coefficients of (1 - s)^g: a_0 = 1, a_k = a_{k-1} (k - 1 - g) / k
    double a = -gamma;  // a_1
    pmf_[0] = 1.0 / gamma;
    pmf_[1] = 0.0;
    for (size_t k = 2; k < table_size; ++k) {
        a *= (static_cast<double>(k) - 1.0 - gamma) / static_cast<double>(k);
        pmf_[k] = a / gamma;
    }
    double acc = 0.0;
    for (size_t k = 0; k < table_size; ++k) {
        acc += pmf_[k];
        cdf_[k] = acc;
    }
    // guide_[b] = first k with cdf_[k] > b / kGuide
    guide_.resize(kGuide + 1);
    size_t k = 0;
    for (size_t b = 0; b <= kGuide; ++b) {
        double level = static_cast<double>(b) / kGuide;
        while (k + 1 < cdf_.size() && cdf_[k] <= level) ++k;
        guide_[b] = static_cast<uint32_t>(k);
    }
}

double OffspringLaw::mass(size_t k) const {
    if (k < pmf_.size()) return pmf_[k];
    if (gamma_ == 2.0) return std::ldexp(1.0, -static_cast<int>(std::min<size_t>(k, 2000)) - 1);
    return 0.0;
}

std::int64_t OffspringLaw::sample(CounterRng& rng) const {
    double u = rng.uniform();
    if (gamma_ == 2.0) {
        return static_cast<std::int64_t>(std::floor(-std::log2(u)));
    }
    if (u < cdf_[0]) return 0;
    if (u >= cdf_.back()) {
        // Pareto tail with the same index beyond the table
        double k0 = static_cast<double>(cdf_.size());
        double v = rng.uniform();
        return static_cast<std::int64_t>(std::floor(k0 * std::pow(v, -1.0 / gamma_)));
    }
    auto b = static_cast<size_t>(u * kGuide);
    auto lo = cdf_.begin() + guide_[b];
    auto hi = cdf_.begin() + (b + 1 < guide_.size() ? guide_[b + 1] + 1 : cdf_.size());
    auto it = std::upper_bound(lo, hi, u);
    return static_cast<std::int64_t>(it - cdf_.begin());
}

SkipFreeWalk SkipFreeWalk::from_increments(std::vector<std::int64_t> inc) {
    SkipFreeWalk w;
    w.increments = std::move(inc);
    w.S.resize(w.increments.size() + 1);
    w.I.resize(w.increments.size() + 1);
    w.S[0] = w.I[0] = 0;
    for (size_t k = 0; k < w.increments.size(); ++k) {
        if (w.increments[k] < -1) {
            throw std::invalid_argument("skip-free walk: increment below -1");
        }
        w.S[k + 1] = w.S[k] + w.increments[k];
        w.I[k + 1] = std::min(w.I[k], w.S[k + 1]);
    }
    return w;
}

BranchingLaw BranchingLaw::psi0() { return {BranchingFamily::Psi0, std::sqrt(8.0 / 3.0), 0.5}; }
BranchingLaw BranchingLaw::stable(double beta, double c) { return {BranchingFamily::Stable, c, beta}; }
BranchingLaw BranchingLaw::quadratic(double c) { return {BranchingFamily::Quadratic, c, 1.0}; }

SkipFreeWalk sample_walk(double gamma, size_t n, std::uint64_t seed) {
    WalkStream ws(gamma, seed);
    std::vector<std::int64_t> inc(n);
    for (auto& x : inc) x = ws.next();
    return SkipFreeWalk::from_increments(std::move(inc));
}

WalkStream::WalkStream(double gamma, std::uint64_t seed, std::uint64_t stream)
    : law_(gamma), rng_(seed, stream) {}

std::int64_t HeightStream::push(std::int64_t s) {
    while (!stack_.empty() && stack_.back() > s) {
        stack_.pop_back();
    }
    auto h = static_cast<std::int64_t>(stack_.size());
    stack_.push_back(s);
    return h;
}

HeightSeq discrete_height(const SkipFreeWalk& w) {
    HeightSeq hs;
    hs.H.resize(w.S.size());
    HeightStream st;
    hs.chi = w.S.size() - 1;
    bool found = false;
    for (size_t k = 0; k < w.S.size(); ++k) {
        hs.H[k] = st.push(w.S[k]);
        if (!found && w.S[k] == -1) {
            hs.chi = k;
            found = true;
        }
    }
    return hs;
}

double theoretical_v(const BranchingLaw& law, double h) {
    if (!(h > 0.0)) {
        throw std::invalid_argument("theoretical_v: h must be positive");
    }
    switch (law.family) {
        case BranchingFamily::Psi0:
            return 1.5 / (h * h);
        case BranchingFamily::Stable:
            return std::pow(law.c * law.beta * h, -1.0 / law.beta);
        case BranchingFamily::Quadratic:
            return 1.0 / (law.c * h);
    }
    return 0.0;
}

std::vector<double> level_local_time(const HeightSeq& hs, double h, double eps, double scale,
                                     double dt) {
    if (!(eps > 0.0)) {
        throw std::invalid_argument("level_local_time: eps must be positive");
    }
    std::vector<double> L(hs.H.size(), 0.0);
    double count = 0.0;
    for (size_t r = 0; r < hs.H.size(); ++r) {
        L[r] = count * dt / eps;
        double x = static_cast<double>(hs.H[r]) * scale;
        if (h < x && x <= h + eps) count += 1.0;
    }
    return L;
}

std::vector<double> record_local_time(const HeightSeq& hs) {
    std::vector<double> L(hs.H.size(), 0.0);
    double count = 0.0;
    for (size_t r = 1; r < hs.H.size(); ++r) {
        if (hs.H[r] == 0) count += 1.0;
        L[r] = count;
    }
    return L;
}

std::vector<ExcursionAbove> excursions_above(const HeightSeq& hs, std::int64_t h) {
    if (h < 0) {
        throw std::invalid_argument("excursions_above: level must be nonnegative");
    }
    std::vector<ExcursionAbove> out;
    double visits = 0.0;
    for (size_t r = 0; r < hs.H.size();) {
        if (hs.H[r] <= h) {
            if (hs.H[r] == h) visits += 1.0;
            ++r;
            continue;
        }
        ExcursionAbove e;
        e.start = r;
        e.mark = visits;
        while (r < hs.H.size() && hs.H[r] > h) {
            e.sub.H.push_back(hs.H[r] - h - 1);
            ++r;
        }
        e.end = r - 1;
        e.sub.chi = e.sub.H.size();
        out.push_back(std::move(e));
    }
    return out;
}

void write_walk_csv(std::ostream& os, const SkipFreeWalk& w, const HeightSeq& hs) {
    os << "# treesub-walk v1 n=" << w.increments.size() << '\n';
    os << "k,S,H\n";
    for (size_t k = 0; k < w.S.size(); ++k) {
        os << k << ',' << w.S[k] << ',' << hs.H[k] << '\n';
    }
}

}  // namespace treesub
