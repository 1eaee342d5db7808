#include "treesub/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include <boost/math/special_functions/gamma.hpp>

namespace treesub {

TailFit tail_regression(const std::vector<double>& samples, const std::vector<double>& weights,
                        double r_min, double r_max, size_t grid) {
    if (samples.size() != weights.size()) {
        throw std::invalid_argument("tail_regression: weights do not match samples");
    }
    if (grid < 30) {
        throw std::invalid_argument("tail_regression: need at least 30 grid points");
    }
    if (!(r_min > 0.0) || !(r_max > r_min)) {
        throw std::invalid_argument("tail_regression: need 0 < r_min < r_max");
    }
    std::vector<size_t> order(samples.size());
    std::iota(order.begin(), order.end(), size_t(0));
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) { return samples[a] < samples[b]; });
    std::vector<double> sorted(samples.size()), suffix(samples.size() + 1, 0.0);
    for (size_t i = 0; i < order.size(); ++i) sorted[i] = samples[order[i]];
    for (size_t i = order.size(); i > 0; --i) suffix[i - 1] = suffix[i] + weights[order[i - 1]];

    TailFit fit;
    for (size_t g = 0; g < grid; ++g) {
        double r = r_min * std::pow(r_max / r_min, static_cast<double>(g) / static_cast<double>(grid - 1));
        auto it = std::upper_bound(sorted.begin(), sorted.end(), r);
        auto pos = static_cast<size_t>(it - sorted.begin());
        double c = static_cast<double>(sorted.size() - pos);
        if (c < 50.0) {
            throw std::runtime_error("tail_regression: fewer than 50 exceedances at some radius");
        }
        fit.r.push_back(r);
        fit.count.push_back(c);
        fit.rate.push_back(suffix[pos]);
    }
    if (fit.count.front() == fit.count.back()) {
        throw std::runtime_error("tail_regression: degenerate tail, no exceedance varies");
    }

    double sw = 0.0, sx = 0.0, sy = 0.0;
    for (size_t g = 0; g < grid; ++g) {
        double w = fit.count[g];
        sw += w;
        sx += w * std::log(fit.r[g]);
        sy += w * std::log(fit.rate[g]);
    }
    double mx = sx / sw, my = sy / sw;
    double sxx = 0.0, sxy = 0.0;
    for (size_t g = 0; g < grid; ++g) {
        double w = fit.count[g];
        double dx = std::log(fit.r[g]) - mx;
        sxx += w * dx * dx;
        sxy += w * dx * (std::log(fit.rate[g]) - my);
    }
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double rss = 0.0;
    for (size_t g = 0; g < grid; ++g) {
        double e = std::log(fit.rate[g]) - fit.intercept - fit.slope * std::log(fit.r[g]);
        rss += fit.count[g] * e * e;
    }
    fit.se = std::sqrt(rss / static_cast<double>(grid - 2) / sxx);
    return fit;
}

TailFit tail_regression(const std::vector<double>& samples, double weight, double r_min,
                        double r_max, size_t grid) {
    return tail_regression(samples, std::vector<double>(samples.size(), weight), r_min, r_max, grid);
}

Chi2Result two_sample_chi2(const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b,
                           size_t bins) {
    if (bins < 2) {
        throw std::invalid_argument("two_sample_chi2: need at least two bins");
    }
    std::vector<double> ca(bins, 0.0), cb(bins, 0.0);
    for (size_t k = 0; k < a.size(); ++k) ca[std::min(k, bins - 1)] += static_cast<double>(a[k]);
    for (size_t k = 0; k < b.size(); ++k) cb[std::min(k, bins - 1)] += static_cast<double>(b[k]);
    double na = std::accumulate(ca.begin(), ca.end(), 0.0);
    double nb = std::accumulate(cb.begin(), cb.end(), 0.0);
    if (na == 0.0 || nb == 0.0) {
        throw std::runtime_error("two_sample_chi2: empty histogram");
    }
    Chi2Result res;
    double n = na + nb;
    for (size_t k = 0; k < bins; ++k) {
        double tot = ca[k] + cb[k];
        double ea = tot * na / n, eb = tot * nb / n;
        if (ea < 5.0 || eb < 5.0) {
            throw std::runtime_error("two_sample_chi2: expected count below 5 in some bin");
        }
        res.statistic += (ca[k] - ea) * (ca[k] - ea) / ea + (cb[k] - eb) * (cb[k] - eb) / eb;
    }
    res.df = bins - 1;
    res.p_value = boost::math::gamma_q(0.5 * static_cast<double>(res.df), 0.5 * res.statistic);
    return res;
}

double dispersion_index(const std::vector<double>& counts, const std::vector<size_t>& bin,
                        size_t min_per_bin) {
    if (counts.size() != bin.size() || counts.empty()) {
        throw std::invalid_argument("dispersion_index: counts and bins must match");
    }
    size_t nb = *std::max_element(bin.begin(), bin.end()) + 1;
    std::vector<double> sum(nb, 0.0);
    std::vector<size_t> n(nb, 0);
    for (size_t i = 0; i < counts.size(); ++i) {
        sum[bin[i]] += counts[i];
        ++n[bin[i]];
    }
    for (size_t b = 0; b < nb; ++b) {
        if (n[b] != 0 && n[b] < min_per_bin) {
            throw std::runtime_error("dispersion_index: too few observations in a bin");
        }
    }
    double num = 0.0, den = 0.0;
    for (size_t i = 0; i < counts.size(); ++i) {
        double mean = sum[bin[i]] / static_cast<double>(n[bin[i]]);
        num += (counts[i] - mean) * (counts[i] - mean);
    }
    for (size_t b = 0; b < nb; ++b) {
        if (n[b] == 0) continue;
        den += static_cast<double>(n[b] - 1) * sum[b] / static_cast<double>(n[b]);
    }
    if (den == 0.0) {
        return 0.0;
    }
    return num / den;
}

double median(std::vector<double> x) {
    if (x.empty()) {
        throw std::invalid_argument("median: empty sample");
    }
    size_t m = x.size() / 2;
    std::nth_element(x.begin(), x.begin() + static_cast<long>(m), x.end());
    double hi = x[m];
    if (x.size() % 2 == 1) return hi;
    double lo = *std::max_element(x.begin(), x.begin() + static_cast<long>(m));
    return 0.5 * (lo + hi);
}

std::vector<size_t> quantile_bins(const std::vector<double>& x, size_t nbins) {
    if (nbins == 0) {
        throw std::invalid_argument("quantile_bins: need at least one bin");
    }
    std::vector<size_t> order(x.size());
    std::iota(order.begin(), order.end(), size_t(0));
    std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) { return x[a] < x[b]; });
    std::vector<size_t> bin(x.size());
    for (size_t r = 0; r < order.size(); ++r) bin[order[r]] = r * nbins / order.size();
    return bin;
}

}  // namespace treesub
