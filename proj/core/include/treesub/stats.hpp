#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace treesub {

struct TailFit {
    double slope = 0.0;
    double se = 0.0;  // standard error of the slope
    double intercept = 0.0;  // log rate at r = 1
    std::vector<double> r;
    std::vector<double> rate;
    std::vector<double> count;
};

// Weighted least squares of log rate(r) on log r over `grid` log-spaced radii
// in [r_min, r_max], where rate(r) = sum of weights of samples above r and
// each point is weighted by its exceedance count.
// Needs grid >= 30 and >= 50 exceedances at every radius.
TailFit tail_regression(const std::vector<double>& samples, const std::vector<double>& weights,
                        double r_min, double r_max, size_t grid = 40);
TailFit tail_regression(const std::vector<double>& samples, double weight, double r_min,
                        double r_max, size_t grid = 40);

struct Chi2Result {
    double statistic = 0.0;
    size_t df = 0;
    double p_value = 1.0;
};

// Homogeneity test of two count histograms after pooling counts >= bins - 1
// into the last bin. Every expected count must be >= 5.
Chi2Result two_sample_chi2(const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b,
                           size_t bins);

// sum_b sum_i (c_i - mean_b)^2 / sum_b (n_b - 1) mean_b; each bin needs
// >= min_per_bin observations
double dispersion_index(const std::vector<double>& counts, const std::vector<size_t>& bin,
                        size_t min_per_bin = 100);

double median(std::vector<double> x);

// equal-count bins of x: bin[i] in [0, nbins)
std::vector<size_t> quantile_bins(const std::vector<double>& x, size_t nbins);

}  // namespace treesub
