#include "voxal/rank_stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace voxal {

std::vector<double> fractional_ranks(const std::vector<double>& values) {
    const std::size_t n = values.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&values](std::size_t a, std::size_t b) { return values[a] < values[b]; });

    std::vector<double> ranks(n, 0.0);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
        const double avg = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
        for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = avg;
        i = j + 1;
    }
    return ranks;
}

RankCorrelation rank_correlation(const std::vector<double>& estimate,
                                 const std::vector<double>& real) {
    if (estimate.size() != real.size())
        throw std::invalid_argument("rank_correlation: length mismatch");
    if (estimate.size() < 3)
        throw std::invalid_argument("rank_correlation: need at least 3 points");

    RankCorrelation rc;
    rc.rank_real = fractional_ranks(real);
    rc.rank_est = fractional_ranks(estimate);
    const std::size_t n = real.size();

    const double mean = (static_cast<double>(n) + 1.0) / 2.0;  // mean rank, both axes
    double sxx = 0.0, syy = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = rc.rank_real[i] - mean;
        const double dy = rc.rank_est[i] - mean;
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    if (sxx == 0.0 || syy == 0.0) {
        rc.defined = false;
        return rc;
    }
    rc.defined = true;
    rc.pearson = sxy / std::sqrt(sxx * syy);
    rc.spearman = rc.pearson;
    rc.slope = sxy / sxx;
    rc.intercept = mean - rc.slope * mean;
    return rc;
}

}  // namespace voxal
