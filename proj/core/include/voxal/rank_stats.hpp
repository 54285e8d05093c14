#pragma once

#include <vector>

namespace voxal {

// Fractional (average) ranks, 1-based; ties share the mean of their positions.
std::vector<double> fractional_ranks(const std::vector<double>& values);

// Rank statistics between an estimated and a real per-slice quality series.
// The least-squares line is fitted to (rank(real), rank(estimate)); both the
// slope and the Pearson r of the rank scatter are reported alongside
// Spearman's rho, which equals that Pearson r by construction.
struct RankCorrelation {
    bool defined = false;  // false when either series is constant
    double spearman = 0.0;
    double slope = 0.0;
    double intercept = 0.0;
    double pearson = 0.0;
    std::vector<double> rank_real;  // x of the rank scatter
    std::vector<double> rank_est;   // y of the rank scatter
};

// Throws std::invalid_argument when the series are shorter than 3 or of
// unequal length. A constant series yields defined = false, never a silent 0.
RankCorrelation rank_correlation(const std::vector<double>& estimate,
                                 const std::vector<double>& real);

}  // namespace voxal
